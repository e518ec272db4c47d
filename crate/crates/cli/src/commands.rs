use std::fmt::Write as _;

use serde::Serialize;

use twistlab::autmap::{automorphism_group, group_structure, AutGroup};
use twistlab::curve::WeierstrassCurve;
use twistlab::gf::{set_work_limit, Field};
use twistlab::repro::{run_repro, ReproOptions, J0_CURVE_CHAR2, J0_CURVE_CHAR3};
use twistlab::twistcoh::{class_report, frobenius_action, induced_map, SubgroupSpec};
use twistlab::twists::{self, enumerate_twists_with};
use twistlab::Error;

use crate::{CurveArgs, FieldArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_LIMIT: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::LimitExceeded { .. } | Error::Unrepresentable { .. } => EXIT_LIMIT,
        Error::SearchExhausted(_) | Error::Inconsistent(_) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn open_field(args: &FieldArgs) -> Result<Field, Error> {
    if let Some(limit) = args.limit {
        if limit == 0 {
            return Err(Error::Precondition("limit must be positive".into()));
        }
        set_work_limit(limit);
    }
    Field::new(args.p, args.n)
}

fn load_curve(args: &CurveArgs) -> Result<(Field, WeierstrassCurve), Error> {
    let field = open_field(&args.field)?;
    let p = field.characteristic();
    let curve = match (&args.curve, &args.short) {
        (Some(text), _) => WeierstrassCurve::parse(field, text)?,
        (None, Some(short)) => {
            let parts: Vec<&str> = short.split(',').collect();
            let [a, b] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected \"a,b\", got {short:?}")));
            };
            let (a, b) = (field.parse_elem(a)?, field.parse_elem(b)?);
            let a3 = if p == 2 { field.one() } else { field.zero() };
            let z = field.zero();
            WeierstrassCurve::elliptic(field, [z, z, a3, a, b])?
        }
        (None, None) => match p {
            2 => WeierstrassCurve::from_ints(field, J0_CURVE_CHAR2)?,
            3 => WeierstrassCurve::from_ints(field, J0_CURVE_CHAR3)?,
            _ => return Err(Error::Precondition("--curve or --short is required".into())),
        },
    };
    Ok((field, curve))
}

#[derive(Serialize)]
struct AutElementJson {
    map: String,
    order: usize,
}

#[derive(Serialize)]
struct AutJson {
    base: String,
    curve: Vec<String>,
    j_invariant: String,
    order: usize,
    field: String,
    abelian: bool,
    center_order: usize,
    minus_one: String,
    elements: Vec<AutElementJson>,
}

fn field_of_definition(g: &AutGroup) -> Field {
    let p = g.field().characteristic();
    let d = g
        .elements()
        .iter()
        .map(|a| a.field_of_definition().degree())
        .fold(1, |acc, d| acc / gcd(acc, d) * d);
    Field::new_large(p, d).expect("subfield of the group field")
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn automorphisms(args: &CurveArgs) -> Result<Output, Error> {
    let (field, curve) = load_curve(args)?;
    let g = automorphism_group(&curve)?;
    let st = group_structure(&g)?;
    let report = AutJson {
        base: field.to_string(),
        curve: curve.to_strings(),
        j_invariant: curve.j_invariant()?.to_string(),
        order: g.order(),
        field: field_of_definition(&g).to_string(),
        abelian: st.abelian,
        center_order: st.center.len(),
        minus_one: g.element(st.minus_one).to_string(),
        elements: g
            .elements()
            .iter()
            .zip(&st.element_orders)
            .map(|(a, &order)| AutElementJson {
                map: a.to_string(),
                order,
            })
            .collect(),
    };
    if args.field.json {
        return Ok(Output::ok(json(&report)));
    }
    let mut s = String::new();
    writeln!(s, "curve {curve} over {}", report.base).unwrap();
    writeln!(s, "j-invariant {}", report.j_invariant).unwrap();
    writeln!(s, "order {} over {}", report.order, report.field).unwrap();
    writeln!(
        s,
        "{}abelian, centre of order {}, -1 = {}",
        if report.abelian { "" } else { "non-" },
        report.center_order,
        report.minus_one
    )
    .unwrap();
    for e in &report.elements {
        writeln!(s, "  {}  order {}", e.map, e.order).unwrap();
    }
    Ok(Output::ok(s))
}

pub fn twists(args: &CurveArgs) -> Result<Output, Error> {
    let (field, curve) = load_curve(args)?;
    let report = enumerate_twists_with(&curve, field, args.max_split_degree)?;
    let data = report.to_json();
    if args.field.json {
        return Ok(Output::ok(json(&data)));
    }
    let mut s = String::new();
    writeln!(
        s,
        "twists of [{}] over {}: {}",
        data.source.join(","),
        data.base,
        data.twists.len()
    )
    .unwrap();
    writeln!(
        s,
        "{:<32} {:<36} {:>5} {:>8}",
        "curve", "class_rep", "split", "points"
    )
    .unwrap();
    for t in &data.twists {
        writeln!(
            s,
            "{:<32} {:<36} {:>5} {:>8}",
            format!("[{}]", t.curve.join(",")),
            t.class_rep,
            t.split_degree,
            t.points
        )
        .unwrap();
    }
    Ok(Output::ok(s))
}

#[derive(Serialize)]
struct HClassJson {
    rep: String,
    size: usize,
    image: usize,
}

#[derive(Serialize)]
struct SubgroupJson {
    name: String,
    order: usize,
    elements: Vec<String>,
    kernel_size: usize,
    image_size: usize,
    collisions: Vec<(usize, usize)>,
    classes: Vec<HClassJson>,
}

#[derive(Serialize)]
struct H1Json {
    #[serde(flatten)]
    report: twistlab::twistcoh::ClassReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    subgroup: Option<SubgroupJson>,
}

pub fn h1(args: &CurveArgs, subgroup: Option<&str>) -> Result<Output, Error> {
    let (field, curve) = load_curve(args)?;
    let g = automorphism_group(&curve)?;
    let action = frobenius_action(&g, field)?;
    let report = class_report(&action);
    let subgroup = match subgroup {
        None => None,
        Some(name) => {
            let spec: SubgroupSpec = name.parse()?;
            let h = spec.resolve(&action)?;
            let m = induced_map(&action, &h)?;
            Some(SubgroupJson {
                name: name.to_string(),
                order: h.len(),
                elements: h.iter().map(|&x| g.element(x).to_string()).collect(),
                kernel_size: m.kernel_size,
                image_size: m.image_size,
                collisions: m.collisions.clone(),
                classes: m
                    .h_classes
                    .iter()
                    .zip(&m.images)
                    .map(|(c, &image)| HClassJson {
                        rep: g.element(c.representative).to_string(),
                        size: c.size(),
                        image,
                    })
                    .collect(),
            })
        }
    };
    let data = H1Json { report, subgroup };
    if args.field.json {
        return Ok(Output::ok(json(&data)));
    }
    let r = &data.report;
    let mut s = String::new();
    writeln!(
        s,
        "base {}, group order {}, action order {}, {} classes",
        r.base,
        r.group_order,
        r.action_order,
        r.classes.len()
    )
    .unwrap();
    writeln!(
        s,
        "{:<4} {:<36} {:>4} {:>13}",
        "#", "rep", "size", "cocycle_order"
    )
    .unwrap();
    for (i, c) in r.classes.iter().enumerate() {
        writeln!(
            s,
            "{:<4} {:<36} {:>4} {:>13}",
            i, c.rep, c.size, c.cocycle_order
        )
        .unwrap();
    }
    if let Some(h) = &data.subgroup {
        writeln!(s, "subgroup {} of order {}", h.name, h.order).unwrap();
        writeln!(
            s,
            "kernel {}, image {}, collisions {}",
            h.kernel_size,
            h.image_size,
            h.collisions.len()
        )
        .unwrap();
        writeln!(s, "{:<36} {:>4} {:>5}", "rep", "size", "image").unwrap();
        for c in &h.classes {
            writeln!(s, "{:<36} {:>4} {:>5}", c.rep, c.size, c.image).unwrap();
        }
        for (a, b) in &h.collisions {
            writeln!(s, "collision {a} {b}").unwrap();
        }
    }
    Ok(Output::ok(s))
}

pub fn census(args: &FieldArgs) -> Result<Output, Error> {
    let field = open_field(args)?;
    let c = twists::census(field.characteristic(), field.degree())?;
    if args.json {
        return Ok(Output::ok(json(&c)));
    }
    let mut s = String::new();
    writeln!(s, "j = 0 over {}: {} classes", c.base, c.classes.len()).unwrap();
    writeln!(s, "{:<32} {:>8} {:>13}", "curve", "points", "supersingular").unwrap();
    for row in &c.classes {
        writeln!(
            s,
            "{:<32} {:>8} {:>13}",
            format!("[{}]", row.curve.join(",")),
            row.points,
            row.supersingular
        )
        .unwrap();
    }
    Ok(Output::ok(s))
}

pub fn repro(as_json: bool, limit: Option<u64>, corrupt_table: bool) -> Result<Output, Error> {
    if let Some(limit) = limit {
        set_work_limit(limit);
    }
    let report = run_repro(ReproOptions { corrupt_table });
    let code = if report.passed { EXIT_OK } else { EXIT_VERIFY };
    let text = if as_json {
        json(&report)
    } else {
        let mut s = String::new();
        for i in &report.items {
            let mark = if i.pass { "PASS" } else { "FAIL" };
            writeln!(
                s,
                "{mark}  {}: expected {}, got {}",
                i.name, i.expected, i.actual
            )
            .unwrap();
        }
        let failed = report.failures().count();
        writeln!(s, "{} checks, {} failed", report.items.len(), failed).unwrap();
        s
    };
    Ok(Output { text, code })
}
