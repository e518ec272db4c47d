//! Reproduction harness: every checkable statement about twists of the
//! curves `y^2 = x^3 - x` (p = 3), `y^2 + y = x^3` (p = 2) and the
//! quadratic capitulation family, as pass/fail line items.

use serde::Serialize;

use crate::autmap::{automorphism_group, group_structure, is_isomorphic, AutGroup};
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::gf::{subfield_embed, Field, FieldElem};
use crate::twistcoh::{
    capitulation_report, class_index, frobenius_action, frobenius_classes, induced_map,
    splitting_degree, stable_subgroups, FrobAction, SubgroupSpec,
};
use crate::twists::{enumerate_twists, quadratic_twist, verify_twist_tables, CheckItem};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReproOptions {
    /// Run the group-theoretic checks on a deliberately corrupted Cayley table.
    pub corrupt_table: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReproReport {
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

impl ReproReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.pass)
    }
}

pub const J0_CURVE_CHAR3: [i64; 5] = [0, 0, 0, -1, 0];
pub const J0_CURVE_CHAR2: [i64; 5] = [0, 0, 1, 0, 0];

/// Automorphisms written `u,r` (p = 3, meaning `(u, r, 0, 0)`) or `u,r,t`
/// (p = 2, meaning `(u, r, r^2, t)`). Names: `0 1 -1 i -i` with `i^2 = -1`
/// in `F_9`, and `0 1 w w2` with `w` the generator of `F_4`.
pub fn named_automorphism(g: &AutGroup, name: &str) -> Result<usize> {
    let p = g.field().characteristic();
    let small = Field::new(p, 2)?;
    let gen = small.generator();
    let elem = |tok: &str| -> Result<FieldElem> {
        let e = match (p, tok.trim()) {
            (_, "0") => small.zero(),
            (_, "1") => small.one(),
            (3, "-1") => -small.one(),
            (3, "i") => gen,
            (3, "-i") => -gen,
            (2, "w") => gen,
            (2, "w2") => gen * gen,
            (_, t) => return Err(Error::Parse(format!("unknown symbol {t:?}"))),
        };
        subfield_embed(e, g.field())
    };
    let toks: Vec<&str> = name.split(',').collect();
    let params = match (p, toks.as_slice()) {
        (3, [u, r]) => {
            let z = elem("0")?;
            [elem(u)?, elem(r)?, z, z]
        }
        (2, [u, r, t]) => {
            let r = elem(r)?;
            [elem(u)?, r, r * r, elem(t)?]
        }
        _ => return Err(Error::Parse(format!("bad automorphism name {name:?}"))),
    };
    g.index_of_params(params)
        .ok_or_else(|| Error::Inconsistent(format!("{name} is not an automorphism")))
}

/// Expected twisted classes with their splitting degrees, for odd and even
/// extension degree.
pub fn golden_classes(p: u64, odd: bool) -> Vec<(Vec<&'static str>, usize)> {
    match (p, odd) {
        (3, true) => vec![
            (vec!["1,0", "-1,0"], 1),
            (vec!["1,1", "-1,-1"], 3),
            (vec!["1,-1", "-1,1"], 3),
            (vec!["i,0", "i,1", "i,-1", "-i,0", "-i,1", "-i,-1"], 2),
        ],
        (3, false) => vec![
            (vec!["1,0"], 1),
            (vec!["-1,0"], 2),
            (vec!["1,1", "1,-1"], 3),
            (vec!["-1,1", "-1,-1"], 6),
            (vec!["i,0", "i,1", "i,-1"], 4),
            (vec!["-i,0", "-i,1", "-i,-1"], 4),
        ],
        (2, true) => vec![
            (
                vec![
                    "1,0,0", "1,0,1", "1,1,w", "1,1,w2", "w2,0,0", "w2,w2,w", "w2,w2,w2", "w2,0,1",
                    "w,0,0", "w,w,w2", "w,0,1", "w,w,w",
                ],
                1,
            ),
            (
                vec!["1,w,w", "w,w2,w", "w,1,w2", "w2,w,w2", "w2,1,w", "1,w2,w2"],
                8,
            ),
            (
                vec!["1,w,w2", "w,w2,w2", "w2,1,w2", "w2,w,w", "w,1,w", "1,w2,w"],
                8,
            ),
        ],
        _ => vec![
            (vec!["1,0,0"], 1),
            (vec!["1,0,1"], 2),
            (vec!["w2,0,1", "w2,1,w", "w2,w2,w", "w2,w,w"], 6),
            (vec!["w,0,1", "w,1,w2", "w,w2,w2", "w,w,w2"], 6),
            (vec!["w,0,0", "w,1,w", "w,w2,w", "w,w,w"], 3),
            (vec!["w2,0,0", "w2,1,w2", "w2,w2,w2", "w2,w,w2"], 3),
            (
                vec!["1,1,w", "1,1,w2", "1,w,w", "1,w,w2", "1,w2,w", "1,w2,w2"],
                4,
            ),
        ],
    }
}

fn j0_curve(p: u64) -> [i64; 5] {
    if p == 2 {
        J0_CURVE_CHAR2
    } else {
        J0_CURVE_CHAR3
    }
}

fn action_for(base: Field, coeffs: [i64; 5], opts: ReproOptions) -> Result<FrobAction> {
    let e = WeierstrassCurve::from_ints(base, coeffs)?;
    let mut g = automorphism_group(&e)?;
    if opts.corrupt_table {
        g = g.with_corrupted_table();
    }
    frobenius_action(&g, base)
}

fn push(items: &mut Vec<CheckItem>, name: String, expected: impl ToString, actual: Result<String>) {
    items.push(match actual {
        Ok(a) => CheckItem::new(name, expected, a),
        Err(e) => CheckItem::from_error(name, expected, &e),
    });
}

/// Compares computed classes with the expected listing; `"ok"` on success.
fn golden_check(p: u64, n: u32, opts: ReproOptions) -> Result<String> {
    let base = Field::new(p, n)?;
    let a = action_for(base, j0_curve(p), opts)?;
    let classes = frobenius_classes(&a);
    let golden = golden_classes(p, n % 2 == 1);
    if classes.len() != golden.len() {
        return Ok(format!("{} classes", classes.len()));
    }
    for (names, degree) in golden {
        let mut members = names
            .iter()
            .map(|s| named_automorphism(a.group(), s))
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        let c = &classes[class_index(&classes, members[0])];
        if c.members != members {
            return Ok(format!("class of {} differs", names[0]));
        }
        let d = splitting_degree(&a, c.representative);
        if d != degree {
            return Ok(format!("class of {} splits over degree {d}", names[0]));
        }
    }
    Ok("ok".into())
}

/// Whether the twist labelled by `Fr -> name` is trivial, with the order of
/// the subgroup it generates and whether that subgroup is stable.
fn label_check(p: u64, n: u32, name: &str, opts: ReproOptions) -> Result<String> {
    let base = Field::new(p, n)?;
    let a = action_for(base, j0_curve(p), opts)?;
    let x = named_automorphism(a.group(), name)?;
    let h = a.group().generate(&[x]);
    let classes = frobenius_classes(&a);
    let trivial = class_index(&classes, x) == class_index(&classes, 0);
    if !opts.corrupt_table {
        let e = WeierstrassCurve::from_ints(base, j0_curve(p))?;
        let r = enumerate_twists(&e, base)?;
        let entry = r.entry_for_element(x);
        if (entry.split_degree == 1) != trivial {
            return Err(Error::Inconsistent(
                "twist table disagrees with classes".into(),
            ));
        }
    }
    Ok(format!(
        "{} order={} stable={}",
        if trivial { "trivial" } else { "nontrivial" },
        h.len(),
        a.is_stable(&h)
    ))
}

fn kernel_and_collisions(
    base: Field,
    coeffs: [i64; 5],
    h: SubgroupSpec,
    opts: ReproOptions,
) -> Result<String> {
    let a = action_for(base, coeffs, opts)?;
    let m = induced_map(&a, &h.resolve(&a)?)?;
    Ok(format!(
        "kernel={} collisions={}",
        m.kernel_size,
        m.collisions.len()
    ))
}

fn quadratic_capitulation(q: u64) -> Result<String> {
    let base = Field::new(q, 1)?;
    let e = WeierstrassCurve::from_ints(base, J0_CURVE_CHAR3)?;
    let mut iso = Vec::new();
    for d in 1..q as i64 {
        let d = base.from_int(d);
        if !d.is_square() {
            iso.push(is_isomorphic(&e, &quadratic_twist(&e, d)?, base)?);
        }
    }
    let all = iso.iter().all(|&b| b);
    let none = iso.iter().all(|&b| !b);
    Ok(match (all, none) {
        (true, _) => "isomorphic".into(),
        (_, true) => "not isomorphic".into(),
        _ => "mixed".into(),
    })
}

fn cubic_capitulation_char2(opts: ReproOptions) -> Result<String> {
    let a = action_for(Field::new(2, 1)?, J0_CURVE_CHAR2, opts)?;
    let stable: Vec<_> = stable_subgroups(&a)?
        .into_iter()
        .filter(|h| h.order() == 3)
        .collect();
    let mut surviving = 0;
    for h in &stable {
        surviving += capitulation_report(&a, &h.elements)?.surviving.len();
    }
    Ok(format!(
        "stable>0={} surviving={surviving}",
        !stable.is_empty()
    ))
}

pub fn run_repro(opts: ReproOptions) -> ReproReport {
    let mut items = Vec::new();

    for p in [3u64, 2] {
        for n in 1..=4u32 {
            match verify_twist_tables(p, n) {
                Ok(v) => items.extend(v.items),
                Err(e) => items.push(CheckItem::from_error(format!("{p}^{n} tables"), "ok", &e)),
            }
        }
    }

    for p in [3u64, 2] {
        for n in 1..=4u32 {
            push(
                &mut items,
                format!("{p}^{n} class listing"),
                "ok",
                golden_check(p, n, opts),
            );
        }
    }

    for q in [3u64, 5, 7, 11, 13] {
        let expected = if q % 4 == 3 { 2 } else { 1 };
        let base = Field::new(q, 1);
        push(
            &mut items,
            format!("{q}^1 y^2=x^3-x minus-one kernel"),
            expected,
            base.and_then(|b| {
                let a = action_for(b, J0_CURVE_CHAR3, opts)?;
                Ok(induced_map(&a, &SubgroupSpec::MinusOne.resolve(&a)?)?
                    .kernel_size
                    .to_string())
            }),
        );
        push(
            &mut items,
            format!("{q}^1 non-square quadratic twists"),
            if q % 4 == 3 {
                "isomorphic"
            } else {
                "not isomorphic"
            },
            quadratic_capitulation(q),
        );
    }
    for p in [2u64, 3] {
        for n in 1..=4u32 {
            let expected = if n % 2 == 1 { 2 } else { 1 };
            push(
                &mut items,
                format!("{p}^{n} j=0 minus-one kernel"),
                expected,
                Field::new(p, n).and_then(|b| {
                    let a = action_for(b, j0_curve(p), opts)?;
                    Ok(induced_map(&a, &SubgroupSpec::MinusOne.resolve(&a)?)?
                        .kernel_size
                        .to_string())
                }),
            );
        }
    }

    push(
        &mut items,
        "3^2 C3 induced map".into(),
        "kernel=1 collisions=1",
        Field::new(3, 2)
            .and_then(|b| kernel_and_collisions(b, J0_CURVE_CHAR3, SubgroupSpec::Cyclic(3), opts)),
    );
    push(
        &mut items,
        "3^2 C6 induced map".into(),
        "kernel=1 collisions=2",
        Field::new(3, 2)
            .and_then(|b| kernel_and_collisions(b, J0_CURVE_CHAR3, SubgroupSpec::Cyclic(6), opts)),
    );
    push(
        &mut items,
        "2^1 order-3 subgroups capitulate".into(),
        "stable>0=true surviving=0",
        cubic_capitulation_char2(opts),
    );

    for n in 1..=4u32 {
        push(
            &mut items,
            format!("3^{n} Fr -> (i,0) label"),
            "nontrivial order=4 stable=true",
            label_check(3, n, "i,0", opts),
        );
        let expected = if n % 2 == 1 { "trivial" } else { "nontrivial" };
        push(
            &mut items,
            format!("2^{n} Fr -> (w2,0,1) label"),
            format!("{expected} order=6 stable=true"),
            label_check(2, n, "w2,0,1", opts),
        );
    }

    if opts.corrupt_table {
        let g = Field::new(3, 1)
            .and_then(|b| WeierstrassCurve::from_ints(b, J0_CURVE_CHAR3))
            .and_then(|e| automorphism_group(&e))
            .map(|g| g.with_corrupted_table());
        push(
            &mut items,
            "corrupted table associativity".into(),
            true,
            g.map(|g| g.is_associative().to_string()),
        );
    } else {
        let g = Field::new(3, 1)
            .and_then(|b| WeierstrassCurve::from_ints(b, J0_CURVE_CHAR3))
            .and_then(|e| automorphism_group(&e));
        push(
            &mut items,
            "3^1 group order and centre".into(),
            "12 2",
            g.and_then(|g| {
                let st = group_structure(&g)?;
                Ok(format!("{} {}", st.order, st.center.len()))
            }),
        );
    }

    ReproReport {
        passed: items.iter().all(|i| i.pass),
        items,
    }
}
