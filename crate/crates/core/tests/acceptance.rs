use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use twistlab::autmap::{
    automorphism_group, group_structure, is_isomorphic, minimal_isomorphism_degree, AutGroup,
};
use twistlab::curve::{CurvePoint, WeierstrassCurve};
use twistlab::gf::{enumerate_field, subfield_embed, Field, FieldElem};
use twistlab::repro::named_automorphism;
use twistlab::twistcoh::{
    capitulation_report, class_index, frobenius_action, frobenius_classes, induced_map,
    splitting_degree, Cocycle, FrobAction, SubgroupSpec,
};
use twistlab::twists::{census, enumerate_twists, quadratic_twist, TwistReport};

type Outcome = Result<String, String>;

const J0_P3: [i64; 5] = [0, 0, 0, -1, 0];
const J1_P3: [i64; 5] = [0, 1, 0, 0, 1];
const J0_P2: [i64; 5] = [0, 0, 1, 0, 0];
const J1_P2: [i64; 5] = [1, 0, 0, 0, 1];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn field(p: u64, n: u32) -> Result<Field, String> {
    Field::new(p, n).map_err(err)
}

fn curve(p: u64, n: u32, a: [i64; 5]) -> Result<WeierstrassCurve, String> {
    WeierstrassCurve::from_ints(field(p, n)?, a).map_err(err)
}

fn twists_of(p: u64, n: u32, a: [i64; 5]) -> Result<TwistReport, String> {
    let e = curve(p, n, a)?;
    enumerate_twists(&e, e.field()).map_err(err)
}

fn action(p: u64, n: u32, a: [i64; 5]) -> Result<FrobAction, String> {
    let e = curve(p, n, a)?;
    let g = automorphism_group(&e).map_err(err)?;
    frobenius_action(&g, e.field()).map_err(err)
}

fn golden() -> serde_json::Value {
    serde_json::from_str(include_str!("golden/class_listings.json")).expect("golden file parses")
}

fn named_set(g: &AutGroup, names: &[serde_json::Value]) -> Result<BTreeSet<usize>, String> {
    names
        .iter()
        .map(|n| named_automorphism(g, n.as_str().unwrap()).map_err(err))
        .collect()
}

fn class_sets(a: &FrobAction) -> BTreeSet<BTreeSet<usize>> {
    frobenius_classes(a)
        .into_iter()
        .map(|c| c.members.into_iter().collect())
        .collect()
}

fn twist_counts(p: u64, curves: [[i64; 5]; 2], want_j0: [usize; 4], want_j1: usize) -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for n in 1..=4 {
        let j0 = twists_of(p, n, curves[0])?;
        let j1 = twists_of(p, n, curves[1])?;
        let (c0, c1) = (j0.entries.len(), j1.entries.len());
        ensure!(
            c0 == want_j0[n as usize - 1] && c1 == want_j1,
            "{p}^{n}: got j=0 {c0}, j!=0 {c1}"
        );
        ensure!(
            c0 == frobenius_classes(&j0.action).len(),
            "{p}^{n}: twist count differs from class count"
        );
        seen.push(format!("{c0}/{c1}"));
    }
    let elapsed = start.elapsed();
    ensure!(
        elapsed <= Duration::from_secs(10),
        "took {:.1}s",
        elapsed.as_secs_f64()
    );
    Ok(format!(
        "j=0/j!=0 counts {} in {:.1}s",
        seen.join(" "),
        elapsed.as_secs_f64()
    ))
}

fn criterion_1() -> Outcome {
    twist_counts(3, [J0_P3, J1_P3], [4, 6, 4, 6], 2)
}

fn criterion_2() -> Outcome {
    twist_counts(2, [J0_P2, J1_P2], [3, 7, 3, 7], 2)
}

fn criterion_3() -> Outcome {
    let gold = golden();
    for (n, key) in [(1, "3-odd"), (2, "3-even")] {
        let a = action(3, n, J0_P3)?;
        let want: BTreeSet<BTreeSet<usize>> = gold[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| named_set(a.group(), c.as_array().unwrap()))
            .collect::<Result<_, _>>()?;
        ensure!(
            class_sets(&a) == want,
            "3^{n}: class sets differ from golden listing"
        );
    }
    let a = action(3, 2, J0_P3)?;
    let mut sizes: Vec<usize> = frobenius_classes(&a).iter().map(|c| c.size()).collect();
    sizes.sort_unstable();
    ensure!(sizes == [1, 1, 2, 2, 3, 3], "3^2 sizes {sizes:?}");
    let g = a.group();
    let c11: BTreeSet<usize> = [named_automorphism(g, "1,1"), named_automorphism(g, "1,-1")]
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let classes = frobenius_classes(&a);
    let k = class_index(&classes, *c11.first().unwrap());
    let got: BTreeSet<usize> = classes[k].members.iter().copied().collect();
    ensure!(got == c11, "3^2 class of (1,1) is {got:?}");
    Ok("3^1 four classes and 3^2 six classes match golden listings; sizes 1,1,2,2,3,3".into())
}

fn criterion_4() -> Outcome {
    let report = twists_of(3, 1, J0_P3)?;
    let base = report.base;
    let mut found = Vec::new();
    for (target, degree) in [
        ([0, 0, 0, 1, 0], 2),
        ([0, 0, 0, -1, -1], 3),
        ([0, 0, 0, -1, 1], 3),
    ] {
        let t = curve(3, 1, target)?;
        let hits: Vec<_> = report
            .entries
            .iter()
            .filter(|e| is_isomorphic(&e.curve, &t, base).unwrap_or(false))
            .collect();
        ensure!(hits.len() == 1, "{target:?} matched {} twists", hits.len());
        ensure!(
            hits[0].split_degree == degree,
            "{target:?} split degree {}",
            hits[0].split_degree
        );
        let direct = minimal_isomorphism_degree(&report.source, &t, 12).map_err(err)?;
        ensure!(
            direct == Some(degree),
            "{target:?} direct splitting degree {direct:?}"
        );
        found.push(format!("{target:?}:{degree}"));
    }
    Ok(format!("twists {}", found.join(" ")))
}

fn criterion_5() -> Outcome {
    let a = action(2, 1, J0_P2)?;
    let classes = frobenius_classes(&a);
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
    sizes.sort_unstable();
    ensure!(sizes == [6, 6, 12], "2^1 sizes {sizes:?}");
    let gold = golden();
    let want = named_set(a.group(), gold["2-odd-identity"].as_array().unwrap())?;
    let trivial: BTreeSet<usize> = classes[class_index(&classes, 0)]
        .members
        .iter()
        .copied()
        .collect();
    ensure!(trivial == want, "2^1 identity class differs from listing");
    let bound = a.default_cocycle_bound();
    for c in classes.iter().filter(|c| !c.members.contains(&0)) {
        let order = Cocycle::new(&a, c.representative).order(bound);
        ensure!(order == Some(8), "nontrivial cocycle order {order:?}");
    }
    let a4 = action(2, 2, J0_P2)?;
    let mut degrees: Vec<usize> = frobenius_classes(&a4)
        .iter()
        .map(|c| splitting_degree(&a4, c.representative))
        .collect();
    degrees.sort_unstable();
    ensure!(
        degrees == [1, 2, 3, 3, 4, 6, 6],
        "2^2 split degrees {degrees:?}"
    );
    Ok("2^1 sizes 12,6,6 with orders 8,8; 2^2 split degrees 1,2,6,6,3,3,4".into())
}

/// Points of `y^2 + a3 y = x^3 + a4 x + a6` counted by direct substitution.
fn brute_count(base: Field, a3: FieldElem, a4: FieldElem, a6: FieldElem) -> Result<u64, String> {
    let elems = enumerate_field(base).map_err(err)?;
    let mut count = 1;
    for &x in &elems {
        for &y in &elems {
            if y * y + a3 * y == x * x * x + a4 * x + a6 {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn criterion_6() -> Outcome {
    let report = twists_of(2, 1, J0_P2)?;
    let base = report.base;
    let mut counts = Vec::new();
    for (target, points) in [
        ([0, 0, 1, 0, 0], 3),
        ([0, 0, 1, 1, 0], 5),
        ([0, 0, 1, 1, 1], 1),
    ] {
        let t = curve(2, 1, target)?;
        let hits: Vec<_> = report
            .entries
            .iter()
            .filter(|e| is_isomorphic(&e.curve, &t, base).unwrap_or(false))
            .collect();
        ensure!(hits.len() == 1, "{target:?} matched {} twists", hits.len());
        let direct = brute_count(base, t.a3(), t.a4(), t.a6())?;
        ensure!(
            hits[0].points == points && direct == points,
            "{target:?}: reported {} points, direct count {direct}",
            hits[0].points
        );
        counts.push(points);
    }
    ensure!(
        report.entries.len() == 3,
        "{} twists over 2^1",
        report.entries.len()
    );

    let report = twists_of(2, 2, J0_P2)?;
    let f4 = report.base;
    let w = f4.generator();
    let target = WeierstrassCurve::elliptic(f4, [f4.zero(), f4.zero(), f4.one(), f4.zero(), w])
        .map_err(err)?;
    let minus_one = named_automorphism(report.group(), "1,0,1").map_err(err)?;
    let entry = report.entry_for_element(minus_one);
    ensure!(
        entry.split_degree == 2,
        "quadratic class split degree {}",
        entry.split_degree
    );
    ensure!(
        is_isomorphic(&entry.curve, &target, f4).map_err(err)?,
        "y^2+y=x^3+w is not in the quadratic twist class"
    );
    let direct = minimal_isomorphism_degree(&report.source, &target, 12).map_err(err)?;
    ensure!(direct == Some(2), "y^2+y=x^3+w splits in degree {direct:?}");
    Ok(format!(
        "2^1 point counts {counts:?}; y^2+y=x^3+w is the 2^2 quadratic twist"
    ))
}

fn criterion_7() -> Outcome {
    let mut got = Vec::new();
    for (n, want) in [(1, 4), (2, 6), (3, 4), (4, 6)] {
        let c = census(3, n).map_err(err)?;
        ensure!(
            c.classes.len() == want,
            "3^{n}: {} classes",
            c.classes.len()
        );
        ensure!(
            c.classes.iter().all(|r| r.supersingular),
            "3^{n}: ordinary j=0 curve"
        );
        got.push(c.classes.len());
    }
    Ok(format!("j=0 census over 3^1..3^4: {got:?}"))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for (q, kernel, iso) in [(7, 2, true), (11, 2, true), (5, 1, false), (13, 1, false)] {
        let a = action(q, 1, J0_P3)?;
        let h = SubgroupSpec::MinusOne.resolve(&a).map_err(err)?;
        let m = induced_map(&a, &h).map_err(err)?;
        ensure!(m.kernel_size == kernel, "q={q}: kernel {}", m.kernel_size);
        let e = curve(q, 1, J0_P3)?;
        let base = e.field();
        let e_points = e.point_count().map_err(err)?;
        for d in enumerate_field(base).map_err(err)? {
            if d.is_zero() || d.is_square() {
                continue;
            }
            let t = quadratic_twist(&e, d).map_err(err)?;
            let same = is_isomorphic(&e, &t, base).map_err(err)?;
            ensure!(same == iso, "q={q}, d={d}: isomorphic={same}");
            let t_points = t.point_count().map_err(err)?;
            ensure!(
                t_points == 2 * q + 2 - e_points,
                "q={q}, d={d}: twist has {t_points} points"
            );
            if !iso {
                ensure!(t_points != e_points, "q={q}: point counts do not separate");
            }
        }
        lines.push(format!("q={q} kernel {kernel}"));
    }
    Ok(lines.join(", "))
}

fn criterion_9() -> Outcome {
    let a = action(3, 2, J0_P3)?;
    let mut found = Vec::new();
    for (n, collisions) in [(3, 1), (6, 2)] {
        let h = SubgroupSpec::Cyclic(n).resolve(&a).map_err(err)?;
        let m = induced_map(&a, &h).map_err(err)?;
        ensure!(
            m.kernel_size == 1 && m.collisions.len() == collisions,
            "3^2 C{n}: kernel {}, collisions {}",
            m.kernel_size,
            m.collisions.len()
        );
        found.push(format!("C{n} kernel 1 collisions {collisions}"));
    }
    let a = action(2, 1, J0_P2)?;
    let st = group_structure(a.group()).map_err(err)?;
    let stable: Vec<_> = st
        .subgroups_of_order(3)
        .filter(|h| a.is_stable(&h.elements))
        .collect();
    ensure!(!stable.is_empty(), "no stable order-3 subgroup over 2^1");
    for h in &stable {
        let r = capitulation_report(&a, &h.elements).map_err(err)?;
        ensure!(
            r.surviving.is_empty(),
            "order-3 subgroup {:?} keeps {} classes",
            h.elements,
            r.surviving.len()
        );
    }
    found.push(format!(
        "{} stable order-3 subgroups over 2^1, none survive",
        stable.len()
    ));
    Ok(found.join("; "))
}

fn criterion_10() -> Outcome {
    let mut found = Vec::new();
    for (p, n, a, name, nontrivial) in [
        (3, 1, J0_P3, "i,0", true),
        (3, 2, J0_P3, "i,0", true),
        (2, 1, J0_P2, "w2,0,1", false),
        (2, 2, J0_P2, "w2,0,1", true),
    ] {
        let act = action(p, n, a)?;
        let classes = frobenius_classes(&act);
        let phi = named_automorphism(act.group(), name).map_err(err)?;
        let got = class_index(&classes, phi) != class_index(&classes, 0);
        ensure!(
            got == nontrivial,
            "{p}^{n}: Fr -> ({name}) nontrivial={got}"
        );
        found.push(format!(
            "{p}^{n}:{}",
            if got { "nontrivial" } else { "trivial" }
        ));
    }
    Ok(found.join(" "))
}

fn prime_powers_upto(limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            continue;
        }
        let mut q = p;
        let mut n = 1;
        while q <= limit {
            out.push((p, n));
            q *= p;
            n += 1;
        }
    }
    out
}

/// Product of two coefficient vectors reduced by the monic modulus.
fn schoolbook(p: u64, modulus: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (n..2 * n).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate().take(n) {
            prod[k - n + i] = (prod[k - n + i] + (p - c) * m % p) % p;
        }
        prod[k] = 0;
    }
    prod.truncate(n);
    prod
}

fn padded(e: &FieldElem, n: usize) -> Vec<u64> {
    let mut c = e.coeffs();
    c.resize(n, 0);
    c
}

fn field_axioms(p: u64, n: u32) -> Result<(), String> {
    let f = field(p, n)?;
    let q = f.size();
    let elems = enumerate_field(f).map_err(err)?;
    ensure!(
        elems.len() as u64 == q,
        "{f}: enumerated {} elements",
        elems.len()
    );
    let (zero, one) = (f.zero(), f.one());
    let width = n as usize;
    for &a in &elems {
        ensure!(a + zero == a && a * one == a, "{f}: identities fail at {a}");
        ensure!(a + (-a) == zero, "{f}: additive inverse fails at {a}");
        ensure!(a.pow(q) == a, "{f}: a^q != a at {a}");
        if !a.is_zero() {
            ensure!(
                a * a.inv().map_err(err)? == one,
                "{f}: inverse fails at {a}"
            );
        }
        for &b in &elems {
            ensure!(a + b == b + a && a * b == b * a, "{f}: commutativity fails");
            let want = schoolbook(p, f.modulus(), &padded(&a, width), &padded(&b, width));
            ensure!(
                padded(&(a * b), width) == want,
                "{f}: {a} * {b} disagrees with schoolbook"
            );
            for &c in &elems {
                ensure!(
                    (a + b) + c == a + (b + c),
                    "{f}: additive associativity fails"
                );
                ensure!(
                    (a * b) * c == a * (b * c),
                    "{f}: multiplicative associativity fails"
                );
                ensure!(a * (b + c) == a * b + a * c, "{f}: distributivity fails");
            }
        }
    }
    Ok(())
}

fn cocycle_identity(a: &FrobAction) -> Result<(), String> {
    let g = a.group();
    for img in 0..g.order() {
        let c = Cocycle::new(a, img);
        for j in 0..=10 {
            for k in 0..=10 {
                let rhs = g.mul(c.value(j), a.frob_pow(c.value(k), j));
                ensure!(
                    c.value(j + k) == rhs,
                    "cocycle identity fails at ({img},{j},{k})"
                );
            }
        }
    }
    Ok(())
}

fn partition(a: &FrobAction) -> Result<(), String> {
    let g = a.group();
    let classes = frobenius_classes(a);
    let mut owner = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        for &m in &c.members {
            ensure!(owner.insert(m, i).is_none(), "element {m} in two classes");
        }
    }
    ensure!(owner.len() == g.order(), "classes do not cover the group");
    for (i, c) in classes.iter().enumerate() {
        for &tau in &c.members {
            for s in 0..g.order() {
                ensure!(
                    owner[&a.twisted_conjugate(tau, s)] == i,
                    "class {i} not closed"
                );
            }
        }
    }
    Ok(())
}

fn hasse(q: u64, points: u64) -> Result<(), String> {
    let t = q as i128 + 1 - points as i128;
    ensure!(
        t * t <= 4 * q as i128,
        "{points} points over F_{q} breaks the Hasse bound"
    );
    Ok(())
}

fn points_over(e: &WeierstrassCurve, f: Field) -> Result<Vec<CurvePoint>, String> {
    e.base_change(f)
        .map_err(err)?
        .enumerate_points()
        .map_err(err)
}

fn automorphisms_act_on_points(g: &AutGroup) -> Result<(), String> {
    let pts = points_over(&g.curve(), g.field())?;
    let e = g.curve().base_change(g.field()).map_err(err)?;
    for (i, a) in g.elements().iter().enumerate() {
        let image: BTreeSet<CurvePoint> = pts
            .iter()
            .map(|p| a.apply(p).map_err(err))
            .collect::<Result<_, _>>()?;
        ensure!(
            image.len() == pts.len(),
            "automorphism {a} is not injective"
        );
        for p in &image {
            ensure!(
                e.is_on_curve(p).map_err(err)?,
                "automorphism {a} leaves the curve"
            );
        }
        for (j, b) in g.elements().iter().enumerate() {
            let ab = &g.elements()[g.mul(i, j)];
            for p in &pts {
                let lhs = ab.apply(p).map_err(err)?;
                let rhs = a.apply(&b.apply(p).map_err(err)?).map_err(err)?;
                ensure!(
                    lhs == rhs,
                    "table entry ({i},{j}) disagrees with composition"
                );
            }
        }
    }
    Ok(())
}

const ENUMERABLE: u64 = 1 << 12;

fn embed_point(pt: &CurvePoint, f: Field) -> Result<CurvePoint, String> {
    Ok(match *pt {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => CurvePoint::Affine(
            subfield_embed(x, f).map_err(err)?,
            subfield_embed(y, f).map_err(err)?,
        ),
    })
}

fn twist_maps_act_on_points(r: &TwistReport) -> Result<usize, String> {
    let mut checked = 0;
    for entry in &r.entries {
        let psi = &entry.psi;
        let f = psi.field();
        let src = psi.source();
        let dst = psi.target();
        let pts = if f.size() <= ENUMERABLE {
            points_over(&src, f)?
        } else {
            r.source
                .enumerate_points()
                .map_err(err)?
                .iter()
                .map(|p| embed_point(p, f))
                .collect::<Result<_, _>>()?
        };
        let mut image = BTreeSet::new();
        for p in &pts {
            let q = psi.apply(p).map_err(err)?;
            ensure!(
                dst.is_on_curve(&q).map_err(err)?,
                "psi maps a point off {}",
                dst
            );
            image.insert(q);
        }
        ensure!(image.len() == pts.len(), "psi is not injective");
        if f.size() <= ENUMERABLE {
            ensure!(
                points_over(&dst, f)?.len() == pts.len(),
                "twist and source differ in size over {f}"
            );
        }
        checked += pts.len();
    }
    Ok(checked)
}

fn criterion_11() -> Outcome {
    let fields = prime_powers_upto(81);
    for &(p, n) in &fields {
        field_axioms(p, n)?;
    }
    let setups = [
        (3, 1, J0_P3),
        (3, 2, J0_P3),
        (3, 3, J0_P3),
        (3, 1, J1_P3),
        (2, 1, J0_P2),
        (2, 2, J0_P2),
        (2, 3, J0_P2),
        (2, 1, J1_P2),
        (5, 1, J0_P3),
        (7, 1, J0_P3),
    ];
    let mut curves_checked = 0;
    let mut mapped = 0;
    for (p, n, a) in setups {
        let act = action(p, n, a)?;
        cocycle_identity(&act)?;
        partition(&act)?;
        automorphisms_act_on_points(act.group())?;
        let r = twists_of(p, n, a)?;
        mapped += twist_maps_act_on_points(&r)?;
        for e in &r.entries {
            hasse(r.base.size(), e.points)?;
            curves_checked += 1;
        }
    }
    for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        let c = census(p, n).map_err(err)?;
        for row in &c.classes {
            hasse(p.pow(n), row.points)?;
            curves_checked += 1;
        }
    }
    Ok(format!(
        "axioms over {} fields, {} setups, {mapped} points mapped, Hasse on {curves_checked} curves",
        fields.len(),
        setups.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("twist counts in characteristic 3", criterion_1),
        ("twist counts in characteristic 2", criterion_2),
        ("twisted classes of y^2 = x^3 - x", criterion_3),
        ("explicit twists over F_3", criterion_4),
        ("twisted classes of y^2 + y = x^3", criterion_5),
        ("explicit twists over F_2 and F_4", criterion_6),
        ("supersingular census", criterion_7),
        ("quadratic capitulation", criterion_8),
        ("cubic and sextic subgroups", criterion_9),
        ("Frobenius labels", criterion_10),
        ("property suites", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
