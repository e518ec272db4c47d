//! Twists as explicit curves over the base field.

use serde::Serialize;

use crate::autmap::{
    automorphism_group, is_isomorphic, minimal_isomorphisms, AutGroup, CurveIsomorphism,
};
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::gf::{check_enumerable, Field, FieldElem};
use crate::twistcoh::{
    class_index, frobenius_action, frobenius_classes, splitting_degree, FrobAction, FrobClass,
};

pub const DEFAULT_MAX_SPLIT_DEGREE: u32 = 24;

#[derive(Clone, Debug)]
pub struct TwistEntry {
    pub curve: WeierstrassCurve,
    /// Index into `TwistReport::classes`.
    pub class: usize,
    pub split_degree: u32,
    pub points: u64,
    /// An isomorphism from the source over the splitting field.
    pub psi: CurveIsomorphism,
}

#[derive(Clone, Debug)]
pub struct TwistReport {
    pub base: Field,
    pub source: WeierstrassCurve,
    pub action: FrobAction,
    pub classes: Vec<FrobClass>,
    /// One entry per class, in class order.
    pub entries: Vec<TwistEntry>,
}

impl TwistReport {
    pub fn group(&self) -> &AutGroup {
        self.action.group()
    }

    pub fn class_of(&self, entry: &TwistEntry) -> &FrobClass {
        &self.classes[entry.class]
    }

    pub fn split_degrees(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.split_degree).collect()
    }

    /// The entry labelled by the class containing group element `elem`.
    pub fn entry_for_element(&self, elem: usize) -> &TwistEntry {
        let c = class_index(&self.classes, elem);
        &self.entries[c]
    }

    pub fn to_json(&self) -> TwistJson {
        TwistJson {
            base: self.base.to_string(),
            source: self.source.to_strings(),
            twists: self
                .entries
                .iter()
                .map(|e| TwistRow {
                    curve: e.curve.to_strings(),
                    class_rep: self
                        .group()
                        .element(self.classes[e.class].representative)
                        .to_string(),
                    split_degree: e.split_degree,
                    points: e.points,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TwistRow {
    pub curve: Vec<String>,
    pub class_rep: String,
    pub split_degree: u32,
    pub points: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TwistJson {
    pub base: String,
    pub source: Vec<String>,
    pub twists: Vec<TwistRow>,
}

fn over_base(e: &WeierstrassCurve, base: Field) -> Result<WeierstrassCurve> {
    if e.field() == base {
        Ok(*e)
    } else if e.field().is_subfield_of(&base) {
        e.base_change(base)
    } else {
        e.descend(base)
    }
}

/// Curves `[a1, a2, a3, a4, a6]` with `a1 = a2 = a3 = 0` etc. are listed by
/// the free positions, outer loop first, so that the listing is in
/// coefficient order.
fn grid(base: Field, free: &[usize], nonzero: &[usize], fixed: [u64; 5]) -> Vec<[FieldElem; 5]> {
    let q = base.size();
    let mut out = Vec::new();
    let total = q.pow(free.len() as u32);
    for mut k in 0..total {
        let mut idx = fixed;
        for &pos in free.iter().rev() {
            idx[pos] = k % q;
            k /= q;
        }
        if nonzero.iter().any(|&pos| idx[pos] == 0) {
            continue;
        }
        out.push(idx.map(|i| base.element(i).expect("index below q")));
    }
    out
}

/// Coefficient grids in which every curve with j-invariant `j` has a
/// representative.
fn twist_grid(base: Field, j: FieldElem) -> Result<Vec<[FieldElem; 5]>> {
    let p = base.characteristic();
    let q = base.size();
    check_enumerable(q.saturating_mul(q).saturating_mul(q))?;
    Ok(match (p, j.is_zero()) {
        (2, true) => grid(base, &[2, 3, 4], &[2], [0; 5]),
        (2, false) => grid(base, &[1, 4], &[4], [1, 0, 0, 0, 0]),
        (3, true) => grid(base, &[3, 4], &[3], [0; 5]),
        (3, false) => grid(base, &[1, 4], &[1, 4], [0; 5]),
        _ => grid(base, &[3, 4], &[], [0; 5]),
    })
}

fn long_grid(base: Field) -> Result<Vec<[FieldElem; 5]>> {
    let q = base.size();
    check_enumerable(q.checked_pow(5).unwrap_or(u64::MAX))?;
    Ok(grid(base, &[0, 1, 2, 3, 4], &[], [0; 5]))
}

/// Representatives of the base-isomorphism classes met in `candidates`,
/// each the first one in listing order; stops once `want` are found.
fn classify(
    candidates: &[[FieldElem; 5]],
    base: Field,
    j: FieldElem,
    want: Option<usize>,
) -> Result<Vec<(WeierstrassCurve, u64)>> {
    let mut reps: Vec<(WeierstrassCurve, u64)> = Vec::new();
    for &a in candidates {
        if want.is_some_and(|w| reps.len() >= w) {
            break;
        }
        let c = WeierstrassCurve::raw(base, a)?;
        if c.is_singular() || c.j_invariant()? != j {
            continue;
        }
        let n = c.point_count()?;
        let mut new = true;
        for (r, m) in &reps {
            if *m == n && is_isomorphic(r, &c, base)? {
                new = false;
                break;
            }
        }
        if new {
            reps.push((c, n));
        }
    }
    Ok(reps)
}

pub fn enumerate_twists(e: &WeierstrassCurve, base: Field) -> Result<TwistReport> {
    enumerate_twists_with(e, base, DEFAULT_MAX_SPLIT_DEGREE)
}

/// All twists of `e` over `base`, one per Frobenius class.
pub fn enumerate_twists_with(
    e: &WeierstrassCurve,
    base: Field,
    max_split_degree: u32,
) -> Result<TwistReport> {
    let source = over_base(e, base)?;
    if source.is_singular() {
        return Err(Error::SingularCurve);
    }
    let group = automorphism_group(&source)?;
    let action = frobenius_action(&group, base)?;
    let classes = frobenius_classes(&action);
    let j = source.j_invariant()?;

    let mut reps = classify(&twist_grid(base, j)?, base, j, Some(classes.len()))?;
    if reps.len() < classes.len() {
        reps = classify(&long_grid(base)?, base, j, Some(classes.len()))?;
    }
    if reps.len() < classes.len() {
        return Err(Error::SearchExhausted(format!(
            "found {} of {} twist classes over {base}",
            reps.len(),
            classes.len()
        )));
    }

    let mut slots: Vec<Option<TwistEntry>> = vec![None; classes.len()];
    for (curve, points) in reps {
        let (d, isos) =
            minimal_isomorphisms(&source, &curve, max_split_degree)?.ok_or_else(|| {
                Error::SearchExhausted(format!(
                    "no isomorphism {source} -> {curve} up to degree {max_split_degree}"
                ))
            })?;
        let psi = isos[0];
        let label = psi.invert().compose(&psi.galois_apply(1, base)?)?;
        let elem = group
            .locate(&label)?
            .ok_or_else(|| Error::Inconsistent(format!("label {label} is not an automorphism")))?;
        let class = class_index(&classes, elem);
        let expected = splitting_degree(&action, classes[class].representative);
        if expected != d as usize {
            return Err(Error::Inconsistent(format!(
                "{curve}: splits over degree {d}, class predicts {expected}"
            )));
        }
        if slots[class].is_some() {
            return Err(Error::Inconsistent(format!(
                "two twists share class {class}"
            )));
        }
        slots[class] = Some(TwistEntry {
            curve,
            class,
            split_degree: d,
            points,
            psi,
        });
    }
    let entries = slots
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Inconsistent("unlabelled class".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistReport {
        base,
        source,
        action,
        classes,
        entries,
    })
}

/// `y^2 = f(x)` isomorphic to `e`, for odd p.
fn complete_square(e: &WeierstrassCurve) -> Result<[FieldElem; 5]> {
    let f = e.field();
    let inv = e.invariants();
    let half = f.from_int(2).inv()?;
    let quarter = half * half;
    let zero = f.zero();
    Ok([
        zero,
        inv.b2 * quarter,
        zero,
        inv.b4 * half,
        inv.b6 * quarter,
    ])
}

pub fn quadratic_twist(e: &WeierstrassCurve, d: FieldElem) -> Result<WeierstrassCurve> {
    let f = e.field();
    let p = f.characteristic();
    if p == 2 {
        return Err(Error::WrongCharacteristic {
            expected: "odd".into(),
            found: p,
        });
    }
    if d.is_zero() {
        return Err(Error::Precondition(
            "twisting parameter must be nonzero".into(),
        ));
    }
    let d = crate::gf::subfield_embed(d, f)?;
    let [_, mut a2, _, mut a4, mut a6] = complete_square(e)?;
    if p >= 5 && !a2.is_zero() {
        let s = a2 * f.from_int(3).inv()?;
        a6 = a6 - s * a4 + f.from_int(2) * s * s * s;
        a4 -= a2 * s;
        a2 = f.zero();
    }
    WeierstrassCurve::elliptic(f, [f.zero(), a2 * d, f.zero(), a4 * d * d, a6 * d * d * d])
}

/// Smallest element of trace one.
fn trace_one(f: Field) -> FieldElem {
    (0..f.size())
        .map(|i| f.element(i).expect("index below q"))
        .find(|x| x.trace().is_one())
        .expect("trace is onto")
}

pub fn artin_schreier_twist(e: &WeierstrassCurve, d: FieldElem) -> Result<WeierstrassCurve> {
    let f = e.field();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2".into(),
            found: f.characteristic(),
        });
    }
    let j = e.j_invariant()?;
    if j.is_zero() {
        return Err(Error::Precondition(
            "curve must be ordinary (j != 0)".into(),
        ));
    }
    let d = crate::gf::subfield_embed(d, f)?;
    let [a1, a2, a3, a4, a6] = e.coefficients();
    if a1.is_one() && a3.is_zero() && a4.is_zero() {
        return WeierstrassCurve::elliptic(f, [a1, a2 + d, a3, a4, a6]);
    }
    let zero = f.zero();
    let b = j.inv()?;
    for a in [zero, trace_one(f)] {
        let normal = WeierstrassCurve::elliptic(f, [f.one(), a, zero, zero, b])?;
        if is_isomorphic(e, &normal, f)? {
            return WeierstrassCurve::elliptic(f, [f.one(), a + d, zero, zero, b]);
        }
    }
    Err(Error::Inconsistent(format!("{e} has no normal form")))
}

pub fn unit_twist(e: &WeierstrassCurve, m: FieldElem) -> Result<WeierstrassCurve> {
    let f = e.field();
    if f.characteristic() < 5 {
        return Err(Error::WrongCharacteristic {
            expected: "p >= 5".into(),
            found: f.characteristic(),
        });
    }
    let [a1, a2, a3, a4, a6] = e.coefficients();
    if !(a1.is_zero() && a2.is_zero() && a3.is_zero() && a4.is_zero()) {
        return Err(Error::Precondition("expected y^2 = x^3 + b".into()));
    }
    if m.is_zero() {
        return Err(Error::Precondition(
            "twisting parameter must be nonzero".into(),
        ));
    }
    let m = crate::gf::subfield_embed(m, f)?;
    WeierstrassCurve::elliptic(f, [a1, a2, a3, a4, a6 * m])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCountTable {
    pub counts: Vec<u64>,
    pub separated: Vec<(usize, usize)>,
    pub unseparated: Vec<(usize, usize)>,
}

impl PointCountTable {
    pub fn all_distinct(&self) -> bool {
        self.unseparated.is_empty()
    }
}

pub fn point_count_table(report: &TwistReport) -> PointCountTable {
    let counts: Vec<u64> = report.entries.iter().map(|e| e.points).collect();
    let mut separated = Vec::new();
    let mut unseparated = Vec::new();
    for i in 0..counts.len() {
        for j in i + 1..counts.len() {
            if counts[i] == counts[j] {
                unseparated.push((i, j));
            } else {
                separated.push((i, j));
            }
        }
    }
    PointCountTable {
        counts,
        separated,
        unseparated,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CensusRow {
    pub curve: Vec<String>,
    pub points: u64,
    pub supersingular: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Census {
    pub base: String,
    pub classes: Vec<CensusRow>,
}

/// Base-isomorphism classes of curves with j = 0 over `F_{p^n}`, by a full
/// scan of the j = 0 family.
pub fn census(p: u64, n: u32) -> Result<Census> {
    let base = Field::new(p, n)?;
    let zero = base.zero();
    let reps = classify(&twist_grid(base, zero)?, base, zero, None)?;
    let classes = reps
        .into_iter()
        .map(|(c, points)| {
            Ok(CensusRow {
                curve: c.to_strings(),
                points,
                supersingular: c.is_supersingular()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Census {
        base: base.to_string(),
        classes,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckItem {
    pub fn new(
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> CheckItem {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        CheckItem {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    pub fn from_error(name: impl Into<String>, expected: impl ToString, err: &Error) -> CheckItem {
        CheckItem {
            name: name.into(),
            expected: expected.to_string(),
            actual: format!("error: {err}"),
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verdict {
    pub p: u64,
    pub n: u32,
    pub items: Vec<CheckItem>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

fn multiset(mut v: Vec<u32>) -> String {
    v.sort_unstable();
    format!("{v:?}")
}

/// Curves used to check the twist tables: j = 0 first, then j != 0.
pub fn table_curves(p: u64) -> Result<([i64; 5], [i64; 5])> {
    match p {
        2 => Ok(([0, 0, 1, 0, 0], [1, 0, 0, 0, 1])),
        3 => Ok(([0, 0, 0, -1, 0], [0, 1, 0, 0, 1])),
        _ => Err(Error::Precondition(format!(
            "tables cover p = 2, 3, not {p}"
        ))),
    }
}

/// Twist counts, split degrees and the j = 0 census over `F_{p^n}`, p = 2, 3.
pub fn verify_twist_tables(p: u64, n: u32) -> Result<Verdict> {
    let (ss, ord) = table_curves(p)?;
    let base = Field::new(p, n)?;
    let even = n.is_multiple_of(2);
    let (count0, degrees0): (usize, &[u32]) = match (p, even) {
        (3, false) => (4, &[1, 2, 3, 3]),
        (3, true) => (6, &[1, 2, 3, 4, 4, 6]),
        (_, false) => (3, &[1, 8, 8]),
        (_, true) => (7, &[1, 2, 3, 3, 4, 6, 6]),
    };
    let mut items = Vec::new();
    for (label, coeffs, count, degrees) in [
        ("j=0", ss, count0, degrees0.to_vec()),
        ("j!=0", ord, 2, vec![1, 2]),
    ] {
        let name = |what: &str| format!("{p}^{n} {label} {what}");
        match WeierstrassCurve::from_ints(base, coeffs).and_then(|e| enumerate_twists(&e, base)) {
            Ok(r) => {
                items.push(CheckItem::new(name("twist count"), count, r.entries.len()));
                items.push(CheckItem::new(
                    name("split degrees"),
                    multiset(degrees),
                    multiset(r.split_degrees()),
                ));
            }
            Err(err) => items.push(CheckItem::from_error(name("twists"), count, &err)),
        }
    }
    let name = format!("{p}^{n} j=0 census");
    match census(p, n) {
        Ok(c) => items.push(CheckItem::new(name, count0, c.classes.len())),
        Err(err) => items.push(CheckItem::from_error(name, count0, &err)),
    }
    Ok(Verdict { p, n, items })
}
