//! Weierstrass isomorphisms `(x, y) -> (u^2 x + r, u^3 y + u^2 s x + t)`,
//! automorphism groups and isomorphism search.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::curve::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::gf::{check_enumerable, subfield_embed, Field, FieldElem, Poly};

/// An isomorphism `source -> target`, both curves taken over `field()`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveIsomorphism {
    source: WeierstrassCurve,
    target: WeierstrassCurve,
    u: FieldElem,
    r: FieldElem,
    s: FieldElem,
    t: FieldElem,
}

/// Canonical sort key: coefficient indices of (u, r, s, t).
pub type IsoKey = (u64, u64, u64, u64);

impl CurveIsomorphism {
    pub fn new(
        source: WeierstrassCurve,
        target: WeierstrassCurve,
        u: FieldElem,
        r: FieldElem,
        s: FieldElem,
        t: FieldElem,
    ) -> Result<CurveIsomorphism> {
        let f = source.field();
        if target.field() != f {
            return Err(Error::ContextMismatch {
                left: f.to_string(),
                right: target.field().to_string(),
            });
        }
        for c in [u, r, s, t] {
            if c.field() != f {
                return Err(Error::ContextMismatch {
                    left: f.to_string(),
                    right: c.field().to_string(),
                });
            }
        }
        if u.is_zero() {
            return Err(Error::InvalidIsomorphism("u = 0".into()));
        }
        if target.change_coordinates(u, r, s, t)? != source {
            return Err(Error::InvalidIsomorphism(format!(
                "({u},{r},{s},{t}) does not map {source} to {target}"
            )));
        }
        Ok(CurveIsomorphism {
            source,
            target,
            u,
            r,
            s,
            t,
        })
    }

    pub fn identity(e: WeierstrassCurve) -> CurveIsomorphism {
        let f = e.field();
        CurveIsomorphism {
            source: e,
            target: e,
            u: f.one(),
            r: f.zero(),
            s: f.zero(),
            t: f.zero(),
        }
    }

    /// The map `(x, y) -> (x, -y - a1 x - a3)`.
    pub fn negation(e: WeierstrassCurve) -> CurveIsomorphism {
        let f = e.field();
        CurveIsomorphism {
            source: e,
            target: e,
            u: -f.one(),
            r: f.zero(),
            s: -e.a1(),
            t: -e.a3(),
        }
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }
    pub fn source(&self) -> WeierstrassCurve {
        self.source
    }
    pub fn target(&self) -> WeierstrassCurve {
        self.target
    }
    pub fn u(&self) -> FieldElem {
        self.u
    }
    pub fn r(&self) -> FieldElem {
        self.r
    }
    pub fn s(&self) -> FieldElem {
        self.s
    }
    pub fn t(&self) -> FieldElem {
        self.t
    }

    pub fn params(&self) -> [FieldElem; 4] {
        [self.u, self.r, self.s, self.t]
    }

    pub fn key(&self) -> IsoKey {
        (
            self.u.index(),
            self.r.index(),
            self.s.index(),
            self.t.index(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    pub fn apply(&self, pt: &CurvePoint) -> Result<CurvePoint> {
        match *pt {
            CurvePoint::Infinity => Ok(CurvePoint::Infinity),
            CurvePoint::Affine(x, y) => {
                if !self.source.is_on_curve(pt)? {
                    return Err(Error::Precondition(format!("{pt} is not on the source")));
                }
                let u2 = self.u * self.u;
                Ok(CurvePoint::Affine(
                    u2 * x + self.r,
                    u2 * self.u * y + u2 * self.s * x + self.t,
                ))
            }
        }
    }

    /// The same map over an extension field.
    pub fn embed(&self, sup: Field) -> Result<CurveIsomorphism> {
        if sup == self.field() {
            return Ok(*self);
        }
        Ok(CurveIsomorphism {
            source: self.source.base_change(sup)?,
            target: self.target.base_change(sup)?,
            u: subfield_embed(self.u, sup)?,
            r: subfield_embed(self.r, sup)?,
            s: subfield_embed(self.s, sup)?,
            t: subfield_embed(self.t, sup)?,
        })
    }

    /// `self ∘ g`: apply `g`, then `self`.
    pub fn compose(&self, g: &CurveIsomorphism) -> Result<CurveIsomorphism> {
        let field = common_field(self.field(), g.field())?;
        let f = self.embed(field)?;
        let g = g.embed(field)?;
        if g.target != f.source {
            return Err(Error::ChainMismatch);
        }
        let uf2 = f.u * f.u;
        Ok(CurveIsomorphism {
            source: g.source,
            target: f.target,
            u: f.u * g.u,
            r: uf2 * g.r + f.r,
            s: f.u * g.s + f.s,
            t: uf2 * f.u * g.t + uf2 * f.s * g.r + f.t,
        })
    }

    pub fn invert(&self) -> CurveIsomorphism {
        let v = self.u.inv().expect("u is nonzero");
        let v2 = v * v;
        CurveIsomorphism {
            source: self.target,
            target: self.source,
            u: v,
            r: -(v2 * self.r),
            s: -(v * self.s),
            t: v2 * v * (self.r * self.s - self.t),
        }
    }

    /// Applies the `k`-th power of the `|base|`-power Frobenius to the
    /// parameters; both curves must be defined over `base`.
    pub fn galois_apply(&self, k: u32, base: Field) -> Result<CurveIsomorphism> {
        if !self.source.is_defined_over(base) || !self.target.is_defined_over(base) {
            return Err(Error::NotOverBase(base.to_string()));
        }
        let e = ((base.degree() as u64 * k as u64) % self.field().degree() as u64) as u32;
        Ok(CurveIsomorphism {
            u: self.u.frobenius(e),
            r: self.r.frobenius(e),
            s: self.s.frobenius(e),
            t: self.t.frobenius(e),
            ..*self
        })
    }

    /// Smallest subfield containing all four parameters.
    pub fn field_of_definition(&self) -> Field {
        let f = self.field();
        let n = f.degree();
        let d = (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| self.params().iter().all(|c| c.frobenius(d) == *c))
            .unwrap_or(n);
        Field::new_large(f.characteristic(), d).expect("subfield of a valid field")
    }
}

impl PartialOrd for CurveIsomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurveIsomorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.params()
            .cmp(&other.params())
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl fmt::Display for CurveIsomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})@{}",
            self.u,
            self.r,
            self.s,
            self.t,
            self.field()
        )
    }
}

impl fmt::Debug for CurveIsomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self, self.source, self.target)
    }
}

/// The smallest field containing both `a` and `b`.
pub fn common_field(a: Field, b: Field) -> Result<Field> {
    if a.characteristic() != b.characteristic() {
        return Err(Error::IncompatibleFields {
            sub: a.to_string(),
            sup: b.to_string(),
        });
    }
    if a.is_subfield_of(&b) {
        return Ok(b);
    }
    if b.is_subfield_of(&a) {
        return Ok(a);
    }
    let (m, n) = (a.degree(), b.degree());
    Field::new_large(a.characteristic(), m / gcd(m, n) * n)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lift_pair(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    field: Field,
) -> Result<(WeierstrassCurve, WeierstrassCurve)> {
    for e in [e1, e2] {
        if !e.field().is_subfield_of(&field) {
            return Err(Error::IncompatibleFields {
                sub: e.field().to_string(),
                sup: field.to_string(),
            });
        }
        if e.is_singular() {
            return Err(Error::SingularCurve);
        }
    }
    Ok((e1.base_change(field)?, e2.base_change(field)?))
}

/// All isomorphisms `e1 -> e2` defined over `field`, sorted canonically.
pub fn find_isomorphisms(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    field: Field,
) -> Result<Vec<CurveIsomorphism>> {
    let (src, tgt) = lift_pair(e1, e2, field)?;
    let si = src.invariants();
    let ti = tgt.invariants();
    let ratio = ti.discriminant * si.discriminant.inv()?;
    let mut unit_eq = vec![field.zero(); 13];
    unit_eq[0] = -ratio;
    unit_eq[12] = field.one();
    let mut found = Vec::new();
    for u in Poly::new(field, unit_eq)?.roots()? {
        let u2 = u * u;
        let u4 = u2 * u2;
        if u4 * si.c4 != ti.c4 || u4 * u2 * si.c6 != ti.c6 {
            continue;
        }
        for (r, s, t) in solve_translation(&src, &tgt, u)? {
            if tgt.change_coordinates(u, r, s, t)? == src {
                found.push(CurveIsomorphism {
                    source: src,
                    target: tgt,
                    u,
                    r,
                    s,
                    t,
                });
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Candidate (r, s, t) for a fixed scaling `u`; every isomorphism with this
/// `u` is among them.
fn solve_translation(
    src: &WeierstrassCurve,
    tgt: &WeierstrassCurve,
    u: FieldElem,
) -> Result<Vec<(FieldElem, FieldElem, FieldElem)>> {
    let f = src.field();
    let k = |n: i64| f.from_int(n);
    let [b1, b2, b3, b4, b6] = src.coefficients();
    let [a1, a2, a3, a4, a6] = tgt.coefficients();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let u6 = u3 * u3;
    let mut out = Vec::new();
    match f.characteristic() {
        2 => {
            if u * b1 != a1 {
                return Ok(out);
            }
            if !a1.is_zero() {
                let a1i = a1.inv()?;
                let r = (u3 * b3 + a3) * a1i;
                let quad = Poly::new(f, vec![u2 * b2 + a2 + r, a1, f.one()])?;
                for s in quad.roots()? {
                    let t = (u4 * b4 + a4 + s * a3 + r * s * a1 + r * r) * a1i;
                    out.push((r, s, t));
                }
            } else {
                if u3 * b3 != a3 {
                    return Ok(out);
                }
                let c = u2 * b2 + a2;
                let quartic = Poly::new(
                    f,
                    vec![a4 + c * c + u4 * b4, a3, f.zero(), f.zero(), f.one()],
                )?;
                for s in quartic.roots()? {
                    let r = c + s * s;
                    let konst = u6 * b6 + a6 + r * a4 + r * r * a2 + r * r * r;
                    for t in Poly::new(f, vec![konst, a3, f.one()])?.roots()? {
                        out.push((r, s, t));
                    }
                }
            }
        }
        3 => {
            let half = k(2).inv()?;
            let s = (u * b1 - a1) * half;
            // t = t0 + t1 r
            let t0 = (u3 * b3 - a3) * half;
            let t1 = -(a1 * half);
            let x = Poly::x(f);
            let tr = Poly::new(f, vec![t0, t1])?;
            let cubic = Poly::new(f, vec![a6 - u6 * b6, a4, a2, f.one()])?
                .sub(&tr.scale(a3))
                .sub(&tr.mul(&tr))
                .sub(&x.mul(&tr).scale(a1));
            for r in cubic.roots()? {
                out.push((r, s, t0 + t1 * r));
            }
        }
        _ => {
            let half = k(2).inv()?;
            let third = k(3).inv()?;
            let s = (u * b1 - a1) * half;
            let r = (u2 * b2 - a2 + s * a1 + s * s) * third;
            let t = (u3 * b3 - a3 - r * a1) * half;
            out.push((r, s, t));
        }
    }
    Ok(out)
}

/// Brute-force reference for [`find_isomorphisms`]; visits all q^4
/// parameter tuples.
pub fn find_isomorphisms_exhaustive(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    field: Field,
) -> Result<Vec<CurveIsomorphism>> {
    let (src, tgt) = lift_pair(e1, e2, field)?;
    let q = field.size();
    check_enumerable(q.saturating_pow(4))?;
    let elems: Vec<FieldElem> = (0..q).map(|i| field.element(i)).collect::<Result<_>>()?;
    let k = |n: i64| field.from_int(n);
    let [b1, b2, ..] = src.coefficients();
    let [a1, a2, ..] = tgt.coefficients();
    let mut found = Vec::new();
    for &u in &elems[1..] {
        for &s in &elems {
            if u * b1 != a1 + k(2) * s {
                continue;
            }
            for &r in &elems {
                if u * u * b2 != a2 - s * a1 + k(3) * r - s * s {
                    continue;
                }
                for &t in &elems {
                    if tgt.change_coordinates(u, r, s, t)? == src {
                        found.push(CurveIsomorphism {
                            source: src,
                            target: tgt,
                            u,
                            r,
                            s,
                            t,
                        });
                    }
                }
            }
        }
    }
    found.sort();
    Ok(found)
}

pub fn is_isomorphic(e1: &WeierstrassCurve, e2: &WeierstrassCurve, field: Field) -> Result<bool> {
    Ok(!find_isomorphisms(e1, e2, field)?.is_empty())
}

/// Smallest `d <= max_degree` with an isomorphism over the degree-`d`
/// extension of the common base field, with all isomorphisms found there.
pub fn minimal_isomorphisms(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    max_degree: u32,
) -> Result<Option<(u32, Vec<CurveIsomorphism>)>> {
    let base = e1.field();
    if e2.field() != base {
        return Err(Error::ContextMismatch {
            left: base.to_string(),
            right: e2.field().to_string(),
        });
    }
    if e1.j_invariant()? != e2.j_invariant()? {
        return Ok(None);
    }
    for d in 1..=max_degree {
        let isos = find_isomorphisms(e1, e2, base.extension(d)?)?;
        if !isos.is_empty() {
            return Ok(Some((d, isos)));
        }
    }
    Ok(None)
}

pub fn minimal_isomorphism_degree(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    max_degree: u32,
) -> Result<Option<u32>> {
    Ok(minimal_isomorphisms(e1, e2, max_degree)?.map(|(d, _)| d))
}

/// Largest possible automorphism group order for a curve with j-invariant
/// `j` in characteristic `p`.
pub fn max_automorphism_order(p: u64, j: FieldElem) -> usize {
    let j1728 = j.field().from_int(1728);
    match p {
        2 if j.is_zero() => 24,
        3 if j.is_zero() => 12,
        2 | 3 => 2,
        _ if j.is_zero() => 6,
        _ if j == j1728 => 4,
        _ => 2,
    }
}

fn extension_degrees(p: u64) -> &'static [u32] {
    if p == 2 {
        &[1, 2, 3, 4, 6, 8, 12, 24]
    } else {
        &[1, 2, 3, 4, 6, 12]
    }
}

/// The full automorphism group, realized over its field of definition.
#[derive(Clone, Debug)]
pub struct AutGroup {
    curve: WeierstrassCurve,
    field: Field,
    elements: Vec<CurveIsomorphism>,
    cayley: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    index: HashMap<IsoKey, usize>,
}

impl AutGroup {
    fn from_elements(curve: WeierstrassCurve, elements: Vec<CurveIsomorphism>) -> Result<AutGroup> {
        let field = elements[0].field();
        let index: HashMap<IsoKey, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key(), i))
            .collect();
        let lookup = |e: &CurveIsomorphism| {
            index.get(&e.key()).copied().ok_or_else(|| {
                Error::Inconsistent(format!("automorphisms not closed: {e} missing"))
            })
        };
        let mut cayley = Vec::with_capacity(elements.len());
        for a in &elements {
            let row = elements
                .iter()
                .map(|b| lookup(&a.compose(b)?))
                .collect::<Result<Vec<_>>>()?;
            cayley.push(row);
        }
        let inverses = elements
            .iter()
            .map(|a| lookup(&a.invert()))
            .collect::<Result<Vec<_>>>()?;
        if !elements[0].is_identity() {
            return Err(Error::Inconsistent(
                "identity is not the first element".into(),
            ));
        }
        Ok(AutGroup {
            curve,
            field,
            elements,
            cayley,
            inverses,
            index,
        })
    }

    pub fn curve(&self) -> WeierstrassCurve {
        self.curve
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn elements(&self) -> &[CurveIsomorphism] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &CurveIsomorphism {
        &self.elements[i]
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }
    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Order of `a`; 0 if the powers of `a` never reach the identity, which
    /// only happens for a corrupted table.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        for k in 1..=self.order() {
            if x == 0 {
                return k;
            }
            x = self.mul(x, a);
        }
        0
    }

    /// Index of `iso`, which may be given over any subfield of the group's
    /// field.
    pub fn index_of(&self, iso: &CurveIsomorphism) -> Option<usize> {
        let lifted = iso.embed(self.field).ok()?;
        if lifted.source != self.elements[0].source || lifted.target != lifted.source {
            return None;
        }
        self.index.get(&lifted.key()).copied()
    }

    /// Index of an automorphism given over any field of the same
    /// characteristic, extensions of the group's field included.
    pub fn locate(&self, iso: &CurveIsomorphism) -> Result<Option<usize>> {
        if iso.field().is_subfield_of(&self.field) {
            return Ok(self.index_of(iso));
        }
        let big = common_field(self.field, iso.field())?;
        let lifted = iso.embed(big)?;
        let source = self.elements[0].source.base_change(big)?;
        if lifted.source != source || lifted.target != source {
            return Ok(None);
        }
        for (i, a) in self.elements.iter().enumerate() {
            if a.embed(big)?.params() == lifted.params() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Index of the map with parameters `(u, r, s, t)`, each given over a
    /// subfield of the group's field.
    pub fn index_of_params(&self, params: [FieldElem; 4]) -> Option<usize> {
        let mut key = [0u64; 4];
        for (slot, c) in key.iter_mut().zip(params) {
            *slot = subfield_embed(c, self.field).ok()?.index();
        }
        self.index.get(&(key[0], key[1], key[2], key[3])).copied()
    }

    /// The subgroup generated by `gens`, as sorted indices.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !members[b] {
                    members[b] = true;
                    list.push(b);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Fault injection for verification harnesses: swaps two products.
    pub fn with_corrupted_table(mut self) -> AutGroup {
        if self.order() > 2 {
            let (a, b) = (self.cayley[1][1], self.cayley[1][2]);
            self.cayley[1][1] = b;
            self.cayley[1][2] = a;
        }
        self
    }

    /// True when the Cayley table is associative.
    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n)
                .all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }
}

/// Automorphisms of `e` over the smallest extension in the search list where
/// the group reaches its maximal possible order.
pub fn automorphism_group(e: &WeierstrassCurve) -> Result<AutGroup> {
    let j = e.j_invariant()?;
    let p = e.field().characteristic();
    let target = max_automorphism_order(p, j);
    for &d in extension_degrees(p) {
        let field = e.field().extension(d)?;
        let isos = find_isomorphisms(e, e, field)?;
        if isos.len() == target {
            return AutGroup::from_elements(*e, isos);
        }
    }
    Err(Error::SearchExhausted(format!(
        "automorphism group of {e} did not reach order {target}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub cyclic: bool,
    pub normal: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Debug)]
pub struct GroupStructure {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<usize>,
    pub conjugacy_classes: Vec<Vec<usize>>,
    pub center: Vec<usize>,
    /// Every subgroup, sorted by (order, elements).
    pub subgroups: Vec<Subgroup>,
    pub subgroup_counts: BTreeMap<usize, usize>,
    /// The index of `(x, y) -> (x, -y - a1 x - a3)`.
    pub minus_one: usize,
}

impl GroupStructure {
    /// The subgroup of the given order when there is exactly one.
    pub fn unique_subgroup(&self, order: usize) -> Option<&Subgroup> {
        let mut it = self.subgroups.iter().filter(|h| h.order() == order);
        match (it.next(), it.next()) {
            (Some(h), None) => Some(h),
            _ => None,
        }
    }

    pub fn subgroups_of_order(&self, order: usize) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().filter(move |h| h.order() == order)
    }
}

pub fn group_structure(g: &AutGroup) -> Result<GroupStructure> {
    if !g.is_associative() {
        return Err(Error::Inconsistent(
            "multiplication table is not associative".into(),
        ));
    }
    let n = g.order();
    let element_orders: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    let abelian = (0..n).all(|a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)));
    let center: Vec<usize> = (0..n)
        .filter(|&a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)))
        .collect();

    let mut seen = vec![false; n];
    let mut conjugacy_classes = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|s| g.mul(g.mul(g.inverse(s), a), s)).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            seen[c] = true;
        }
        conjugacy_classes.push(class);
    }

    let mut found: Vec<Vec<usize>> = (0..n).map(|a| g.generate(&[a])).collect();
    found.sort();
    found.dedup();
    loop {
        let mut next = found.clone();
        for a in &found {
            for b in &found {
                let gens: Vec<usize> = a.iter().chain(b).copied().collect();
                next.push(g.generate(&gens));
            }
        }
        next.sort();
        next.dedup();
        if next.len() == found.len() {
            break;
        }
        found = next;
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|elements| {
            let order = elements.len();
            let cyclic = elements.iter().any(|&a| element_orders[a] == order);
            let normal = elements.iter().all(|&h| {
                (0..n).all(|s| {
                    elements
                        .binary_search(&g.mul(g.mul(g.inverse(s), h), s))
                        .is_ok()
                })
            });
            Subgroup {
                elements,
                cyclic,
                normal,
            }
        })
        .collect();
    subgroups.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    let mut subgroup_counts = BTreeMap::new();
    for h in &subgroups {
        *subgroup_counts.entry(h.order()).or_insert(0) += 1;
    }

    let neg = CurveIsomorphism::negation(g.elements[0].source());
    let minus_one = g
        .index_of(&neg)
        .ok_or_else(|| Error::Inconsistent("negation map missing from the group".into()))?;

    Ok(GroupStructure {
        order: n,
        abelian,
        element_orders,
        conjugacy_classes,
        center,
        subgroups,
        subgroup_counts,
        minus_one,
    })
}
