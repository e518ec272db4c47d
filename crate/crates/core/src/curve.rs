//! Long Weierstrass curves
//! `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over a finite field.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{check_enumerable, parse_field_tag, subfield_embed, Field, FieldElem};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    field: Field,
    a: [FieldElem; 5],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: FieldElem,
    pub b4: FieldElem,
    pub b6: FieldElem,
    pub b8: FieldElem,
    pub c4: FieldElem,
    pub c6: FieldElem,
    pub discriminant: FieldElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine(FieldElem, FieldElem),
}

impl WeierstrassCurve {
    /// A possibly singular curve.
    pub fn raw(field: Field, a: [FieldElem; 5]) -> Result<WeierstrassCurve> {
        for c in &a {
            if c.field() != field {
                return Err(Error::ContextMismatch {
                    left: field.to_string(),
                    right: c.field().to_string(),
                });
            }
        }
        Ok(WeierstrassCurve { field, a })
    }

    /// A curve with nonzero discriminant.
    pub fn elliptic(field: Field, a: [FieldElem; 5]) -> Result<WeierstrassCurve> {
        let e = Self::raw(field, a)?;
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(e)
    }

    /// `y^2 = x^3 + a4 x + a6`
    pub fn short(a4: FieldElem, a6: FieldElem) -> Result<WeierstrassCurve> {
        let f = a4.field();
        Self::elliptic(f, [f.zero(), f.zero(), f.zero(), a4, a6])
    }

    pub fn from_ints(field: Field, a: [i64; 5]) -> Result<WeierstrassCurve> {
        Self::elliptic(field, a.map(|k| field.from_int(k)))
    }

    /// Parses `[a1,a2,a3,a4,a6]`; entries use the element text format.
    pub fn parse(field: Field, text: &str) -> Result<WeierstrassCurve> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a1,a2,a3,a4,a6], got {text:?}")))?;
        let entries = split_elements(inner)?;
        if entries.len() != 5 {
            return Err(Error::Parse(format!(
                "expected 5 coefficients, got {}",
                entries.len()
            )));
        }
        let mut a = [field.zero(); 5];
        for (slot, entry) in a.iter_mut().zip(&entries) {
            *slot = field.parse_elem(entry)?;
        }
        Self::elliptic(field, a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coefficients(&self) -> [FieldElem; 5] {
        self.a
    }

    pub fn a1(&self) -> FieldElem {
        self.a[0]
    }
    pub fn a2(&self) -> FieldElem {
        self.a[1]
    }
    pub fn a3(&self) -> FieldElem {
        self.a[2]
    }
    pub fn a4(&self) -> FieldElem {
        self.a[3]
    }
    pub fn a6(&self) -> FieldElem {
        self.a[4]
    }

    pub fn invariants(&self) -> Invariants {
        let f = self.field;
        let k = |n: i64| f.from_int(n);
        let [a1, a2, a3, a4, a6] = self.a;
        let b2 = a1 * a1 + k(4) * a2;
        let b4 = k(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + k(4) * a6;
        let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = b2 * b2 - k(24) * b4;
        let c6 = -(b2 * b2 * b2) + k(36) * b2 * b4 - k(216) * b6;
        let discriminant =
            -(b2 * b2 * b8) - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6;
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            discriminant,
        }
    }

    pub fn discriminant(&self) -> FieldElem {
        self.invariants().discriminant
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn j_invariant(&self) -> Result<FieldElem> {
        let inv = self.invariants();
        if inv.discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        let c4 = inv.c4;
        Ok(c4 * c4 * c4 * inv.discriminant.inv()?)
    }

    /// Right-hand side `x^3 + a2 x^2 + a4 x + a6`.
    fn rhs(&self, x: FieldElem) -> FieldElem {
        ((x + self.a2()) * x + self.a4()) * x + self.a6()
    }

    /// `a1 x + a3`
    fn linear_term(&self, x: FieldElem) -> FieldElem {
        self.a1() * x + self.a3()
    }

    pub fn is_on_curve(&self, pt: &CurvePoint) -> Result<bool> {
        match *pt {
            CurvePoint::Infinity => Ok(true),
            CurvePoint::Affine(x, y) => {
                for c in [x, y] {
                    if c.field() != self.field {
                        return Err(Error::ContextMismatch {
                            left: self.field.to_string(),
                            right: c.field().to_string(),
                        });
                    }
                }
                Ok(y * y + self.linear_term(x) * y == self.rhs(x))
            }
        }
    }

    /// The affine points with first coordinate `x`, sorted by `y`.
    fn column(&self, x: FieldElem) -> Vec<FieldElem> {
        let f = self.field;
        let h = self.linear_term(x);
        let g = self.rhs(x);
        let mut ys = if f.characteristic() == 2 {
            if h.is_zero() {
                vec![g.sqrt().expect("char 2 square root")]
            } else {
                let hinv = h.inv().expect("nonzero");
                (g * hinv * hinv)
                    .artin_schreier_roots()
                    .expect("char 2")
                    .into_iter()
                    .map(|w| w * h)
                    .collect()
            }
        } else {
            let disc = f.from_int(4) * g + h * h;
            let half = f.from_int(2).inv().expect("odd p");
            match disc.sqrt() {
                None => Vec::new(),
                Some(root) if root.is_zero() => vec![-h * half],
                Some(root) => vec![(root - h) * half, (-root - h) * half],
            }
        };
        ys.sort();
        ys
    }

    fn column_size(&self, x: FieldElem) -> u64 {
        let f = self.field;
        let h = self.linear_term(x);
        let g = self.rhs(x);
        if f.characteristic() == 2 {
            if h.is_zero() {
                1
            } else {
                let hinv = h.inv().expect("nonzero");
                if (g * hinv * hinv).trace().is_zero() {
                    2
                } else {
                    0
                }
            }
        } else {
            let disc = f.from_int(4) * g + h * h;
            if disc.is_zero() {
                1
            } else if disc.is_square() {
                2
            } else {
                0
            }
        }
    }

    /// All rational points, infinity first, then by (x, y).
    pub fn enumerate_points(&self) -> Result<Vec<CurvePoint>> {
        check_enumerable(self.field.size())?;
        let mut pts = vec![CurvePoint::Infinity];
        for x in self.field.iter_elements() {
            for y in self.column(x) {
                pts.push(CurvePoint::Affine(x, y));
            }
        }
        Ok(pts)
    }

    pub fn point_count(&self) -> Result<u64> {
        check_enumerable(self.field.size())?;
        Ok(1 + self
            .field
            .iter_elements()
            .map(|x| self.column_size(x))
            .sum::<u64>())
    }

    /// `q + 1 - #E(F_q)`
    pub fn trace_of_frobenius(&self) -> Result<i64> {
        Ok(self.field.size() as i64 + 1 - self.point_count()? as i64)
    }

    pub fn is_supersingular(&self) -> Result<bool> {
        if self.is_singular() {
            return Err(Error::SingularCurve);
        }
        let p = self.field.characteristic() as i64;
        Ok(self.trace_of_frobenius()?.rem_euclid(p) == 0)
    }

    pub fn base_change(&self, sup: Field) -> Result<WeierstrassCurve> {
        let mut a = [sup.zero(); 5];
        for (slot, c) in a.iter_mut().zip(self.a) {
            *slot = subfield_embed(c, sup)?;
        }
        Ok(WeierstrassCurve { field: sup, a })
    }

    /// True when every coefficient lies in the subfield `base`.
    pub fn is_defined_over(&self, base: Field) -> bool {
        base.is_subfield_of(&self.field) && self.a.iter().all(|c| c.frobenius(base.degree()) == *c)
    }

    /// The curve over `base` whose base change is `self`.
    pub fn descend(&self, base: Field) -> Result<WeierstrassCurve> {
        if !self.is_defined_over(base) {
            return Err(Error::NotOverBase(base.to_string()));
        }
        let mut a = [base.zero(); 5];
        for (slot, c) in a.iter_mut().zip(self.a) {
            *slot = descend_elem(c, base)?;
        }
        Ok(WeierstrassCurve { field: base, a })
    }

    /// The curve `E'` such that `(x, y) -> (u^2 x + r, u^3 y + u^2 s x + t)`
    /// maps `E'` onto `self`.
    pub fn change_coordinates(
        &self,
        u: FieldElem,
        r: FieldElem,
        s: FieldElem,
        t: FieldElem,
    ) -> Result<WeierstrassCurve> {
        let f = self.field;
        let k = |n: i64| f.from_int(n);
        let [a1, a2, a3, a4, a6] = self.a;
        let ui = u.inv()?;
        let ui2 = ui * ui;
        let ui3 = ui2 * ui;
        let b1 = (a1 + k(2) * s) * ui;
        let b2 = (a2 - s * a1 + k(3) * r - s * s) * ui2;
        let b3 = (a3 + r * a1 + k(2) * t) * ui3;
        let b4 = (a4 - s * a3 + k(2) * r * a2 - (t + r * s) * a1 + k(3) * r * r - k(2) * s * t)
            * ui2
            * ui2;
        let b6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui3 * ui3;
        WeierstrassCurve::raw(f, [b1, b2, b3, b4, b6])
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.a.iter().map(|c| c.to_string()).collect()
    }
}

/// The element of `base` that embeds to `e`.
pub(crate) fn descend_elem(e: FieldElem, base: Field) -> Result<FieldElem> {
    if e.field() == base {
        return Ok(e);
    }
    if e.is_prime_field() {
        return Ok(base.from_int(e.coeffs()[0] as i64));
    }
    // small base fields only: search by embedding
    check_enumerable(base.size())?;
    for c in base.iter_elements() {
        if subfield_embed(c, e.field())? == e {
            return Ok(c);
        }
    }
    Err(Error::NotOverBase(base.to_string()))
}

/// Splits a comma-separated list of elements where an entry `p^n:c0,...`
/// spans n comma-separated digits.
fn split_elements(text: &str) -> Result<Vec<String>> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let tok = tokens[i];
        if let Some((head, _)) = tok.split_once(':') {
            let (_, n) = parse_field_tag(head)?;
            let end = i + n as usize;
            if end > tokens.len() {
                return Err(Error::Parse(format!("truncated element {tok:?}")));
            }
            out.push(tokens[i..end].join(","));
            i = end;
        } else {
            out.push(tok.to_string());
            i += 1;
        }
    }
    Ok(out)
}

impl PartialOrd for WeierstrassCurve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeierstrassCurve {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a)
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(","))
    }
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}
