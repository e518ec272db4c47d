//! Univariate polynomials over a [`Field`] and their roots.
//!
//! Roots are found by taking `gcd(f, x^q - x)` and splitting the result with
//! deterministic trace (p = 2) or Cantor–Zassenhaus (odd p) steps, so the cost
//! depends on deg f and log q rather than on q. [`poly_roots_by_scan`] is the
//! exhaustive reference.

use std::fmt;

use super::{check_enumerable, Field, FieldElem};
use crate::error::{Error, Result};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<FieldElem>) -> Result<Poly> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::ContextMismatch {
                left: field.to_string(),
                right: bad.field().to_string(),
            });
        }
        let mut p = Poly { field, coeffs };
        p.trim();
        Ok(p)
    }

    fn raw(field: Field, coeffs: Vec<FieldElem>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::raw(c.field(), vec![c])
    }

    /// The monomial x.
    pub fn x(field: Field) -> Poly {
        Poly::raw(field, vec![field.zero(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..len)
            .map(|k| *self.coeffs.get(k).unwrap_or(&z) + *other.coeffs.get(k).unwrap_or(&z))
            .collect();
        Poly::raw(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-self.field.one()))
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        Poly::raw(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::raw(self.field, out)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k] * lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= c * dj;
            }
        }
        rem.truncate(dd);
        Ok((Poly::raw(self.field, quot), Poly::raw(self.field, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut result = Poly::constant(self.field.one()).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        Ok(result)
    }

    /// All distinct roots in the coefficient field, sorted canonically.
    pub fn roots(&self) -> Result<Vec<FieldElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let field = self.field;
        let p = field.characteristic();
        // x^q mod f through n successive p-th powers
        let mut h = Poly::x(field).rem(&f)?;
        for _ in 0..field.degree() {
            h = h.pow_mod(p, &f)?;
        }
        let split = f.gcd(&h.sub(&Poly::x(field)));
        let mut roots = Vec::new();
        split_linear(&split, &mut roots);
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

/// Splits a monic squarefree product of distinct linear factors.
fn split_linear(g: &Poly, out: &mut Vec<FieldElem>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(-g.coeffs[0]);
            return;
        }
        _ => {}
    }
    let field = g.field;
    let deg = g.degree().unwrap();
    if field.characteristic() == 2 {
        // Tr(beta x) mod g separates roots for some basis element beta
        for k in 0..field.degree() {
            let beta = field.elem_unchecked(1u64 << k);
            let mut term = Poly::x(field).scale(beta).rem(g).unwrap();
            let mut trace = term.clone();
            for _ in 1..field.degree() {
                term = term.mul_mod(&term, g);
                trace = trace.add(&term);
            }
            let d = g.gcd(&trace);
            if let Some(dd) = d.degree() {
                if dd > 0 && dd < deg {
                    let (other, _) = g.div_rem(&d).unwrap();
                    split_linear(&d, out);
                    split_linear(&other.monic(), out);
                    return;
                }
            }
        }
        unreachable!("trace splitting failed on a product of distinct linear factors");
    }
    let half = (field.size() - 1) / 2;
    for shift in field.iter_elements() {
        let base = Poly::raw(field, vec![shift, field.one()]);
        let w = base.pow_mod(half, g).unwrap();
        let d = g.gcd(&w.sub(&Poly::constant(field.one())));
        if let Some(dd) = d.degree() {
            if dd > 0 && dd < deg {
                let (other, _) = g.div_rem(&d).unwrap();
                split_linear(&d, out);
                split_linear(&other.monic(), out);
                return;
            }
        }
    }
    unreachable!("equal-degree splitting failed on a product of distinct linear factors");
}

/// All roots of `c0 + c1 x + ...` in the coefficients' field, sorted.
pub fn poly_roots(coeffs: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let field = coeffs.first().ok_or(Error::ZeroPolynomial)?.field();
    Poly::new(field, coeffs.to_vec())?.roots()
}

/// Exhaustive reference for [`poly_roots`].
pub fn poly_roots_by_scan(coeffs: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let field = coeffs.first().ok_or(Error::ZeroPolynomial)?.field();
    let f = Poly::new(field, coeffs.to_vec())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_enumerable(field.size())?;
    Ok(field
        .iter_elements()
        .filter(|&x| f.eval(x).is_zero())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(field: Field, cs: &[i64]) -> Vec<FieldElem> {
        cs.iter().map(|&c| field.from_int(c)).collect()
    }

    #[test]
    fn fourth_roots_of_unity() {
        let f3 = Field::new(3, 1).unwrap();
        let roots = poly_roots(&ints(f3, &[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(roots, ints(f3, &[1, 2]));

        let f9 = Field::new(3, 2).unwrap();
        let roots = poly_roots(&ints(f9, &[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 4);
        let i = f9.generator();
        assert!(roots.contains(&i) && roots.contains(&-i));

        let f4 = Field::new(2, 2).unwrap();
        let roots = poly_roots(&ints(f4, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(roots, f4.iter_elements().skip(1).collect::<Vec<_>>());
    }

    #[test]
    fn zero_polynomial_is_error() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(poly_roots(&ints(f5, &[0, 0])), Err(Error::ZeroPolynomial));
        assert_eq!(poly_roots(&[]), Err(Error::ZeroPolynomial));
        assert_eq!(poly_roots(&ints(f5, &[3])).unwrap(), vec![]);
    }

    #[test]
    fn algebraic_roots_match_scan() {
        for &(p, n) in &[
            (2u64, 1u32),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (3, 3),
            (5, 2),
            (7, 1),
            (13, 1),
        ] {
            let field = Field::new(p, n).unwrap();
            let q = field.size();
            // deterministic pseudo-random polynomials, degrees 1..=6
            let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ (p * 31 + n as u64);
            for deg in 1..=6usize {
                for _ in 0..6 {
                    let mut cs = Vec::new();
                    for _ in 0..=deg {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        cs.push(field.elem_unchecked((state >> 33) % q));
                    }
                    cs[deg] = field.one();
                    // force some roots by multiplying in (x - a)(x - b)
                    let a = field.elem_unchecked(state % q);
                    let b = field.elem_unchecked((state >> 17) % q);
                    let f = Poly::new(field, cs)
                        .unwrap()
                        .mul(&Poly::raw(field, vec![-a, field.one()]))
                        .mul(&Poly::raw(field, vec![-b, field.one()]));
                    assert_eq!(
                        f.roots().unwrap(),
                        poly_roots_by_scan(f.coeffs()).unwrap(),
                        "{f:?} over {field}"
                    );
                }
            }
        }
    }

    #[test]
    fn div_rem_identity() {
        let f7 = Field::new(7, 1).unwrap();
        let a = Poly::new(f7, ints(f7, &[1, 2, 3, 4, 5])).unwrap();
        let b = Poly::new(f7, ints(f7, &[3, 0, 2])).unwrap();
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
