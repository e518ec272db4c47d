//! Exact arithmetic in GF(p^n).
//!
//! A field is built from the smallest monic irreducible modulus of the
//! requested degree and interned in a process-wide registry, so every
//! `(p, n)` pair maps to exactly one [`Field`]. Elements are stored as the
//! base-p integer `c0 + c1 p + ... + c_{n-1} p^{n-1}` of their polynomial
//! coefficients; integer order on that index is the canonical element order.

mod embed;
pub(crate) mod irreducible;
mod poly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

pub use embed::subfield_embed;
pub use poly::{poly_roots, poly_roots_by_scan, Poly};

const MAX_DIGITS: usize = 64;

/// Default cap on the number of elements an enumerating operation may visit.
pub const DEFAULT_WORK_LIMIT: u64 = 1 << 22;

/// Largest field size representable at all (arithmetic only, no enumeration).
pub const MAX_FIELD_SIZE: u64 = 1 << 62;

static WORK_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_WORK_LIMIT);

/// Current working limit for operations that enumerate a field.
pub fn work_limit() -> u64 {
    WORK_LIMIT.load(AtomicOrdering::Relaxed)
}

pub fn set_work_limit(limit: u64) {
    WORK_LIMIT.store(limit.max(1), AtomicOrdering::Relaxed);
}

pub(crate) fn check_enumerable(q: u64) -> Result<()> {
    let limit = work_limit();
    if q > limit {
        return Err(Error::LimitExceeded {
            size: q as u128,
            limit,
        });
    }
    Ok(())
}

/// Immutable description of GF(p^n).
pub struct FieldCtx {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    modulus_bits: u64,
    nonresidue: OnceLock<Option<u64>>,
    as_solver: OnceLock<ArtinSchreierSolver>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Handle to an interned field. Equality is identity of the interned context.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldCtx);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.n.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.n)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.n)
    }
}

fn registry() -> &'static Mutex<HashMap<(u64, u32), Field>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// GF(p^n), refusing fields above the current working limit.
    pub fn new(p: u64, n: u32) -> Result<Field> {
        let q = Self::checked_size(p, n)?;
        check_enumerable(q)?;
        Self::intern(p, n, q)
    }

    /// GF(p^n) with an explicit size cap.
    pub fn with_limit(p: u64, n: u32, limit: u64) -> Result<Field> {
        let q = Self::checked_size(p, n)?;
        if q > limit {
            return Err(Error::LimitExceeded {
                size: q as u128,
                limit,
            });
        }
        Self::intern(p, n, q)
    }

    /// GF(p^n) for arithmetic and root finding only; enumeration over it is
    /// still subject to the working limit.
    pub fn new_large(p: u64, n: u32) -> Result<Field> {
        let q = Self::checked_size(p, n)?;
        Self::intern(p, n, q)
    }

    /// The degree-`d` extension of `self`.
    pub fn extension(&self, d: u32) -> Result<Field> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let n = self.0.n.checked_mul(d).ok_or(Error::Unrepresentable {
            p: self.0.p,
            n: u32::MAX,
        })?;
        Field::new_large(self.0.p, n)
    }

    fn checked_size(p: u64, n: u32) -> Result<u64> {
        if !irreducible::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        match p.checked_pow(n) {
            Some(q) if q <= MAX_FIELD_SIZE => Ok(q),
            _ => Err(Error::Unrepresentable { p, n }),
        }
    }

    fn intern(p: u64, n: u32, q: u64) -> Result<Field> {
        if let Some(f) = registry().lock().unwrap().get(&(p, n)) {
            return Ok(*f);
        }
        // Built outside the lock; the modulus search is deterministic so a
        // racing duplicate is identical and simply dropped.
        let modulus = irreducible::smallest_irreducible(p, n);
        let mut pow_p = Vec::with_capacity(n as usize + 1);
        let mut acc = 1u64;
        for k in 0..=n {
            pow_p.push(acc);
            if k < n {
                acc *= p;
            }
        }
        let modulus_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |bits, (k, &c)| bits | (c << k))
        } else {
            0
        };
        let ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            pow_p,
            modulus_bits,
            nonresidue: OnceLock::new(),
            as_solver: OnceLock::new(),
        };
        let mut reg = registry().lock().unwrap();
        let field = *reg
            .entry((p, n))
            .or_insert_with(|| Field(Box::leak(Box::new(ctx))));
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn size(&self) -> u64 {
        self.0.q
    }

    /// Monic modulus, ascending coefficients (length n + 1).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: *self,
            val: 0,
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            field: *self,
            val: 1,
        }
    }

    /// The class x of the polynomial generator (for n = 1 this is 0).
    pub fn generator(&self) -> FieldElem {
        if self.0.n == 1 {
            self.zero()
        } else {
            FieldElem {
                field: *self,
                val: self.0.p,
            }
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElem {
        let p = self.0.p as i128;
        let v = ((k as i128 % p) + p) % p;
        FieldElem {
            field: *self,
            val: v as u64,
        }
    }

    /// Element with the given ascending coefficients (reduced mod p, missing
    /// entries are zero).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.n as usize {
            return Err(Error::Parse(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.n
            )));
        }
        let p = self.0.p as i128;
        let mut val = 0u64;
        for (k, &c) in coeffs.iter().enumerate() {
            let d = ((c as i128 % p) + p) % p;
            val += d as u64 * self.0.pow_p[k];
        }
        Ok(FieldElem { field: *self, val })
    }

    /// Element by canonical index (0 <= index < q).
    pub fn element(&self, index: u64) -> Result<FieldElem> {
        if index >= self.0.q {
            return Err(Error::Parse(format!(
                "index {index} out of range for {self}"
            )));
        }
        Ok(FieldElem {
            field: *self,
            val: index,
        })
    }

    pub(crate) fn elem_unchecked(&self, val: u64) -> FieldElem {
        FieldElem { field: *self, val }
    }

    /// All q elements in canonical order, without a size check.
    pub(crate) fn iter_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let f = *self;
        (0..self.0.q).map(move |v| FieldElem { field: f, val: v })
    }

    pub fn is_subfield_of(&self, other: &Field) -> bool {
        self.0.p == other.0.p && other.0.n.is_multiple_of(self.0.n)
    }

    /// Parses `p^n:c0,...,c_{n-1}` (for this field or a subfield, which is
    /// embedded) or a plain, possibly negative, integer.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let text = text.trim();
        if let Some((head, body)) = text.split_once(':') {
            let (p, n) = parse_field_tag(head)?;
            let sub = Field::new_large(p, n)?;
            if !sub.is_subfield_of(self) {
                return Err(Error::IncompatibleFields {
                    sub: sub.to_string(),
                    sup: self.to_string(),
                });
            }
            let coeffs = body
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != n as usize {
                return Err(Error::Parse(format!(
                    "expected {n} coefficients for {p}^{n}, got {}",
                    coeffs.len()
                )));
            }
            let e = sub.from_coeffs(&coeffs)?;
            subfield_embed(e, *self)
        } else {
            let k = text
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad field element `{text}`")))?;
            Ok(self.from_int(k))
        }
    }

    fn digits(&self, mut v: u64) -> [u64; MAX_DIGITS] {
        let mut d = [0u64; MAX_DIGITS];
        let p = self.0.p;
        for slot in d.iter_mut().take(self.0.n as usize) {
            *slot = v % p;
            v /= p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> u64 {
        d.iter()
            .take(self.0.n as usize)
            .enumerate()
            .map(|(k, &c)| c * self.0.pow_p[k])
            .sum()
    }

    fn add_vals(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.n == 1 {
            return ((a as u128 + b as u128) % p as u128) as u64;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = [0u64; MAX_DIGITS];
        for k in 0..self.0.n as usize {
            out[k] = (da[k] + db[k]) % p;
        }
        self.pack(&out)
    }

    fn neg_val(&self, a: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.n == 1 {
            return (p - a) % p;
        }
        let mut d = self.digits(a);
        for c in d.iter_mut().take(self.0.n as usize) {
            *c = (p - *c) % p;
        }
        self.pack(&d)
    }

    fn mul_vals(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let n = self.0.n as usize;
        if self.0.n == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        if p == 2 {
            let mut prod: u128 = 0;
            let mut bb = b;
            let mut shift = 0;
            while bb != 0 {
                if bb & 1 == 1 {
                    prod ^= (a as u128) << shift;
                }
                bb >>= 1;
                shift += 1;
            }
            let m = self.0.modulus_bits as u128;
            for d in (n..=2 * n - 2).rev() {
                if (prod >> d) & 1 == 1 {
                    prod ^= m << (d - n);
                }
            }
            return prod as u64;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for d in (n..=2 * n - 2).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for k in 0..n {
                prod[d - n + k] = (prod[d - n + k] + neg * m[k]) % p;
            }
            prod[d] = 0;
        }
        self.pack(&prod[..n])
    }

    fn nonresidue(&self) -> Option<u64> {
        *self.0.nonresidue.get_or_init(|| {
            if self.0.p == 2 {
                return None;
            }
            let half = (self.0.q - 1) / 2;
            let minus_one = self.from_int(-1);
            (2..self.0.q)
                .map(|v| self.elem_unchecked(v))
                .find(|e| e.pow(half) == minus_one)
                .map(|e| e.val)
        })
    }

    fn as_solver(&self) -> &ArtinSchreierSolver {
        self.0
            .as_solver
            .get_or_init(|| ArtinSchreierSolver::build(*self))
    }
}

pub(crate) fn parse_field_tag(head: &str) -> Result<(u64, u32)> {
    let (p, n) = head
        .trim()
        .split_once('^')
        .ok_or_else(|| Error::Parse(format!("bad field tag `{head}`")))?;
    let p = p
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad characteristic `{p}`")))?;
    let n = n
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad degree `{n}`")))?;
    Ok((p, n))
}

/// GF(p^n) with the default working limit.
pub fn field_create(p: u64, n: u32) -> Result<Field> {
    Field::new(p, n)
}

/// All elements in canonical order.
pub fn enumerate_field(field: Field) -> Result<Vec<FieldElem>> {
    check_enumerable(field.size())?;
    Ok(field.iter_elements().collect())
}

/// An element of an interned field.
#[derive(Clone, Copy)]
pub struct FieldElem {
    field: Field,
    val: u64,
}

impl FieldElem {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Canonical index: the coefficient vector read as a base-p integer.
    pub fn index(&self) -> u64 {
        self.val
    }

    pub fn coeffs(&self) -> Vec<u64> {
        let d = self.field.digits(self.val);
        d[..self.field.degree() as usize].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.val == 0
    }

    pub fn is_one(&self) -> bool {
        self.val == 1
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_field(&self) -> bool {
        self.val < self.field.characteristic()
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self
            .field
            .elem_unchecked(self.field.add_vals(self.val, other.val)))
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        let neg = self.field.neg_val(other.val);
        Ok(self
            .field
            .elem_unchecked(self.field.add_vals(self.val, neg)))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self
            .field
            .elem_unchecked(self.field.mul_vals(self.val, other.val)))
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(*self * other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.size() - 2))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, mut e: u64) -> FieldElem {
        let f = self.field;
        let mut result = 1u64;
        let mut base = self.val;
        while e > 0 {
            if e & 1 == 1 {
                result = f.mul_vals(result, base);
            }
            e >>= 1;
            if e > 0 {
                base = f.mul_vals(base, base);
            }
        }
        f.elem_unchecked(result)
    }

    /// Signed exponent; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<FieldElem> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn square(&self) -> FieldElem {
        *self * *self
    }

    /// `e^(p^k)`.
    pub fn frobenius(&self, k: u32) -> FieldElem {
        let n = self.field.degree();
        let k = k % n;
        if k == 0 {
            return *self;
        }
        self.pow(self.field.0.pow_p[k as usize])
    }

    /// Absolute trace down to the prime field.
    pub fn trace(&self) -> FieldElem {
        let mut acc = *self;
        let mut t = *self;
        for _ in 1..self.field.degree() {
            acc = acc.frobenius(1);
            t += acc;
        }
        t
    }

    pub fn is_square(&self) -> bool {
        if self.field.characteristic() == 2 || self.is_zero() {
            return true;
        }
        self.pow((self.field.size() - 1) / 2).is_one()
    }

    /// A square root if one exists; for odd p the smaller of the two roots in
    /// canonical order.
    pub fn sqrt(&self) -> Option<FieldElem> {
        let f = self.field;
        if f.characteristic() == 2 {
            return Some(self.pow(f.size() / 2));
        }
        if self.is_zero() {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        let root = tonelli_shanks(*self, f.elem_unchecked(f.nonresidue()?));
        let other = -root;
        Some(if other.val < root.val { other } else { root })
    }

    /// All roots of `w^p - w = self`, sorted canonically.
    pub fn artin_schreier_roots(&self) -> Result<Vec<FieldElem>> {
        let p = self.field.characteristic();
        if p != 2 && p != 3 {
            return Err(Error::WrongCharacteristic {
                expected: "2 or 3".into(),
                found: p,
            });
        }
        Ok(self.field.as_solver().solve(*self))
    }
}

/// `w^p - w = c` for characteristic 2 or 3.
pub fn artin_schreier_roots(c: FieldElem) -> Result<Vec<FieldElem>> {
    c.artin_schreier_roots()
}

fn tonelli_shanks(a: FieldElem, z: FieldElem) -> FieldElem {
    let q = a.field().size();
    let mut s = 0u32;
    let mut t = q - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    let mut m = s;
    let mut c = z.pow(t);
    let mut x = a.pow(t.div_ceil(2));
    let mut b = a.pow(t);
    while !b.is_one() {
        let mut i = 0;
        let mut probe = b;
        while !probe.is_one() {
            probe = probe.square();
            i += 1;
        }
        let mut g = c;
        for _ in 0..(m - i - 1) {
            g = g.square();
        }
        x *= g;
        c = g.square();
        b *= c;
        m = i;
    }
    x
}

/// Solves the F_p-linear system `w^p - w = c` through a cached row reduction.
struct ArtinSchreierSolver {
    field: Field,
    // transform rows: T with T * M = R (row echelon); pivots[k] = column of row k
    transform: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    reduced: Vec<Vec<u64>>,
}

impl ArtinSchreierSolver {
    fn build(field: Field) -> Self {
        let n = field.degree() as usize;
        let p = field.characteristic();
        let mut m = vec![vec![0u64; n]; n];
        for col in 0..n {
            let b = field.elem_unchecked(field.0.pow_p[col]);
            let image = b.frobenius(1) - b;
            let d = field.digits(image.val);
            for row in 0..n {
                m[row][col] = d[row];
            }
        }
        let mut t: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            t.swap(row, pr);
            let inv = field.from_int(m[row][col] as i64).inv().unwrap().val;
            for j in 0..n {
                m[row][j] = m[row][j] * inv % p;
                t[row][j] = t[row][j] * inv % p;
            }
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for j in 0..n {
                        m[r][j] = (m[r][j] + (p - factor) * m[row][j]) % p;
                        t[r][j] = (t[r][j] + (p - factor) * t[row][j]) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        ArtinSchreierSolver {
            field,
            transform: t,
            pivots,
            reduced: m,
        }
    }

    fn solve(&self, c: FieldElem) -> Vec<FieldElem> {
        let f = self.field;
        let n = f.degree() as usize;
        let p = f.characteristic();
        let cd = f.digits(c.val);
        let rhs: Vec<u64> = self
            .transform
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&cd[..n])
                    .map(|(a, b)| a * b % p)
                    .sum::<u64>()
                    % p
            })
            .collect();
        if rhs[self.pivots.len()..].iter().any(|&v| v != 0) {
            return Vec::new();
        }
        let mut w = [0u64; MAX_DIGITS];
        for (row, &col) in self.pivots.iter().enumerate() {
            debug_assert_eq!(self.reduced[row][col], 1);
            w[col] = rhs[row];
        }
        let w0 = f.elem_unchecked(f.pack(&w[..n]));
        debug_assert!(w0.frobenius(1) - w0 == c);
        let mut roots: Vec<FieldElem> = (0..p as i64).map(|k| w0 + f.from_int(k)).collect();
        roots.sort();
        roots
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.val == other.val
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.val.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.characteristic(), self.field.degree(), self.val).cmp(&(
            other.field.characteristic(),
            other.field.degree(),
            other.val,
        ))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    /// `p^n:c0,...,c_{n-1}`, or the bare residue over a prime field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.val);
        }
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        write!(f, "{}:{}", self.field, coeffs.join(","))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$try(&rhs).expect("field mismatch in arithmetic")
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &'a FieldElem) -> FieldElem {
                self.$try(rhs).expect("field mismatch in arithmetic")
            }
        }
        impl $assign_tr for FieldElem {
            fn $assign(&mut self, rhs: FieldElem) {
                *self = self.$try(&rhs).expect("field mismatch in arithmetic");
            }
        }
    };
}

binop!(Add, add, try_add, AddAssign, add_assign);
binop!(Sub, sub, try_sub, SubAssign, sub_assign);
binop!(Mul, mul, try_mul, MulAssign, mul_assign);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem_unchecked(self.field.neg_val(self.val))
    }
}
