//! Subfield embeddings GF(p^a) -> GF(p^b), a | b.
//!
//! The generator of GF(p^a) is sent to the smallest root of its modulus in
//! GF(p^b) that agrees, on every maximal proper subfield GF(p^d), with the
//! already fixed embedding GF(p^d) -> GF(p^b). Choosing roots this way makes
//! the whole system of embeddings commute along towers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::irreducible::prime_factors;
use super::poly::Poly;
use super::{Field, FieldElem};
use crate::error::{Error, Result};

fn images() -> &'static Mutex<HashMap<(u64, u32, u32), u64>> {
    static IMAGES: OnceLock<Mutex<HashMap<(u64, u32, u32), u64>>> = OnceLock::new();
    IMAGES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Evaluates the coefficient vector of `e` at `rho`.
fn eval_at(e: FieldElem, rho: FieldElem) -> FieldElem {
    let sup = rho.field();
    e.coeffs()
        .iter()
        .rev()
        .fold(sup.zero(), |acc, &c| acc * rho + sup.from_int(c as i64))
}

/// Index (in GF(p^b)) of the image of the generator of GF(p^a); a > 1.
fn generator_image(p: u64, a: u32, b: u32) -> Result<u64> {
    if a == b {
        return Ok(p);
    }
    if let Some(&v) = images().lock().unwrap().get(&(p, a, b)) {
        return Ok(v);
    }
    let sub = Field::new_large(p, a)?;
    let sup = Field::new_large(p, b)?;
    let modulus: Vec<FieldElem> = sub
        .modulus()
        .iter()
        .map(|&c| sup.from_int(c as i64))
        .collect();
    let roots = Poly::new(sup, modulus)?.roots()?;

    let mut constraints = Vec::new();
    for l in prime_factors(a as u64) {
        let d = a / l as u32;
        if d == 1 {
            continue;
        }
        let in_sub = sub.elem_unchecked(generator_image(p, d, a)?);
        let in_sup = sup.elem_unchecked(generator_image(p, d, b)?);
        constraints.push((in_sub, in_sup));
    }
    let rho = roots
        .into_iter()
        .find(|&rho| {
            constraints
                .iter()
                .all(|&(in_sub, in_sup)| eval_at(in_sub, rho) == in_sup)
        })
        .ok_or_else(|| {
            Error::Inconsistent(format!("no compatible embedding {p}^{a} -> {p}^{b}"))
        })?;
    images().lock().unwrap().insert((p, a, b), rho.index());
    Ok(rho.index())
}

/// Image of `e` under the canonical embedding into `sup`.
pub fn subfield_embed(e: FieldElem, sup: Field) -> Result<FieldElem> {
    let sub = e.field();
    if sub == sup {
        return Ok(e);
    }
    if !sub.is_subfield_of(&sup) {
        return Err(Error::IncompatibleFields {
            sub: sub.to_string(),
            sup: sup.to_string(),
        });
    }
    if sub.degree() == 1 {
        return Ok(sup.from_int(e.index() as i64));
    }
    let rho = sup.elem_unchecked(generator_image(
        sub.characteristic(),
        sub.degree(),
        sup.degree(),
    )?);
    Ok(eval_at(e, rho))
}
