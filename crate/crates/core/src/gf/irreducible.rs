//! Dense polynomials over a prime field F_p, used only to pick field moduli.
//!
//! Coefficient vectors are ascending and kept trimmed (no trailing zeros).

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mulmod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_p(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_p(result, base, p);
        }
        base = mulmod_p(base, base, p);
        e >>= 1;
    }
    result
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_p(f[df], p);
    while r.len() > df {
        let dr = r.len() - 1;
        let c = mulmod_p(r[dr], lead_inv, p);
        if c != 0 {
            for (k, &fk) in f.iter().enumerate() {
                let idx = dr - df + k;
                r[idx] = (r[idx] + p - mulmod_p(c, fk, p)) % p;
            }
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod_p(ai, bj, p)) % p;
        }
    }
    rem(&prod, f, p)
}

fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// x^(p^k) mod f
fn frobenius_of_x(f: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut h = rem(&[0, 1], f, p);
    for _ in 0..k {
        h = powmod(&h, p, f, p);
    }
    h
}

/// Rabin's test for a monic polynomial of degree n >= 1.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let mut xpn = frobenius_of_x(f, p, n);
    // x^(p^n) - x
    if xpn.len() < 2 {
        xpn.resize(2, 0);
    }
    xpn[1] = (xpn[1] + p - 1) % p;
    trim(&mut xpn);
    if !xpn.is_empty() {
        return false;
    }
    for l in prime_factors(n as u64) {
        let mut h = frobenius_of_x(f, p, n / l as u32);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        let g = gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree n whose low coefficients, read as a base-p
/// integer with c0 least significant, are smallest.
pub(crate) fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1];
    }
    let mut code = 0u64;
    loop {
        let mut f = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        code += 1;
    }
}
