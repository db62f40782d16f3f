//! Factorization of monic polynomials over prime fields.
//!
//! Square-free decomposition (Yun, with the p-th root step for derivatives
//! that vanish), root extraction by exhaustive search for small p,
//! distinct-degree splitting with `gcd(f, x^(p^k) - x)`, and Cantor-Zassenhaus
//! equal-degree splitting. The random choices in the last stage only change
//! the discovery order; the returned list is sorted.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{IntPoly, ModPoly};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_factors};

/// Above this characteristic linear factors are left to the distinct-degree
/// stage instead of being found by trying every residue.
const ROOT_SEARCH_LIMIT: u64 = 1 << 16;

const EDF_SEED: u64 = 0x7ca1_c0de;

/// Complete factorization of `f mod p` into monic irreducibles with
/// multiplicities, sorted by [`ModPoly::canonical_cmp`].
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(ModPoly, usize)>> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    factor_monic(&f.reduce_mod(p))
}

/// Factorization of a monic polynomial over F_p.
pub fn factor_monic(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let mut rng = StdRng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    for (part, mult) in square_free(f) {
        for g in split_square_free(&part, &mut rng) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    debug_assert!(out.iter().all(|(g, _)| is_irreducible(g)));
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairwise coprime
/// square-free parts with their multiplicities.
pub fn square_free(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in square_free(&c.pth_root()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn split_square_free(f: &ModPoly, rng: &mut StdRng) -> Vec<ModPoly> {
    let p = f.modulus();
    let mut rest = f.clone();
    let mut out = Vec::new();
    if p <= ROOT_SEARCH_LIMIT {
        for r in 0..p {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            if rest.eval(r) == 0 {
                let lin = ModPoly::new(p, vec![p - r, 1]).monic();
                rest = rest.div_exact(&lin);
                out.push(lin);
            }
        }
    }
    for (part, d) in distinct_degree(&rest) {
        out.extend(equal_degree(&part, d, rng));
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree: `(product, degree)`.
pub fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let x = ModPoly::x(p);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero modulus");
            out.push((g, k));
        }
        k += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles all of
/// degree `d`.
pub fn equal_degree(f: &ModPoly, d: usize, rng: &mut StdRng) -> Vec<ModPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = f.gcd(&a);
        let g = if !g.is_one() {
            g
        } else {
            f.gcd(&splitting_element(&a, d, f))
        };
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(&g);
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// For odd p: `a^((p^d - 1)/2) - 1`; for p = 2: the trace `sum a^(2^i)`
/// over `i < d`. Either way a random element lands in a proper factor's
/// kernel with probability about 1/2.
fn splitting_element(a: &ModPoly, d: usize, f: &ModPoly) -> ModPoly {
    let p = f.modulus();
    if p == 2 {
        let mut term = a.rem(f).expect("nonzero modulus");
        let mut acc = term.clone();
        for _ in 1..d {
            term = term.mul_mod(&term, f);
            acc = acc.add(&term);
        }
        return acc;
    }
    // a^(1 + p + ... + p^(d-1)) via Frobenius, then ^((p - 1)/2)
    let mut frob = a.rem(f).expect("nonzero modulus");
    let mut norm = frob.clone();
    for _ in 1..d {
        frob = frob.pow_mod(p, f);
        norm = norm.mul_mod(&frob, f);
    }
    norm.pow_mod((p - 1) / 2, f).sub(&ModPoly::one(p))
}

/// Rabin's test: f of degree n is irreducible iff `x^(p^n) = x mod f` and
/// `gcd(x^(p^(n/r)) - x, f) = 1` for every prime r dividing n.
pub fn is_irreducible(f: &ModPoly) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let p = f.modulus();
    let f = f.monic();
    let x = ModPoly::x(p);
    let frob_pow = |k: usize| {
        let mut h = x.rem(&f).expect("nonzero modulus");
        for _ in 0..k {
            h = h.pow_mod(p, &f);
        }
        h
    };
    if frob_pow(n) != x.rem(&f).expect("nonzero modulus") {
        return false;
    }
    prime_factors(n as u64)
        .into_iter()
        .all(|r| f.gcd(&frob_pow(n / r as usize).sub(&x)).is_one())
}
