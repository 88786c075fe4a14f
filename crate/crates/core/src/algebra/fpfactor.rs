//! Factorization over F_p: squarefree, distinct-degree, then equal-degree splitting.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::algebra::fp::{self, FpPoly};
use crate::algebra::integer::is_prime;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Deterministic RNG derived from a byte string.
pub(crate) fn seeded_rng(tag: &[u8]) -> ChaCha8Rng {
    let digest = Sha256::digest(tag);
    let mut seed = [0u8; 32];
    seed.copy_from_slice(digest.as_slice());
    ChaCha8Rng::from_seed(seed)
}

fn rng_for(f: &FpPoly) -> ChaCha8Rng {
    let mut tag = Vec::with_capacity(8 * (f.coeffs().len() + 1));
    tag.extend_from_slice(&f.modulus().to_le_bytes());
    for c in f.coeffs() {
        tag.extend_from_slice(&c.to_le_bytes());
    }
    seeded_rng(&tag)
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree_fp(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.pth_root();
        for (g, j) in squarefree_fp(&root) {
            out.push((g, j * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut g = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(p as u128, &g);
        let d = g.gcd(&h.sub(&x));
        if d.degree().unwrap_or(0) > 0 {
            g = g.div_rem(&d).0;
            h = h.rem(&g);
            out.push((d, i));
        }
        i += 1;
    }
    if let Some(dg) = g.degree() {
        if dg > 0 {
            out.push((g, dg));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(p as u128, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.pow_mod(((p - 1) / 2) as u128, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorization of a nonzero polynomial over F_p into monic irreducibles.
/// The leading coefficient is dropped; output is sorted by (degree, coefficients).
pub fn factor_fp(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let f = f.monic();
    let mut rng = rng_for(&f);
    let mut out = Vec::new();
    for (part, mult) in squarefree_fp(&f) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                out.push((g.monic(), mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));
    out
}

/// Factors an integer polynomial modulo a prime.
pub fn factor_mod_p(f: &Poly<BigInt>, p: &BigInt) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    let pw = fp::word_prime(p)?;
    let fb = FpPoly::from_int_poly(f, pw);
    if fb.is_zero() {
        return Err(Error::Degenerate(format!("polynomial vanishes modulo {p}")));
    }
    Ok(factor_fp(&fb))
}
