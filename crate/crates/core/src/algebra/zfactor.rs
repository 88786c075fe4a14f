//! Factorization in Z[x]: squarefree decomposition, Hensel lifting of a
//! modular factorization, and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::fp::FpPoly;
use crate::algebra::fpfactor::factor_fp;
use crate::algebra::integer::is_prime;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

type IntPoly = Poly<BigInt>;

/// `f = content * prod(factor^mult)`, factors primitive with positive leading
/// coefficient, sorted by (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFactorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl ZFactorization {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (g, e)| &acc * &g.pow(*e))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.content.abs().is_one()
    }
}

/// Yun's squarefree decomposition over Q, returned as primitive integer parts.
pub fn squarefree_z(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let f = f.to_rational();
    let df = f.derivative();
    let b = Poly::gcd(&f, &df);
    let mut c = f.div_rem(&b).0;
    let mut d = &df.div_rem(&b).0 - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while c.degree().unwrap_or(0) > 0 {
        let a = Poly::gcd(&c, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((IntPoly::from_rational_primitive(&a), i));
        }
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        i += 1;
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    f.map(|c| c.mod_floor(m))
}

fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    f.map(|c| {
        let r = c.mod_floor(m);
        if r > half {
            r - m
        } else {
            r
        }
    })
}

/// Lifts `target = a * b (mod p)` to `target = A * B (mod p^k)` with `A, B` monic.
fn hensel_pair(target: &IntPoly, a: &FpPoly, b: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (g, s, t) = a.ext_gcd(b);
    debug_assert!(g.is_one());
    let pb = BigInt::from(p);
    let mut big_a = a.to_int_poly();
    let mut big_b = b.to_int_poly();
    let mut m = pb.clone();
    for _ in 1..k {
        let err = target - &(&big_a * &big_b);
        let e = FpPoly::from_int_poly(&err.div_exact_scalar(&m), p);
        let (q, da) = e.mul(&t).div_rem(a);
        let db = e.mul(&s).add(&q.mul(b));
        big_a = &big_a + &da.to_int_poly().scale(&m);
        big_b = &big_b + &db.to_int_poly().scale(&m);
        m *= &pb;
    }
    (reduce_mod(&big_a, &m), reduce_mod(&big_b, &m))
}

fn multi_lift(target: &IntPoly, facs: &[FpPoly], p: u64, k: u32, pk: &BigInt) -> Vec<IntPoly> {
    if facs.len() == 1 {
        return vec![reduce_mod(target, pk)];
    }
    let mid = facs.len() / 2;
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
    let (a, b) = hensel_pair(target, &prod(&facs[..mid]), &prod(&facs[mid..]), p, k);
    let mut out = multi_lift(&a, &facs[..mid], p, k, pk);
    out.extend(multi_lift(&b, &facs[mid..], p, k, pk));
    out
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    for i in (0..s).rev() {
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Bound on coefficients of `lc(g) * h / lc(h)` for any factor `h` of `g`.
fn factor_coefficient_bound(g: &IntPoly) -> BigInt {
    let n = g.degree().unwrap();
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    (BigInt::one() << n) * norm * g.lead().unwrap().abs()
}

/// Small primes for which `g mod p` keeps its degree and stays squarefree.
fn good_primes(g: &IntPoly, want: usize) -> Vec<(u64, Vec<FpPoly>)> {
    let lc = g.lead().unwrap();
    let mut out = Vec::new();
    let mut p = 2u64;
    while out.len() < want && p < 10_000 {
        if is_prime(&BigInt::from(p)) && !(lc % p).is_zero() {
            let gb = FpPoly::from_int_poly(g, p);
            if gb.gcd(&gb.derivative()).is_one() {
                let facs: Vec<FpPoly> = factor_fp(&gb).into_iter().map(|(h, _)| h).collect();
                let single = facs.len() == 1;
                out.push((p, facs));
                if single {
                    break;
                }
            }
        }
        p += 1;
    }
    out
}

/// Irreducible factors of a primitive squarefree polynomial of positive degree.
fn factor_squarefree(g: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = g.degree().unwrap();
    if n <= 1 {
        return Ok(vec![g.clone()]);
    }
    let candidates = good_primes(g, 5);
    let (p, facs) = candidates
        .into_iter()
        .min_by_key(|(_, f)| f.len())
        .ok_or_else(|| Error::Internal("no good reduction prime below 10^4".into()))?;
    if facs.len() == 1 {
        return Ok(vec![g.clone()]);
    }
    let pb = BigInt::from(p);
    let bound = factor_coefficient_bound(g) * 2;
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lc = g.lead().unwrap().clone();
    let target = reduce_mod(&g.scale(&mod_inverse(&lc, &pk)), &pk);
    let mut lifted = multi_lift(&target, &facs, p, k, &pk);

    let mut rest = g.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'sizes: while 2 * s <= lifted.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = rest.lead().unwrap().clone();
            let prod = idx
                .iter()
                .fold(IntPoly::constant(lc), |acc, &i| reduce_mod(&(&acc * &lifted[i]), &pk));
            let h = symmetric_mod(&prod, &pk).primitive_part();
            if let Some(q) = rest.div_exact(&h) {
                out.push(h);
                rest = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'sizes;
            }
            if !next_subset(&mut idx, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.primitive_part());
    }
    Ok(out)
}

/// Complete factorization of a nonzero integer polynomial over Q.
pub fn factor_over_z(f: &IntPoly) -> Result<ZFactorization> {
    if f.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    let mut content = f.content();
    if f.lead().unwrap().is_negative() {
        content = -content;
    }
    let prim = f.div_exact_scalar(&content);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_z(&prim) {
        for h in factor_squarefree(&part)? {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    Ok(ZFactorization { content, factors })
}

/// Whether a polynomial of positive degree is irreducible over Q.
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let z = factor_over_z(f)?;
    Ok(z.factors.len() == 1 && z.factors[0].1 == 1)
}

/// Word-sized prime witnessing irreducibility of `f` (f stays irreducible mod p), if one is found.
pub fn irreducibility_witness(f: &IntPoly, limit: u64) -> Option<u64> {
    let lc = f.lead()?;
    (2..limit).find(|&p| {
        is_prime(&BigInt::from(p)) && !(lc % p).is_zero() && {
            let fb = FpPoly::from_int_poly(f, p);
            let r = factor_fp(&fb);
            r.len() == 1 && r[0].1 == 1
        }
    })
}
