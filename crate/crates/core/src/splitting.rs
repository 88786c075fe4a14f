//! Splitting types of rational primes in the ring of integers.
//!
//! For `p` not dividing the index the shape is read off the factorization of
//! `f mod p`. Otherwise `A = O/pO` is decomposed directly: its nilradical is
//! the kernel of a Frobenius power, the semisimple quotient is split into
//! fields using minimal polynomials of elements, and the resulting
//! idempotents are lifted back to `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::algebra::bigfp::factor_shape_mod_p;
use crate::algebra::fp::{self, FpPoly};
use crate::algebra::fpfactor::{factor_fp, factor_mod_p, seeded_rng};
use crate::algebra::fpmat::{self, Subspace};
use crate::algebra::integer::is_prime;
use crate::error::{Error, Result};
use crate::order::{mul_mod, radical_mod_p, reduce_table, unit_vector, MaximalOrder};

/// `(e_i, f_i)` pairs of the primes above `p`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType {
    pub p: BigInt,
    pub pairs: Vec<(u32, u32)>,
}

impl SplittingType {
    pub fn new(p: BigInt, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        SplittingType { p, pairs }
    }

    /// Number of primes above `p`.
    pub fn g(&self) -> usize {
        self.pairs.len()
    }

    /// Sum of the residue degrees.
    pub fn residue_degree_sum(&self) -> u32 {
        self.pairs.iter().map(|&(_, f)| f).sum()
    }

    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|&(e, f)| e * f).sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.pairs.iter().any(|&(e, _)| e > 1)
    }

    pub fn is_tame(&self) -> bool {
        is_tame(self)
    }

    /// `Σ (e_i - 1) f_i`, the discriminant valuation at a tame prime.
    pub fn tame_disc_valuation(&self) -> u32 {
        self.pairs.iter().map(|&(e, f)| (e - 1) * f).sum()
    }
}

/// True iff `p` divides no ramification index.
pub fn is_tame(s: &SplittingType) -> bool {
    s.pairs.iter().all(|&(e, _)| !BigInt::from(e).is_multiple_of(&s.p))
}

/// `O/pO` given by structure constants on the integral basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    pub p: u64,
    pub dim: usize,
    /// `w_i w_j = Σ_k table[(i*dim + j)*dim + k] w_k`.
    pub table: Vec<u64>,
}

impl QuotientAlgebra {
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        mul_mod(&self.table, self.dim, a, b, self.p)
    }

    /// The unit; the first integral basis element is 1.
    pub fn one(&self) -> Vec<u64> {
        unit_vector(self.dim, 0)
    }

    pub fn basis_element(&self, i: usize) -> Vec<u64> {
        unit_vector(self.dim, i)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| fp::add(x, y, self.p)).collect()
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|&x| fp::mul(x, c, self.p)).collect()
    }

    /// Nilradical as a subspace.
    pub fn radical(&self) -> Subspace {
        Subspace::from_vectors(self.p, self.dim, &radical_mod_p(&self.table, self.dim, self.p))
    }

    /// Dimension of the ideal `A e`.
    fn ideal_dim(&self, e: &[u64]) -> usize {
        let rows: Vec<Vec<u64>> = (0..self.dim).map(|k| self.mul(&self.basis_element(k), e)).collect();
        fpmat::rank(self.p, &rows)
    }

    /// Dimension of `(A e + N) / N`.
    fn semisimple_dim(&self, e: &[u64], rad: &Subspace) -> usize {
        let mut s = rad.clone();
        for k in 0..self.dim {
            s.insert(&self.mul(&self.basis_element(k), e));
        }
        s.rank() - rad.rank()
    }
}

/// Structure constants of `O_K / pO_K`.
pub fn quotient_algebra(m: &MaximalOrder, p: &BigInt) -> Result<QuotientAlgebra> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    let pw = fp::word_prime(p)?;
    Ok(QuotientAlgebra { p: pw, dim: m.degree(), table: reduce_table(m.mult_table(), pw) })
}

/// Minimal polynomial of `y` over F_p inside `A e / N` (unit `e`), together
/// with the powers `e, y, y^2, ...` in `A` up to its degree.
fn min_poly_mod_radical(
    alg: &QuotientAlgebra,
    rad: &Subspace,
    e: &[u64],
    y: &[u64],
) -> (FpPoly, Vec<Vec<u64>>) {
    let p = alg.p;
    let n = alg.dim;
    // echelon rows carry (reduced vector, combination of powers)
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut powers: Vec<Vec<u64>> = vec![e.to_vec()];
    loop {
        let d = powers.len() - 1;
        let mut v = rad.reduce(&powers[d]);
        let mut comb = vec![0u64; n + 2];
        comb[d] = 1;
        for (piv, r, c) in &rows {
            let k = v[*piv];
            if k == 0 {
                continue;
            }
            for (x, yv) in v.iter_mut().zip(r) {
                *x = fp::sub(*x, fp::mul(k, *yv, p), p);
            }
            for (x, yv) in comb.iter_mut().zip(c) {
                *x = fp::sub(*x, fp::mul(k, *yv, p), p);
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                comb.truncate(d + 1);
                return (FpPoly::new(p, comb).monic(), powers);
            }
            Some(piv) => {
                let s = fp::inv(v[piv], p);
                let v: Vec<u64> = v.iter().map(|&x| fp::mul(x, s, p)).collect();
                let comb: Vec<u64> = comb.iter().map(|&x| fp::mul(x, s, p)).collect();
                rows.push((piv, v, comb));
                let next = alg.mul(&powers[d], y);
                powers.push(next);
            }
        }
    }
}

/// `Σ c_k y^k` given precomputed powers (`powers[0]` is the local unit).
fn eval_at_powers(alg: &QuotientAlgebra, poly: &FpPoly, powers: &[Vec<u64>]) -> Vec<u64> {
    let mut acc = vec![0u64; alg.dim];
    for (k, &c) in poly.coeffs().iter().enumerate() {
        if c != 0 {
            acc = alg.add(&acc, &alg.scale(&powers[k], c));
        }
    }
    acc
}

/// Lifts an idempotent modulo the radical to a true idempotent of `A`
/// with the iteration `x -> 3x^2 - 2x^3`.
fn lift_idempotent(alg: &QuotientAlgebra, x: &[u64]) -> Result<Vec<u64>> {
    let p = alg.p;
    let mut x = x.to_vec();
    for _ in 0..=usize::BITS - alg.dim.leading_zeros() + 1 {
        let x2 = alg.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = alg.mul(&x2, &x);
        x = x2
            .iter()
            .zip(&x3)
            .map(|(&a, &b)| fp::sub(fp::mul(3 % p, a, p), fp::mul(2 % p, b, p), p))
            .collect();
    }
    let x2 = alg.mul(&x, &x);
    if x2 == x {
        Ok(x)
    } else {
        Err(Error::Internal("idempotent lifting did not converge".into()))
    }
}

/// CRT idempotents of `F_p[t]/(μ)` for squarefree `μ = Π g_i`.
fn crt_idempotents(mu: &FpPoly, factors: &[FpPoly]) -> Vec<FpPoly> {
    factors
        .iter()
        .map(|g| {
            let cof = mu.div_rem(g).0;
            let (_, s, _) = cof.rem(g).ext_gcd(g);
            cof.mul(&s).rem(mu)
        })
        .collect()
}

const SPLIT_ATTEMPTS: usize = 256;

/// Splitting type from the decomposition of `O/pO` into local algebras.
pub fn split_prime_by_algebra(m: &MaximalOrder, p: &BigInt) -> Result<SplittingType> {
    let alg = quotient_algebra(m, p)?;
    let n = alg.dim;
    let pw = alg.p;
    let rad = alg.radical();
    let mut tag = m.disc().to_signed_bytes_le();
    tag.extend_from_slice(b"/");
    tag.extend_from_slice(&pw.to_le_bytes());
    let mut rng = seeded_rng(&tag);

    let mut queue = vec![alg.one()];
    let mut pairs = Vec::new();
    while let Some(e) = queue.pop() {
        let sdim = alg.semisimple_dim(&e, &rad);
        let ldim = alg.ideal_dim(&e);
        if sdim == 0 {
            return Err(Error::Internal("nilpotent idempotent".into()));
        }
        let mut resolved = sdim == 1;
        let mut attempt = 0;
        while !resolved {
            if attempt >= SPLIT_ATTEMPTS {
                return Err(Error::Internal(format!("could not split O/{p}O")));
            }
            let x = if attempt < n {
                alg.basis_element(attempt)
            } else {
                (0..n).map(|_| rng.gen_range(0..pw)).collect()
            };
            attempt += 1;
            let y = alg.mul(&x, &e);
            let (mu, powers) = min_poly_mod_radical(&alg, &rad, &e, &y);
            let facs: Vec<FpPoly> = factor_fp(&mu).into_iter().map(|(g, _)| g).collect();
            if facs.len() >= 2 {
                for c in crt_idempotents(&mu, &facs) {
                    let approx = eval_at_powers(&alg, &c, &powers);
                    queue.push(lift_idempotent(&alg, &approx)?);
                }
                break;
            }
            if mu.degree() == Some(sdim) {
                resolved = true;
            }
        }
        if resolved {
            if ldim % sdim != 0 {
                return Err(Error::Internal("local dimension not a multiple of residue degree".into()));
            }
            pairs.push(((ldim / sdim) as u32, sdim as u32));
        }
    }
    let s = SplittingType::new(p.clone(), pairs);
    if s.degree() as usize != n {
        return Err(Error::Internal(format!("splitting at {p} does not sum to the degree")));
    }
    Ok(s)
}

/// Splitting type from `f mod p`, valid when `p` does not divide the index.
pub fn split_prime_by_factoring(m: &MaximalOrder, p: &BigInt) -> Result<SplittingType> {
    if m.index.is_multiple_of(p) {
        return Err(Error::OutOfDomain(format!("{p} divides the index")));
    }
    if *p > BigInt::from(fp::MAX_WORD_PRIME) {
        return Ok(SplittingType::new(p.clone(), factor_shape_mod_p(m.poly(), p)?));
    }
    let facs = factor_mod_p(m.poly(), p)?;
    Ok(SplittingType::new(
        p.clone(),
        facs.iter().map(|(g, e)| (*e, g.degree().unwrap() as u32)).collect(),
    ))
}

/// Splitting type of `p` in the ring of integers.
pub fn split_prime(m: &MaximalOrder, p: &BigInt) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    if m.index.is_zero() || !m.index.is_multiple_of(p) {
        split_prime_by_factoring(m, p)
    } else {
        split_prime_by_algebra(m, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::order::maximal_order;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mo(s: &str) -> MaximalOrder {
        maximal_order(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn gaussian_integers() {
        let m = mo("x^2 + 1");
        let a = quotient_algebra(&m, &b(5)).unwrap();
        let x = a.basis_element(1);
        assert_eq!(a.mul(&x, &x), vec![4, 0]);
        assert_eq!(split_prime(&m, &b(5)).unwrap().pairs, vec![(1, 1), (1, 1)]);
        assert_eq!(split_prime(&m, &b(3)).unwrap().pairs, vec![(1, 2)]);
        assert_eq!(split_prime_by_algebra(&m, &b(2)).unwrap().pairs, vec![(2, 1)]);
        // x + 1 is nilpotent mod 2
        let a2 = quotient_algebra(&m, &b(2)).unwrap();
        let y = vec![1, 1];
        assert_eq!(a2.mul(&y, &y), vec![0, 0]);
    }

    #[test]
    fn golden_order_mod_two_is_a_field() {
        let m = mo("x^2 - 5");
        let a = quotient_algebra(&m, &b(2)).unwrap();
        assert_eq!(a.radical().rank(), 0);
        assert_eq!(split_prime(&m, &b(2)).unwrap().pairs, vec![(1, 2)]);
    }

    #[test]
    fn klein_fields_at_five() {
        let k = mo("x^4 - 41*x^2 + 144");
        let l = mo("x^4 - x^3 - 46*x^2 - 115*x - 35");
        assert_eq!(split_prime(&k, &b(5)).unwrap().pairs, vec![(2, 2)]);
        assert_eq!(split_prime(&l, &b(5)).unwrap().pairs, vec![(2, 1), (2, 1)]);
        // index 48 = 2^4 * 3 forces the algebra path at 2 and 3
        for p in [2, 3] {
            let s = split_prime(&k, &b(p)).unwrap();
            assert_eq!(s.degree(), 4);
            assert!(!s.is_ramified());
        }
    }

    #[test]
    fn d12_sextic() {
        let m = mo("x^6 - 2*x^5 + 3*x^4 - 9*x^3 + 8*x^2 - 7*x - 5");
        assert_eq!(split_prime(&m, &b(3)).unwrap().pairs, vec![(2, 3)]);
        let s = split_prime(&m, &b(23)).unwrap();
        assert_eq!(s.g(), 2);
        assert!(s.pairs.iter().all(|&(e, _)| e == 2));
        assert_eq!(s.residue_degree_sum(), 3);
    }

    #[test]
    fn tameness() {
        assert!(SplittingType::new(b(3), vec![(2, 3)]).is_tame());
        assert!(!SplittingType::new(b(2), vec![(2, 1)]).is_tame());
        assert!(SplittingType::new(b(59), vec![(4, 1)]).is_tame());
    }
}
