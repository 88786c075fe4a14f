//! The integral trace form and the ramification invariants built on
//! splitting data: alpha-invariants, epsilon-split homogeneity and the
//! Gamma-field classification.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::integer::{is_prime, legendre, smallest_nonresidue};
use crate::algebra::matrix::Matrix;
use crate::algebra::sturm_count_real_roots;
use crate::error::{Error, Result};
use crate::order::MaximalOrder;
use crate::scalar::Field;
use crate::splitting::SplittingType;
use crate::{IntMatrix, IntPoly};

/// Real embeddings and pairs of complex embeddings.
pub fn field_signature(f: &IntPoly) -> Result<(usize, usize)> {
    let n = f.degree().ok_or_else(|| Error::Degenerate("zero polynomial".into()))?;
    let r = sturm_count_real_roots(f)?;
    Ok((r, (n - r) / 2))
}

/// Power sums `s_k = Σ θ_i^k` for `k < count`, by Newton's identities.
pub fn power_sums(f: &IntPoly, count: usize) -> Vec<BigInt> {
    let n = f.degree().unwrap_or(0);
    let a = |i: usize| f.coeff(i);
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            s.push(BigInt::from(n));
            continue;
        }
        let mut v = if k <= n { -a(n - k) * BigInt::from(k) } else { BigInt::zero() };
        for i in 1..=(k - 1).min(n) {
            v -= a(n - i) * &s[k - i];
        }
        s.push(v);
    }
    s
}

/// Gram matrix of `(x, y) -> Tr(xy)` on an integral basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    pub gram: IntMatrix,
    pub det: BigInt,
    /// `(positive, negative)` counts.
    pub signature: (usize, usize),
}

/// Trace form of the maximal order on its Hermite basis.
pub fn gram_matrix(m: &MaximalOrder) -> Result<TraceForm> {
    let n = m.degree();
    let s = power_sums(m.poly(), 2 * n);
    let b = m.order.basis();
    let d2 = m.order.denom() * m.order.denom();
    // (B S)[i][l] = Σ_k B[i][k] s_{k+l}
    let bs: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|l| (0..n).map(|k| &b[(i, k)] * &s[k + l]).sum())
                .collect()
        })
        .collect();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let num: BigInt = (0..n).map(|l| &bs[i][l] * &b[(j, l)]).sum();
            let (q, r) = num.div_rem(&d2);
            if !r.is_zero() {
                return Err(Error::Internal("non-integral trace on the integral basis".into()));
            }
            gram[(i, j)] = q.clone();
            gram[(j, i)] = q;
        }
    }
    let det = gram.det();
    let signature = form_signature(&gram)?;
    Ok(TraceForm { gram, det, signature })
}

/// Inertia of a nonsingular integer symmetric matrix.
pub fn form_signature(gram: &IntMatrix) -> Result<(usize, usize)> {
    congruence_signature(&gram.map(|x| BigRational::from_integer(x.clone())))
}

/// Inertia by symmetric Gaussian elimination over an ordered field. A zero
/// diagonal is repaired by adding a row and column with a nonzero
/// off-diagonal entry to it, which keeps the form congruent.
pub fn congruence_signature<T: Field + Signed>(m: &Matrix<T>) -> Result<(usize, usize)> {
    let n = m.nrows();
    if n != m.ncols() || !m.is_symmetric() {
        return Err(Error::Degenerate("form is not symmetric".into()));
    }
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap_sym(&mut a, k, i);
        } else {
            let (i, j) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero())
                .ok_or(Error::SingularForm)?;
            add_sym(&mut a, i, j);
            swap_sym(&mut a, k, i);
        }
        let piv = a[(k, k)].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in k + 1..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let c = a[(r, k)].clone() / piv.clone();
            for col in k..n {
                let v = a[(r, col)].clone() - c.clone() * a[(k, col)].clone();
                a[(r, col)] = v;
            }
            for row in k..n {
                let v = a[(row, r)].clone() - c.clone() * a[(row, k)].clone();
                a[(row, r)] = v;
            }
        }
    }
    Ok((pos, neg))
}

fn swap_sym<T: Field>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    for r in 0..a.nrows() {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Row and column `i` += row and column `j`.
fn add_sym<T: Field>(a: &mut Matrix<T>, i: usize, j: usize) {
    let n = a.nrows();
    for c in 0..n {
        let v = a[(i, c)].clone() + a[(j, c)].clone();
        a[(i, c)] = v;
    }
    for r in 0..n {
        let v = a[(r, i)].clone() + a[(r, j)].clone();
        a[(r, i)] = v;
    }
}

/// Square class of the first ramification invariant at an odd prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaClass {
    pub p: BigInt,
    pub legendre: i8,
    /// 1 for the square class, otherwise the smallest nonresidue.
    pub unit_rep: BigInt,
}

impl AlphaClass {
    fn from_legendre(p: &BigInt, legendre: i8) -> Result<AlphaClass> {
        let unit_rep = if legendre == 1 { BigInt::one() } else { smallest_nonresidue(p)? };
        Ok(AlphaClass { p: p.clone(), legendre, unit_rep })
    }
}

fn require_odd_prime(p: &BigInt) -> Result<()> {
    if *p == BigInt::from(2) || !is_prime(p) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    Ok(())
}

/// Legendre class of `Π e_i^{f_i} · u_p^{F-g}`.
pub fn alpha_invariant(s: &SplittingType) -> Result<AlphaClass> {
    require_odd_prime(&s.p)?;
    if !s.is_tame() {
        return Err(Error::WildRamification(s.p.clone()));
    }
    let mut sign = 1i8;
    for &(e, f) in &s.pairs {
        if f % 2 == 1 {
            sign *= legendre(&BigInt::from(e), &s.p)?;
        }
    }
    if (s.residue_degree_sum() as usize - s.g()) % 2 == 1 {
        sign = -sign;
    }
    AlphaClass::from_legendre(&s.p, sign)
}

/// All ramification indices above `p` coincide.
pub fn is_epsilon_split_homogeneous(s: &SplittingType) -> bool {
    s.pairs.windows(2).all(|w| w[0].0 == w[1].0)
}

/// The three conditions evaluated at one odd ramified prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeBullets {
    pub eps_split: bool,
    pub g_odd: bool,
    /// False whenever the prime is not epsilon-split homogeneous.
    pub n_over_e_odd: bool,
}

impl PrimeBullets {
    pub fn passes(&self) -> bool {
        self.eps_split && self.g_odd && self.n_over_e_odd
    }
}

pub fn prime_bullets(n: usize, s: &SplittingType) -> PrimeBullets {
    let eps_split = is_epsilon_split_homogeneous(s);
    let n_over_e_odd = eps_split && {
        let e = s.pairs[0].0 as usize;
        n.is_multiple_of(e) && (n / e) % 2 == 1
    };
    PrimeBullets { eps_split, g_odd: s.g() % 2 == 1, n_over_e_odd }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaClassification {
    pub is_tame: bool,
    pub is_gamma: bool,
    pub exceptional: Option<BigInt>,
    pub per_prime: BTreeMap<BigInt, PrimeBullets>,
}

impl GammaClassification {
    pub fn failing_primes(&self) -> Vec<BigInt> {
        self.per_prime.iter().filter(|(_, b)| !b.passes()).map(|(p, _)| p.clone()).collect()
    }
}

/// Gamma classification from the splitting types of all ramified primes.
pub fn classify_splittings<'a>(
    n: usize,
    splittings: impl IntoIterator<Item = &'a SplittingType>,
) -> GammaClassification {
    let two = BigInt::from(2);
    let mut is_tame = true;
    let mut per_prime = BTreeMap::new();
    for s in splittings {
        is_tame &= s.is_tame();
        if s.p != two && s.is_ramified() {
            per_prime.insert(s.p.clone(), prime_bullets(n, s));
        }
    }
    let failing: Vec<&BigInt> = per_prime.iter().filter(|(_, b)| !b.passes()).map(|(p, _)| p).collect();
    let is_gamma = is_tame && failing.len() <= 1;
    let exceptional = if is_gamma { failing.first().map(|p| (*p).clone()) } else { None };
    GammaClassification { is_tame, is_gamma, exceptional, per_prime }
}

/// Legendre class of `n / (n - v)` at `p`.
pub fn lemma_square_class(n: usize, v: usize, p: &BigInt) -> Result<AlphaClass> {
    require_odd_prime(p)?;
    if v == 0 || v >= n {
        return Err(Error::OutOfDomain(format!("valuation {v} outside (0, {n})")));
    }
    let q = BigRational::new(BigInt::from(n), BigInt::from(n - v));
    if q.numer().is_multiple_of(p) || q.denom().is_multiple_of(p) {
        return Err(Error::OutOfDomain(format!("{p} divides {q}")));
    }
    let sign = legendre(q.numer(), p)? * legendre(q.denom(), p)?;
    AlphaClass::from_legendre(p, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::int_matrix;
    use crate::algebra::parse_poly;
    use crate::order::maximal_order;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn st(p: i64, pairs: &[(u32, u32)]) -> SplittingType {
        SplittingType::new(b(p), pairs.to_vec())
    }

    fn tf(s: &str) -> TraceForm {
        gram_matrix(&maximal_order(&parse_poly(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn signatures() {
        let sig = |s: &str| field_signature(&parse_poly(s).unwrap()).unwrap();
        assert_eq!(sig("x^6 - x^5 - 2*x^4 + x^3 + 7*x^2 - 6*x + 4"), (0, 3));
        assert_eq!(sig("x^3 - x - 1"), (1, 1));
        assert_eq!(sig("x^4 - 41*x^2 + 144"), (4, 0));
    }

    #[test]
    fn newton_sums() {
        // roots 1, 2, 3
        let s = power_sums(&parse_poly("x^3 - 6*x^2 + 11*x - 6").unwrap(), 6);
        let want: Vec<BigInt> = (0..6u32).map(|k| b(1 + 2i64.pow(k) + 3i64.pow(k))).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn small_gram_matrices() {
        let g = tf("x^2 + 1");
        assert_eq!(g.gram, int_matrix(&[&[2, 0], &[0, -2]]));
        assert_eq!(g.signature, (1, 1));
        let g = tf("x^2 - 5");
        assert_eq!(g.gram, int_matrix(&[&[2, 1], &[1, 3]]));
        assert_eq!(g.det, b(5));
        assert_eq!(g.signature, (2, 0));
        assert_eq!(tf("x - 1").gram, int_matrix(&[&[1]]));
    }

    #[test]
    fn sextic_trace_form() {
        let g = tf("x^6 - x^5 - 2*x^4 + x^3 + 7*x^2 - 6*x + 4");
        assert_eq!(g.det, b(-309123));
        assert_eq!(g.signature, (3, 3));
    }

    #[test]
    fn zero_diagonal_forms() {
        assert_eq!(form_signature(&int_matrix(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1));
        assert_eq!(
            form_signature(&int_matrix(&[&[0, 0, 1], &[0, 0, 2], &[1, 2, 0]])),
            Err(Error::SingularForm)
        );
        assert_eq!(
            form_signature(&int_matrix(&[&[1, 0, 0], &[0, 0, 3], &[0, 3, 0]])).unwrap(),
            (2, 1)
        );
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_invariant(&st(5, &[(2, 2)])).unwrap().legendre, -1);
        assert_eq!(alpha_invariant(&st(5, &[(2, 2)])).unwrap().unit_rep, b(2));
        assert_eq!(alpha_invariant(&st(5, &[(2, 1), (2, 1)])).unwrap().legendre, 1);
        assert_eq!(alpha_invariant(&st(7, &[(1, 1); 3])).unwrap().legendre, 1);
        assert_eq!(alpha_invariant(&st(3, &[(2, 3)])).unwrap().legendre, -1);
        assert_eq!(alpha_invariant(&st(2, &[(1, 2)])), Err(Error::InvalidPrime(b(2))));
        assert_eq!(alpha_invariant(&st(3, &[(3, 1)])), Err(Error::WildRamification(b(3))));
    }

    #[test]
    fn homogeneity() {
        assert!(is_epsilon_split_homogeneous(&st(5, &[(2, 2)])));
        assert!(is_epsilon_split_homogeneous(&st(5, &[(2, 1), (2, 1)])));
        assert!(!is_epsilon_split_homogeneous(&st(5, &[(2, 1), (1, 1), (1, 1)])));
    }

    #[test]
    fn gamma_from_synthetic_splittings() {
        let passing = st(3, &[(2, 3)]);
        let failing = st(107, &[(1, 2), (2, 1), (2, 1)]);
        let c = classify_splittings(6, [&passing, &failing]);
        assert!(c.is_gamma);
        assert_eq!(c.exceptional, Some(b(107)));

        // a second failing prime breaks the classification
        let other = st(5, &[(2, 1), (2, 1), (1, 2)]);
        let c = classify_splittings(6, [&passing, &failing, &other]);
        assert!(!c.is_gamma);
        assert_eq!(c.exceptional, None);
        assert_eq!(c.failing_primes(), vec![b(5), b(107)]);

        // wild at 2 disqualifies, but 2 never gets bullets
        let c = classify_splittings(6, [&passing, &st(2, &[(2, 3)])]);
        assert!(!c.is_tame && !c.is_gamma);
        assert!(!c.per_prime.contains_key(&b(2)));

        let klein = [st(5, &[(2, 2)]), st(13, &[(2, 2)]), st(17, &[(2, 1), (2, 1)])];
        assert!(!classify_splittings(4, &klein).is_gamma);
    }

    #[test]
    fn flipping_a_bullet_on_a_second_prime_breaks_gamma() {
        let n = 6;
        let ok = [st(5, &[(2, 3)]), st(7, &[(2, 3)]), st(11, &[(2, 3)])];
        assert!(classify_splittings(n, &ok).is_gamma);
        let variants: [&[(u32, u32)]; 3] = [
            &[(2, 1), (1, 2), (1, 2)], // not homogeneous
            &[(2, 2), (2, 1)],         // g even
            &[(3, 1), (3, 1)],         // n/e even
        ];
        for v in variants {
            let one = [st(5, v), st(7, &[(2, 3)]), st(11, &[(2, 3)])];
            let c = classify_splittings(n, &one);
            assert!(c.is_gamma, "{v:?}");
            let two = [st(5, v), st(7, v), st(11, &[(2, 3)])];
            assert!(!classify_splittings(n, &two).is_gamma, "{v:?}");
        }
    }

    #[test]
    fn lemma_classes() {
        assert_eq!(lemma_square_class(6, 3, &b(3)).unwrap().legendre, -1);
        assert_eq!(lemma_square_class(3, 2, &b(7)).unwrap().legendre, -1);
        assert_eq!(lemma_square_class(4, 2, &b(5)).unwrap().legendre, -1);
        assert_eq!(lemma_square_class(4, 3, &b(59)).unwrap().legendre, 1);
        assert!(matches!(lemma_square_class(4, 0, &b(5)), Err(Error::OutOfDomain(_))));
        assert!(matches!(lemma_square_class(4, 4, &b(5)), Err(Error::OutOfDomain(_))));
        assert!(matches!(lemma_square_class(5, 4, &b(5)), Err(Error::OutOfDomain(_))));
    }
}
