//! Integer primality, factorization and quadratic residuosity.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 100_000;
const RHO_BUDGET: u64 = 1 << 24;
const MR_BASES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Signed prime factorization of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    pub sign: i8,
    pub factors: BTreeMap<BigInt, u32>,
}

impl PrimeFactorization {
    pub fn value(&self) -> BigInt {
        let mut v: BigInt = self
            .factors
            .iter()
            .map(|(p, &e)| num_traits::pow(p.clone(), e as usize))
            .product();
        if self.sign < 0 {
            v = -v;
        }
        v
    }

    pub fn valuation(&self, p: &BigInt) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.keys()
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.sign < 0 {
            parts.push("-1".into());
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" * "))
    }
}

fn mulmod64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod64(acc, b, m);
        }
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES[..12] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // the first twelve prime bases are deterministic below 3.3e24
    'outer: for &a in &MR_BASES[..12] {
        let mut x = powmod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with fixed bases. Exact below 3.3e24; beyond that it is a
/// deterministic strong probable-prime test on twenty bases.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    for &q in &MR_BASES {
        if (n % q).is_zero() {
            return false;
        }
    }
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho on a word-sized odd composite.
fn rho_u64(n: u64) -> Option<u64> {
    for c in 1..64u64 {
        let f = |x: u64| (mulmod64(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let m = 128u64;
        let mut g = 1;
        let mut x = y;
        let mut ys = y;
        let mut iters = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod64(q, x.abs_diff(y), n);
                }
                g = gcd64(q, n);
                k += m;
            }
            r *= 2;
            iters += r;
            if iters > RHO_BUDGET {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigInt) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1..16u32 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let m = 128u64;
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iters = 0u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            iters += r;
            if iters > RHO_BUDGET {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn split_cofactor(n: BigInt, out: &mut BTreeMap<BigInt, u32>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    let d = match n.to_u64() {
        Some(v) => rho_u64(v).map(BigInt::from),
        None => rho_big(&n),
    };
    let d = d.ok_or_else(|| Error::FactorizationBudget(n.clone()))?;
    let other = &n / &d;
    split_cofactor(d, out)?;
    split_cofactor(other, out)
}

/// Complete factorization: trial division to 10^5, then Pollard rho.
pub fn factor_integer(n: &BigInt) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::Degenerate("cannot factor zero".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors = BTreeMap::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            factors.insert(bd, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let mut rest = BTreeMap::new();
        if m <= BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) {
            // no factor below the trial bound, so m is prime
            rest.insert(m, 1);
        } else {
            split_cofactor(m, &mut rest)?;
        }
        for (p, e) in rest {
            *factors.entry(p).or_insert(0) += e;
        }
    }
    Ok(PrimeFactorization { sign, factors })
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

fn require_odd_prime(p: &BigInt) -> Result<()> {
    if p == &BigInt::from(2) || !is_prime(p) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    Ok(())
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let s = a.trailing_zeros().unwrap_or(0);
        a >>= s;
        let r8 = (&n % 8u32).to_u32().unwrap();
        if s % 2 == 1 && (r8 == 3 || r8 == 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    require_odd_prime(p)?;
    Ok(jacobi(a, p))
}

/// Least `u` in `1..p` with `(u/p) = -1`.
pub fn smallest_nonresidue(p: &BigInt) -> Result<BigInt> {
    require_odd_prime(p)?;
    let mut u = BigInt::from(2);
    while jacobi(&u, p) != -1 {
        u += 1;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_factorizations() {
        let f = factor_integer(&b(12)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, BTreeMap::from([(b(2), 2), (b(3), 1)]));
        assert_eq!(f.to_string(), "2^2 * 3");
        let f = factor_integer(&b(1221025)).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(b(5), 2), (b(13), 2), (b(17), 2)]));
        let f = factor_integer(&b(-309123)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, BTreeMap::from([(b(3), 3), (b(107), 2)]));
        assert_eq!(factor_integer(&b(1)).unwrap().factors.len(), 0);
        assert!(matches!(factor_integer(&b(0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn rho_splits_products_of_large_primes() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let r = BigInt::from(1_000_000_009u64);
        let n = &p * &q * &r * 4;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.valuation(&p), 1);
        assert_eq!(f.valuation(&b(2)), 2);
        assert_eq!(f.factors.len(), 4);
    }

    #[test]
    fn primality() {
        let primes = [2, 3, 5, 59, 107, 32009, 1_000_000_007];
        for p in primes {
            assert!(is_prime(&b(p)), "{p}");
        }
        for c in [0, 1, 4, 561, 1105, 3215031751] {
            assert!(!is_prime(&b(c)), "{c}");
        }
        // 2^89 - 1 is a Mersenne prime
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * 3)));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&b(2), &b(5)).unwrap(), -1);
        assert_eq!(legendre(&b(4), &b(5)).unwrap(), 1);
        assert_eq!(legendre(&b(2), &b(3)).unwrap(), -1);
        assert_eq!(legendre(&b(10), &b(5)).unwrap(), 0);
        assert_eq!(legendre(&b(-1), &b(7)).unwrap(), -1);
        assert!(matches!(legendre(&b(1), &b(2)), Err(Error::InvalidPrime(_))));
        assert!(matches!(legendre(&b(1), &b(9)), Err(Error::InvalidPrime(_))));
    }

    #[test]
    fn nonresidues() {
        assert_eq!(smallest_nonresidue(&b(3)).unwrap(), b(2));
        assert_eq!(smallest_nonresidue(&b(7)).unwrap(), b(3));
        assert_eq!(smallest_nonresidue(&b(17)).unwrap(), b(3));
        assert!(smallest_nonresidue(&b(2)).is_err());
    }

    #[test]
    fn legendre_agrees_with_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 101, 107] {
            for a in -20..40 {
                let e = b(a).mod_floor(&b(p)).modpow(&b((p - 1) / 2), &b(p));
                let expect = if e.is_zero() {
                    0
                } else if e.is_one() {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(&b(a), &b(p)).unwrap(), expect, "({a}/{p})");
            }
        }
    }
}
