//! Dense univariate polynomials over a generic scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Scalar};

/// A polynomial stored lowest degree first, with no trailing zeros.
///
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_exact_scalar(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let lb = b.lead().unwrap().clone();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return r;
        };
        if da < db {
            return r.scale(&lb);
        }
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().unwrap().clone();
            let shift = dr - db;
            let mut c: Vec<T> = r.coeffs.iter().map(|a| a.clone() * lb.clone()).collect();
            for (i, bc) in b.coeffs.iter().enumerate() {
                c[i + shift] = c[i + shift].clone() - lr.clone() * bc.clone();
            }
            r = Poly::new(c);
            steps -= 1;
        }
        let mut factor = T::one();
        for _ in 0..steps {
            factor = factor * lb.clone();
        }
        r.scale(&factor)
    }

    /// Exact quotient when `b` divides `self` and `lc(b)` divides each step.
    /// Returns `None` when the division leaves a remainder.
    pub fn div_exact(&self, b: &Self) -> Option<Self>
    where
        T: PartialEq,
    {
        let db = b.degree()?;
        let lb = b.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Some(Poly::zero());
        };
        if da < db {
            return None;
        }
        let mut q = vec![T::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = r[i + db].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.clone() / lb.clone();
            if c.clone() * lb.clone() != top {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * bc.clone();
            }
            q[i] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = T::one() / b.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if da < db {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![T::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let c = r[i + db].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * bc.clone();
            }
            q[i] = c;
        }
        r.truncate(db);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Resultant by the subresultant PRS; only exact divisions are performed,
/// so any integral domain works.
pub fn resultant<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> T {
    if a.is_zero() || b.is_zero() {
        return T::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_neg = false;
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = true;
        }
    }
    if b.degree() == Some(0) {
        let r = pow_scalar(b.lead().unwrap(), a.degree().unwrap());
        return if sign_neg { -r } else { r };
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = g.clone() * pow_scalar(&h, delta);
        b = r.div_exact_scalar(&denom);
        g = a.lead().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            pow_scalar(&g, delta) / pow_scalar(&h, delta - 1)
        };
        match b.degree() {
            None => return T::zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap();
    let lb = b.lead().unwrap().clone();
    let r = if da == 0 {
        T::one()
    } else {
        pow_scalar(&lb, da) / pow_scalar(&h, da - 1)
    };
    if sign_neg {
        -r
    } else {
        r
    }
}

pub(crate) fn pow_scalar<T: Scalar>(x: &T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`; `None` for constants.
pub fn discriminant<T: Scalar>(f: &Poly<T>) -> Option<T> {
    let n = f.degree()?;
    if n == 0 {
        return None;
    }
    let r = resultant(f, &f.derivative()) / f.lead().unwrap().clone();
    Some(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

impl Poly<BigInt> {
    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clears denominators of a rational polynomial and returns its primitive part.
    pub fn from_rational_primitive(p: &Poly<BigRational>) -> Self {
        let l = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        p.map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .primitive_part()
    }

    /// `self mod m` for a monic modulus, staying in integer coefficients.
    pub fn rem_monic(&self, m: &Self) -> Self {
        debug_assert!(m.is_monic());
        let dm = m.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dm {
            return self.clone();
        }
        for i in (dm..r.len()).rev() {
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dm {
                r[i - dm + j] -= &c * &m.coeffs[j];
            }
        }
        r.truncate(dm);
        Poly::new(r)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl<T: Scalar + fmt::Display + Signed> fmt::Display for Poly<T> {
    /// Renders as e.g. `x^4 - 41*x^2 + 144`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}*x^{k}")?,
            }
        }
        Ok(())
    }
}
