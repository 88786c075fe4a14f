//! Polynomials over F_p for primes beyond the word-size fast path. Only the
//! factorization shape is computed: squarefree decomposition followed by
//! distinct-degree factorization, which already determines the degree of
//! every irreducible factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BigFpPoly {
    c: Vec<BigInt>,
}

struct Ctx<'a> {
    p: &'a BigInt,
}

impl BigFpPoly {
    fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
}

impl Ctx<'_> {
    fn poly(&self, mut c: Vec<BigInt>) -> BigFpPoly {
        for x in c.iter_mut() {
            *x = x.mod_floor(self.p);
        }
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        BigFpPoly { c }
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        // p prime, so a^(p-2) is the inverse
        a.modpow(&(self.p - BigInt::from(2)), self.p)
    }

    fn sub(&self, a: &BigFpPoly, b: &BigFpPoly) -> BigFpPoly {
        let n = a.c.len().max(b.c.len());
        let z = BigInt::zero();
        self.poly((0..n).map(|i| a.c.get(i).unwrap_or(&z) - b.c.get(i).unwrap_or(&z)).collect())
    }

    fn mul(&self, a: &BigFpPoly, b: &BigFpPoly) -> BigFpPoly {
        if a.c.is_empty() || b.c.is_empty() {
            return BigFpPoly { c: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            for (j, y) in b.c.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.poly(out)
    }

    fn monic(&self, a: &BigFpPoly) -> BigFpPoly {
        match a.c.last() {
            None => a.clone(),
            Some(l) => {
                let li = self.inv(l);
                self.poly(a.c.iter().map(|x| x * &li).collect())
            }
        }
    }

    fn div_rem(&self, a: &BigFpPoly, b: &BigFpPoly) -> (BigFpPoly, BigFpPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let li = self.inv(&b.c[db]);
        let mut r = a.c.clone();
        let mut q = vec![BigInt::zero(); a.c.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let t = (r.last().unwrap() * &li).mod_floor(self.p);
            for (i, y) in b.c.iter().enumerate() {
                r[k + i] = (&r[k + i] - &t * y).mod_floor(self.p);
            }
            q[k] = t;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        (self.poly(q), self.poly(r))
    }

    fn rem(&self, a: &BigFpPoly, b: &BigFpPoly) -> BigFpPoly {
        self.div_rem(a, b).1
    }

    fn gcd(&self, a: &BigFpPoly, b: &BigFpPoly) -> BigFpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.c.is_empty() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        self.monic(&a)
    }

    fn derivative(&self, a: &BigFpPoly) -> BigFpPoly {
        self.poly(a.c.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect())
    }

    fn pow_mod(&self, a: &BigFpPoly, e: &BigInt, m: &BigFpPoly) -> BigFpPoly {
        let mut acc = self.rem(&self.poly(vec![BigInt::one()]), m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// Yun's algorithm; valid because `p` exceeds the degree.
    fn squarefree(&self, f: &BigFpPoly) -> Vec<(BigFpPoly, u32)> {
        let mut out = Vec::new();
        let mut c = self.gcd(f, &self.derivative(f));
        let mut w = self.div_rem(f, &c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((self.monic(&z), i));
            }
            i += 1;
            c = self.div_rem(&c, &y).0;
            w = y;
        }
        out
    }

    /// `(count, degree)` blocks of the irreducible factors of a squarefree
    /// monic polynomial.
    fn distinct_degree(&self, f: &BigFpPoly) -> Vec<(usize, usize)> {
        let x = self.poly(vec![BigInt::zero(), BigInt::one()]);
        let mut out = Vec::new();
        let mut g = f.clone();
        let mut h = self.rem(&x, &g);
        let mut d = 1;
        while let Some(dg) = g.degree().filter(|&dg| dg > 0) {
            if 2 * d > dg {
                out.push((1, dg));
                break;
            }
            h = self.pow_mod(&h, self.p, &g);
            let t = self.gcd(&self.sub(&h, &x), &g);
            let dt = t.degree().unwrap_or(0);
            if dt > 0 {
                out.push((dt / d, d));
                g = self.div_rem(&g, &t).0;
                h = self.rem(&h, &g);
            }
            d += 1;
        }
        out
    }
}

/// `(multiplicity, degree)` of every irreducible factor of `f mod p`, sorted.
/// Requires `p` prime and larger than the degree of `f`.
pub fn factor_shape_mod_p(f: &IntPoly, p: &BigInt) -> Result<Vec<(u32, u32)>> {
    let ctx = Ctx { p };
    let fp = ctx.poly(f.coeffs().to_vec());
    let n = f.degree().unwrap_or(0);
    if BigInt::from(n) >= *p {
        return Err(Error::Internal(format!("{p} does not exceed the degree")));
    }
    if fp.degree() != Some(n) {
        return Err(Error::Degenerate(format!("leading coefficient vanishes mod {p}")));
    }
    let mut shape = Vec::new();
    for (g, e) in ctx.squarefree(&ctx.monic(&fp)) {
        for (count, d) in ctx.distinct_degree(&g) {
            shape.extend(std::iter::repeat_n((e, d as u32), count));
        }
    }
    shape.sort_unstable();
    Ok(shape)
}
