//! Orders in a number field `Q[x]/(f)` and computation of the maximal order.
//!
//! An order is stored as a lower-triangular Hermite basis over the power
//! basis `1, θ, ..., θ^(n-1)`: row `i` holds the numerators of the `i`-th
//! basis element and `denom` is the common denominator. Row 0 is always the
//! element 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::fp::{self, FpPoly};
use crate::algebra::fpfactor::factor_fp;
use crate::algebra::fpmat;
use crate::algebra::integer::{factor_integer, is_prime, valuation, PrimeFactorization};
use crate::algebra::matrix::{content, in_lower_lattice, lower_hnf};
use crate::algebra::poly::discriminant;
use crate::algebra::zfactor::factor_over_z;
use crate::error::{Error, Result};
use crate::{IntMatrix, IntPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    poly: IntPoly,
    basis: IntMatrix,
    denom: BigInt,
    disc: BigInt,
}

impl Order {
    /// `Z[θ]`.
    pub fn equation_order(f: &IntPoly) -> Result<Order> {
        let n = f.degree().ok_or_else(|| Error::Degenerate("zero polynomial".into()))?;
        let disc = discriminant(f).ok_or_else(|| Error::Degenerate("constant polynomial".into()))?;
        Ok(Order {
            poly: f.clone(),
            basis: IntMatrix::identity(n),
            denom: BigInt::one(),
            disc,
        })
    }

    /// Order spanned by `gens / denom`; the rows must span a full-rank lattice.
    /// The result is brought to canonical form.
    pub fn from_generators(f: &IntPoly, gens: &IntMatrix, denom: &BigInt) -> Result<Order> {
        let h = lower_hnf(gens)?;
        let g = content(&h).gcd(denom);
        let basis = h.map(|x| x / &g);
        let denom = denom / &g;
        let n = basis.nrows();
        let poly_disc = discriminant(f).ok_or_else(|| Error::Degenerate("constant polynomial".into()))?;
        let det: BigInt = (0..n).map(|i| basis[(i, i)].clone()).product();
        let dn = num_traits::pow(denom.clone(), n);
        let (index, r) = dn.div_rem(&det);
        if !r.is_zero() {
            return Err(Error::Internal("lattice does not contain the equation order".into()));
        }
        let (disc, r) = poly_disc.div_rem(&(&index * &index));
        if !r.is_zero() {
            return Err(Error::Internal("index squared does not divide disc(f)".into()));
        }
        Ok(Order { poly: f.clone(), basis, denom, disc })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.basis.nrows()
    }

    /// Numerators of the basis elements in power-basis coordinates.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `[O : Z[θ]]`.
    pub fn index(&self) -> BigInt {
        let n = self.degree();
        let det: BigInt = (0..n).map(|i| self.basis[(i, i)].clone()).product();
        num_traits::pow(self.denom.clone(), n) / det
    }

    /// Coordinates of `num / den` (power basis) on this order's basis, if integral.
    pub fn coordinates(&self, num: &[BigInt], den: &BigInt) -> Option<Vec<BigInt>> {
        // c * basis / denom = num / den  <=>  c * basis = num * denom / den
        let scaled: Option<Vec<BigInt>> = num
            .iter()
            .map(|x| {
                let (q, r) = (x * &self.denom).div_rem(den);
                r.is_zero().then_some(q)
            })
            .collect();
        in_lower_lattice(&self.basis, &scaled?)
    }

    pub fn contains(&self, num: &[BigInt], den: &BigInt) -> bool {
        self.coordinates(num, den).is_some()
    }

    /// Numerators of `ω_i ω_j` over `denom^2`.
    fn product_numerators(&self, i: usize, j: usize) -> Vec<BigInt> {
        let a = IntPoly::new(self.basis.row(i).to_vec());
        let b = IntPoly::new(self.basis.row(j).to_vec());
        let prod = (&a * &b).rem_monic(&self.poly);
        let n = self.degree();
        (0..n).map(|k| prod.coeff(k)).collect()
    }

    /// Structure constants: `ω_i ω_j = Σ_k T[(i*n + j)*n + k] ω_k`.
    /// Errors if the lattice is not closed under multiplication.
    pub fn mult_table(&self) -> Result<Vec<BigInt>> {
        let n = self.degree();
        let d2 = &self.denom * &self.denom;
        let mut table = vec![BigInt::zero(); n * n * n];
        for i in 0..n {
            for j in i..n {
                let num = self.product_numerators(i, j);
                let c = self
                    .coordinates(&num, &d2)
                    .ok_or_else(|| Error::Internal(format!("basis product ({i},{j}) leaves the order")))?;
                for k in 0..n {
                    table[(i * n + j) * n + k] = c[k].clone();
                    table[(j * n + i) * n + k] = c[k].clone();
                }
            }
        }
        Ok(table)
    }

    /// Whether the lattice is a ring (closed under products of basis elements).
    pub fn is_ring(&self) -> bool {
        self.mult_table().is_ok()
    }
}

/// Product of two elements given by coordinates, using integer structure constants.
pub fn mul_coords(table: &[BigInt], n: usize, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b[j].is_zero() {
                continue;
            }
            let ab = &a[i] * &b[j];
            let base = (i * n + j) * n;
            for (k, o) in out.iter_mut().enumerate() {
                let t = &table[base + k];
                if !t.is_zero() {
                    *o += &ab * t;
                }
            }
        }
    }
    out
}

/// Structure constants of `O/pO`.
pub fn reduce_table(table: &[BigInt], p: u64) -> Vec<u64> {
    table.iter().map(|t| fp::reduce_big(t, p)).collect()
}

/// Product in `O/pO` on coordinate vectors.
pub fn mul_mod(table: &[u64], n: usize, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] == 0 {
                continue;
            }
            let ab = fp::mul(a[i], b[j], p);
            let base = (i * n + j) * n;
            for (k, o) in out.iter_mut().enumerate() {
                let t = table[base + k];
                if t != 0 {
                    *o = fp::add(*o, fp::mul(ab, t, p), p);
                }
            }
        }
    }
    out
}

/// `x^e` in `O/pO`; `one` is the coordinate vector of 1.
pub fn pow_mod(table: &[u64], n: usize, x: &[u64], mut e: u128, one: &[u64], p: u64) -> Vec<u64> {
    let mut acc = one.to_vec();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(table, n, &acc, &base, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(table, n, &base, &base, p);
        }
    }
    acc
}

/// Smallest power `p^k` with `p^k >= n`.
pub fn frobenius_exponent(p: u64, n: usize) -> u128 {
    let mut q = p as u128;
    while q < n as u128 {
        q *= p as u128;
    }
    q
}

/// Basis (coordinates mod p) of the nilradical of `O/pO`: the kernel of `x -> x^q`
/// with `q = p^k >= n`.
pub fn radical_mod_p(table: &[u64], n: usize, p: u64) -> Vec<Vec<u64>> {
    let q = frobenius_exponent(p, n);
    let one = unit_vector(n, 0);
    let images: Vec<Vec<u64>> = (0..n)
        .map(|i| pow_mod(table, n, &unit_vector(n, i), q, &one, p))
        .collect();
    fpmat::left_kernel(p, &images)
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[i] = 1;
    v
}

/// Outcome of the Dedekind criterion at a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindTest {
    pub p_maximal: bool,
    /// Numerators `h(θ)` (power basis) of elements `h(θ)/p` enlarging `Z[θ]`.
    pub enlargement: Vec<Vec<BigInt>>,
}

fn require_prime(p: &BigInt) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p.clone()));
    }
    fp::word_prime(p)
}

/// Monic, degree at least one, irreducible over Q.
pub fn check_field_poly(f: &IntPoly) -> Result<()> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::Degenerate("polynomial must have positive degree".into()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let z = factor_over_z(f)?;
    if !(z.factors.len() == 1 && z.factors[0].1 == 1) {
        let mut parts: Vec<String> = Vec::new();
        for (g, e) in &z.factors {
            if *e == 1 {
                parts.push(format!("({g})"));
            } else {
                parts.push(format!("({g})^{e}"));
            }
        }
        return Err(Error::Reducible(parts));
    }
    Ok(())
}

pub(crate) fn dedekind_unchecked(f: &IntPoly, p: u64) -> DedekindTest {
    let n = f.degree().unwrap();
    let fbar = FpPoly::from_int_poly(f, p);
    let facs = factor_fp(&fbar);
    let mut g = FpPoly::one(p);
    let mut h = FpPoly::one(p);
    for (gi, ei) in &facs {
        g = g.mul(gi);
        for _ in 1..*ei {
            h = h.mul(gi);
        }
    }
    let big_g = g.to_int_poly();
    let big_h = h.to_int_poly();
    let pb = BigInt::from(p);
    let diff = f - &(&big_g * &big_h);
    let fq = FpPoly::from_int_poly(&diff.div_exact_scalar(&pb), p);
    let u = fq.gcd(&g).gcd(&h);
    let du = u.degree().unwrap_or(0);
    if du == 0 {
        return DedekindTest { p_maximal: true, enlargement: Vec::new() };
    }
    let v = fbar.monic().div_rem(&u).0;
    let enlargement = (0..du)
        .map(|j| {
            let e = v.mul(&FpPoly::new(p, unit_vector(j + 1, j))).to_int_poly();
            (0..n).map(|k| e.coeff(k)).collect()
        })
        .collect();
    DedekindTest { p_maximal: false, enlargement }
}

/// Dedekind's criterion: is `Z[θ]` maximal at `p`?
pub fn dedekind_is_pmaximal(f: &IntPoly, p: &BigInt) -> Result<DedekindTest> {
    let pw = require_prime(p)?;
    check_field_poly(f)?;
    Ok(dedekind_unchecked(f, pw))
}

/// One Round-2 step: the ring of multipliers of the p-radical, or `None`
/// when the order is already p-maximal.
fn enlarge_once(order: &Order, p: u64) -> Result<Option<Order>> {
    let n = order.degree();
    let table = order.mult_table()?;
    let tp = reduce_table(&table, p);
    let rad = radical_mod_p(&tp, n, p);
    let pb = BigInt::from(p);

    // radical ideal I = pO + span(rad), in O-coordinates
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { pb.clone() } else { BigInt::zero() }).collect())
        .collect();
    gens.extend(rad.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
    let ideal = lower_hnf(&IntMatrix::from_rows(gens))?;

    // y in O with y * I ⊆ p I, as the kernel of O/pO -> End(I/pI)
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(n * n);
            let wi: Vec<BigInt> = (0..n).map(|k| BigInt::from(u8::from(k == i))).collect();
            for j in 0..n {
                let prod = mul_coords(&table, n, &wi, ideal.row(j));
                let c = in_lower_lattice(&ideal, &prod).expect("radical is an ideal");
                row.extend(c.iter().map(|x| fp::reduce_big(x, p)));
            }
            row
        })
        .collect();
    let ker = fpmat::left_kernel(p, &rows);
    if ker.is_empty() {
        return Ok(None);
    }
    // O' = O + (1/p) span(ker), expressed over the power basis with denominator p*d
    let basis = order.basis();
    let mut new_gens: Vec<Vec<BigInt>> = basis
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * &pb).collect())
        .collect();
    for y in &ker {
        let yb: Vec<BigInt> = y.iter().map(|&x| BigInt::from(x)).collect();
        new_gens.push(basis.left_mul_vec(&yb));
    }
    let next = Order::from_generators(order.poly(), &IntMatrix::from_rows(new_gens), &(order.denom() * &pb))?;
    Ok(Some(next))
}

fn pmaximalize_from(start: Order, p: u64) -> Result<Order> {
    let mut order = start;
    while let Some(next) = enlarge_once(&order, p)? {
        if next.index() == order.index() {
            return Err(Error::Internal("round-2 step did not enlarge the order".into()));
        }
        order = next;
    }
    Ok(order)
}

/// Round-2 p-maximal order containing `Z[θ]`.
pub fn pmaximalize(f: &IntPoly, p: &BigInt) -> Result<Order> {
    let pw = require_prime(p)?;
    check_field_poly(f)?;
    pmaximalize_from(Order::equation_order(f)?, pw)
}

/// The ring of integers together with its index and factored discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalOrder {
    pub order: Order,
    pub index: BigInt,
    pub disc_factored: PrimeFactorization,
    pub poly_disc: BigInt,
    table: Vec<BigInt>,
}

impl MaximalOrder {
    pub fn degree(&self) -> usize {
        self.order.degree()
    }

    pub fn disc(&self) -> &BigInt {
        self.order.disc()
    }

    /// Integer structure constants of the integral basis.
    pub fn mult_table(&self) -> &[BigInt] {
        &self.table
    }

    pub fn poly(&self) -> &IntPoly {
        self.order.poly()
    }
}

/// The maximal order of `Q[x]/(f)` for monic irreducible `f`.
pub fn maximal_order(f: &IntPoly) -> Result<MaximalOrder> {
    check_field_poly(f)?;
    maximal_order_unchecked(f)
}

pub(crate) fn maximal_order_unchecked(f: &IntPoly) -> Result<MaximalOrder> {
    let n = f.degree().unwrap();
    let eq = Order::equation_order(f)?;
    let poly_disc = eq.disc().clone();
    let fac = factor_integer(&poly_disc)?;

    let mut local: Vec<Order> = Vec::new();
    for (p, &e) in &fac.factors {
        if e < 2 {
            continue;
        }
        let pw = fp::word_prime(p)?;
        if dedekind_unchecked(f, pw).p_maximal {
            continue;
        }
        local.push(pmaximalize_from(eq.clone(), pw)?);
    }
    let order = if local.is_empty() {
        eq
    } else {
        let denom = local.iter().fold(BigInt::one(), |acc, o| acc.lcm(o.denom()));
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..n {
            gens.push((0..n).map(|j| if i == j { denom.clone() } else { BigInt::zero() }).collect());
        }
        for o in &local {
            let s = &denom / o.denom();
            for r in o.basis().to_rows() {
                gens.push(r.into_iter().map(|x| x * &s).collect());
            }
        }
        Order::from_generators(f, &IntMatrix::from_rows(gens), &denom)?
    };
    let index = order.index();
    let mut factors = fac.factors.clone();
    for (p, e) in factors.iter_mut() {
        *e -= 2 * valuation(&index, p);
    }
    factors.retain(|_, e| *e > 0);
    let sign = if order.disc().is_negative() { -1 } else { 1 };
    let disc_factored = PrimeFactorization { sign, factors };
    let table = order.mult_table()?;
    Ok(MaximalOrder { order, index, disc_factored, poly_disc, table })
}
