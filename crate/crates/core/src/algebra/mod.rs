//! Exact arithmetic kernels: polynomials over Z, Q and F_p, integer
//! factorization, quadratic residues, and integer matrix normal forms.

pub mod bigfp;
pub mod fp;
pub mod fpfactor;
pub mod fpmat;
pub mod integer;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod sturm;
pub mod zfactor;

pub use fp::FpPoly;
pub use fpfactor::factor_mod_p;
pub use integer::{factor_integer, is_prime, legendre, smallest_nonresidue, PrimeFactorization};
pub use matrix::{hnf, Matrix};
pub use parse::parse_poly;
pub use poly::{discriminant, resultant, Poly};
pub use sturm::sturm_count_real_roots;
pub use zfactor::{factor_over_z, ZFactorization};

use num_bigint::BigInt;

/// Discriminant of an integer polynomial; errors on constants.
pub fn poly_discriminant(f: &Poly<BigInt>) -> crate::Result<BigInt> {
    discriminant(f).ok_or_else(|| crate::Error::Degenerate("constant polynomial".into()))
}
