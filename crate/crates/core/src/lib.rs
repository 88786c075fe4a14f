//! Number-field invariants of integral trace forms.
//!
//! Given a monic irreducible integer polynomial this crate computes the ring
//! of integers, the discriminant and signature, the splitting type of every
//! ramified prime, the integral trace form, the alpha-invariants and the
//! Gamma-field classification, and decides spinor-genus equality of two
//! integral trace forms.
//!
//! The polynomial and matrix kernels are generic over a [`Scalar`] ring; the
//! aliases below fix the exact integer and rational instances used by the
//! number-field code.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod genus;
pub mod invariants;
pub mod order;
pub mod scalar;
pub mod splitting;

pub use analysis::{analyze, verify_lemma, FieldAnalysis};
pub use error::{Error, Result};
pub use scalar::{Field, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type IntPoly = algebra::Poly<BigInt>;
pub type RatPoly = algebra::Poly<BigRational>;
pub type IntMatrix = algebra::Matrix<BigInt>;
pub type RatMatrix = algebra::Matrix<BigRational>;
