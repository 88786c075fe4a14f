//! Scalar traits shared by the generic polynomial and matrix kernels.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A commutative ring with identity that the dense kernels can compute over.
///
/// Division (`/`) is only ever used where the quotient is known to be exact,
/// so integer types such as `BigInt` or `i64` qualify alongside fields.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug {}

impl<T> Scalar for T where T: Num + Clone + Neg<Output = T> + Debug {}

/// Marker for scalars whose `/` is true field division.
pub trait Field: Scalar {}

impl Field for f32 {}
impl Field for f64 {}
impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug,
    Ratio<T>: Scalar,
{
}
