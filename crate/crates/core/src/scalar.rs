//! Numeric traits the generic parts of the crate are written against.
//!
//! Refinement itself is combinatorial (colors are integers). Real numbers
//! appear in three places: k-means over neighbor-count vectors, kernel
//! matrices, and edit costs. The first two need a floating point type, the
//! last one only needs exact arithmetic and an order, so rational costs work
//! as well.

use std::fmt::Debug;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Default + Send + Sync + 'static
{
    /// Lossless-enough conversion from an exact count.
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count representable as float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Cost scalar for edit operations. Only ring operations and a total-enough
/// order are needed, so `f32`, `f64`, integers and `num_rational::Ratio`
/// all qualify.
pub trait Cost: Num + Copy + PartialOrd + Debug + Send + Sync {}

impl<T> Cost for T where T: Num + Copy + PartialOrd + Debug + Send + Sync {}
