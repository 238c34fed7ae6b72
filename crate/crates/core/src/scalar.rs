//! Floating point abstraction for scoring.

use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating point type used for scores and smoothing parameters: `f32` or `f64`.
pub trait Real:
    num_traits::Float + num_traits::FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion from a count.
    fn from_count(n: u64) -> Self {
        <Self as num_traits::FromPrimitive>::from_u64(n).expect("counts are representable")
    }

    fn from_f64_lossy(x: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(x).expect("finite f64 converts")
    }
}

impl Real for f32 {}
impl Real for f64 {}
