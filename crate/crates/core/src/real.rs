//! Scalar abstraction for the numerical kernels.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating-point scalar the whole library is generic over.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand conversion from an `f64` literal or intermediate.
#[inline]
pub fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("f64 -> Real conversion")
}

/// Conversion from an integer count.
#[inline]
pub fn real_of_count<F: Real>(n: u64) -> F {
    // Counts beyond 2^53 do not occur: lattice materialization is capped far
    // below, and the closed forms take site counts as f64-exact integers.
    real(n as f64)
}
