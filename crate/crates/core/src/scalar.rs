//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar (`f32` or `f64`).
///
/// All solvers are written against this trait; the concrete aliases at the
/// crate root pin it to `f64`, which is what the tolerances in
/// [`Tolerances::default`](crate::Tolerances) are tuned for.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only for values the type cannot hold.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    /// Lossy conversion used for diagnostics and serialization.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Threshold above which shooting states are rescaled.
    #[inline]
    fn rescale_threshold() -> Self {
        Self::max_value().sqrt()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Geometric mean of two positive numbers.
#[inline]
pub(crate) fn geometric_mid<T: Real>(lo: T, hi: T) -> T {
    (lo * hi).sqrt()
}
