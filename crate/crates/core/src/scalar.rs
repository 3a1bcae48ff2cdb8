//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the kinematic and synthesis routines are generic over.
///
/// Tolerances are expressed relative to the link length and depend on the
/// precision of the underlying type.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Distance (in link lengths) below which a configuration counts as singular.
    const SINGULAR_TOL: f64;
    /// Admissible residual (in link lengths) of the closure equations.
    const RESIDUAL_TOL: f64;

    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("constant representable in the scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const SINGULAR_TOL: f64 = 1e-8;
    const RESIDUAL_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const SINGULAR_TOL: f64 = 1e-4;
    const RESIDUAL_TOL: f64 = 1e-4;
}

/// `sqrt(3/2)`, the joint coordinate of the flat singularity on the Q-axis of the unit manipulator.
#[inline]
pub fn sqrt_three_halves<T: Real>() -> T {
    T::lit(1.5).sqrt()
}
