//! Scalar abstraction shared by the density-matrix, quadrature and discord code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
///
/// Tolerances throughout the crate are written for `f64`. [`Real::tol`] maps
/// such a value onto the type, flooring it at a few hundred ulps so that `f32`
/// computations are checked against something they can actually meet.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Smallest tolerance this type can honour.
    const TOL_FLOOR: f64;

    fn tol(value: f64) -> Self {
        Self::lit(value.max(Self::TOL_FLOOR))
    }

    /// Converts an `f64` literal. Infallible for the implementing types.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const TOL_FLOOR: f64 = 0.0;
}

impl Real for f32 {
    const TOL_FLOOR: f64 = 1e-5;
}
