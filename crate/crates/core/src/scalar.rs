//! Scalar abstraction: the geometry and spectral numerics are generic over the
//! floating-point type, so the same code runs in `f32` and `f64`.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar accepted by the generic numerics (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Default + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling an `f64` constant (tolerances, tabulated nodes) into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in the scalar type")
}
