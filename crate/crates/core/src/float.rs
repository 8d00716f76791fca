//! Scalar abstraction: the simulator is generic over the real floating-point
//! type carrying amplitudes (f32 or f64).

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real scalar backing all amplitudes. Implemented for `f32` and `f64`.
pub trait Real:
    Float + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Convert an `f64` constant into `T`.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in scalar type")
}

/// Complex zero.
#[inline]
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Complex one.
#[inline]
pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Real constant lifted into the complex plane.
#[inline]
pub fn creal<T: Real>(x: f64) -> Complex<T> {
    Complex::new(real(x), T::zero())
}

/// Tolerance for algebraic identities (1e-12 for f64, scaled up by machine
/// epsilon for narrower scalars).
pub fn tol_algebraic<T: Real>() -> T {
    real::<T>(1e-12).max(T::epsilon() * real(64.0))
}

/// Tolerance for composed circuits (1e-10 for f64, epsilon-scaled otherwise).
pub fn tol_circuit<T: Real>() -> T {
    real::<T>(1e-10).max(T::epsilon() * real(512.0))
}

/// Bond-classification threshold: fidelity with a Bell state must exceed
/// `1 - tol` to be declared that bond.
pub fn bond_tolerance<T: Real>() -> T {
    real::<T>(1e-9).max(T::epsilon() * real(64.0))
}
