//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use rustfft::FftNum;

/// Floating point scalar the kernels are generic over (`f32` or `f64`).
///
/// The associated tolerances are the per-precision defaults used for the
/// structural checks (hermiticity, zero band for `sign`). Everything else is
/// passed in explicitly.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + FftNum
    + Default
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Relative symmetry residual accepted for a hermitian input.
    const HERMITIAN_TOL: f64;
    /// Relative width of the band treated as a zero eigenvalue.
    const ZERO_BAND: f64;
    /// Absolute tolerance for "this diagonal is constant".
    const DIAGONAL_TOL: f64;

    /// Converts an `f64` literal into this precision.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }
}

impl Real for f64 {
    const HERMITIAN_TOL: f64 = 1e-12;
    const ZERO_BAND: f64 = 1e-10;
    const DIAGONAL_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const HERMITIAN_TOL: f64 = 1e-5;
    const ZERO_BAND: f64 = 1e-5;
    const DIAGONAL_TOL: f64 = 1e-4;
}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn czero<T: Real>() -> C<T> {
    C::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> C<T> {
    C::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Real>(x: T) -> C<T> {
    C::new(x, T::zero())
}
