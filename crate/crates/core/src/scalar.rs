//! Real scalar abstraction shared by every numeric routine in the crate.
//!
//! All transforms are written against [`Real`] and operate on
//! `Complex<T>` values. `f64` is the reference precision; `f32` is supported
//! with tolerances scaled to its epsilon.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point type usable as the real part of signal values.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance for exact algebraic identities (unitarity, homomorphism).
    const ALGEBRA_TOL: f64;
    /// Tolerance for orthogonality sums accumulated over the whole group.
    const STATISTICAL_TOL: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const ALGEBRA_TOL: f64 = 1e-10;
    const STATISTICAL_TOL: f64 = 1e-8;
}

impl Real for f32 {
    const ALGEBRA_TOL: f64 = 1e-4;
    const STATISTICAL_TOL: f64 = 1e-3;
}

/// `e^{i 2π p / q}` evaluated with the numerator reduced modulo `q` first.
///
/// Reducing before scaling keeps large integer products exact.
#[inline]
pub fn root_of_unity<T: Real>(p: i64, q: usize) -> Complex<T> {
    let q_i = q as i64;
    let r = p.rem_euclid(q_i);
    let theta = T::TAU() * T::from_i64(r).unwrap() / T::from_usize_lossy(q);
    Complex::new(theta.cos(), theta.sin())
}

/// `e^{i θ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

#[inline]
pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
