//! Floating-point scalar abstraction.
//!
//! Every numerical routine in the crate is written against [`Scalar`], so the
//! same code runs in `f32` or `f64`. The tolerances quoted throughout the
//! documentation assume `f64`; `f32` instantiations compile and run but will
//! not meet them.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point type usable by the numerical core.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Exact for `f64`, rounded for `f32`.
    fn lit(x: f64) -> Self;

    /// Converts an integer.
    fn of_i64(n: i64) -> Self;

    /// Widens to `f64` for reporting.
    fn to_f64_lossy(self) -> f64;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn of_i64(n: i64) -> Self {
                n as $t
            }

            #[inline]
            fn to_f64_lossy(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// Complex number over a [`Scalar`].
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Scalar>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn real<T: Scalar>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}
