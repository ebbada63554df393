//! Error-free transformations and unevaluated sums `hi + lo` for computing a
//! few quantities to about twice the working precision.

use crate::scalar::Scalar;

/// `a + b = s + e` exactly.
#[inline]
pub(crate) fn two_sum<T: Scalar>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `a·b = p + e` exactly.
#[inline]
pub(crate) fn two_prod<T: Scalar>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Scalar> Dd<T> {
    pub fn new(hi: T, lo: T) -> Self {
        let (hi, e) = two_sum(hi, lo);
        Dd { hi, lo: e }
    }

    pub fn of(x: T) -> Self {
        Dd { hi: x, lo: T::zero() }
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        Dd::new(s, e + self.lo + o.lo)
    }

    pub fn scale(self, k: T) -> Self {
        let (p, e) = two_prod(self.hi, k);
        Dd::new(p, e + self.lo * k)
    }

    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::new(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

/// `Σ (hi_j + lo_j)·x_j` with a compensated sum; the `x_j` are exact.
pub(crate) fn dot_split<T: Scalar>(hi: &[T; 3], lo: &[T; 3], x: &[T; 3]) -> T {
    let mut acc = Dd::of(T::zero());
    for j in 0..3 {
        acc = acc.add(Dd::new(hi[j], lo[j]).scale(x[j]));
    }
    acc.hi + acc.lo
}
