//! Finite-difference oracle for the decoupled Sturm–Liouville problems.
//!
//! Independent of the shooting route: the second-order equation for `u`
//! (when `P < 0`) or `v` (when `P ≥ 0`) is discretized on `[−T₋, T₊]` with
//! zero Dirichlet data standing in for decay at both ends. A near-kernel of
//! the resulting symmetric tridiagonal matrix would signal a solution
//! decaying at both ends.

use serde::Serialize;

use crate::lattice::ModeCoeff;
use crate::scalar::Scalar;

use super::system::{sl_potential_u, sl_potential_v};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FdEquation {
    /// `−u'' + U u = 0`
    U,
    /// `−v'' + V v = 0`
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdOracle<T> {
    pub equation: FdEquation,
    /// Smallest singular value of the discretized operator.
    pub sigma_min: T,
    pub intervals: usize,
}

/// Smallest singular value of the discretized operator on `[−t_minus, t_plus]`
/// with `intervals` uniform cells.
pub fn fd_oracle<T: Scalar>(c: &ModeCoeff<T>, t_minus: T, t_plus: T, intervals: usize) -> FdOracle<T> {
    let equation = if c.p < T::zero() {
        FdEquation::U
    } else {
        FdEquation::V
    };
    let n = intervals.max(4) - 1;
    let h = (t_plus + t_minus) / T::of_i64(intervals.max(4) as i64);
    let inv_h2 = T::one() / (h * h);
    let diag: Vec<T> = (1..=n)
        .map(|i| {
            let t = -t_minus + h * T::of_i64(i as i64);
            let pot = match equation {
                FdEquation::U => sl_potential_u(c, t),
                FdEquation::V => sl_potential_v(c, t),
            };
            T::lit(2.0) * inv_h2 + pot
        })
        .collect();
    let off = -inv_h2;

    let below = |x: T| sturm_count(&diag, off, x);
    let n_neg = below(T::zero());
    let mut sigma = T::infinity();
    if n_neg > 0 {
        sigma = sigma.min(eigenvalue(&diag, off, n_neg - 1).abs());
    }
    if n_neg < n {
        sigma = sigma.min(eigenvalue(&diag, off, n_neg).abs());
    }
    FdOracle {
        equation,
        sigma_min: sigma,
        intervals: n + 1,
    }
}

/// Number of eigenvalues strictly below `x` (LDLᵀ inertia).
fn sturm_count<T: Scalar>(diag: &[T], off: T, x: T) -> usize {
    let tiny = T::min_positive_value();
    let mut count = 0;
    let mut d = T::one();
    for (i, &a) in diag.iter().enumerate() {
        d = if i == 0 { a - x } else { a - x - off * off / d };
        if d == T::zero() {
            d = -tiny;
        }
        if d < T::zero() {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based), by bisection on Sturm counts.
fn eigenvalue<T: Scalar>(diag: &[T], off: T, k: usize) -> T {
    let r = off.abs() * T::lit(2.0);
    let mut lo = diag.iter().fold(T::infinity(), |m, &a| m.min(a - r));
    let mut hi = diag.iter().fold(T::neg_infinity(), |m, &a| m.max(a + r));
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / T::lit(2.0)
}
