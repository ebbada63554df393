//! Membership test for modes with `P = 0`.
//!
//! With `P = 0` and `x = 2q e^{−t/2}` (`q = |Q|`), the decoupled equations
//! become the modified Bessel equations of orders 0 (for `u`) and 1 (for
//! `v`). Every solution of the first-order system is a combination
//! `C₁·(I-pair) + C₂·(K-pair)` with
//!
//! ```text
//! I-pair:  u = −(q/Q̄) I₀(x),  v = I₁(x)
//! K-pair:  u =  (q/Q̄) K₀(x),  v = K₁(x)
//! ```
//!
//! The weighted norm `∫ e^{2(δ−1/4)t} (|u|² + |v|²) dt` of each pair is
//! examined on both tails of `[−60, 60]`; a tail diverges when the integral
//! over its outer window is not smaller than over its inner window.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::bessel::{bessel_i_scaled, bessel_k_scaled};

const T_INNER: f64 = 30.0;
const T_MID: f64 = 45.0;
const T_OUTER: f64 = 60.0;
const STEP: f64 = 1e-3;
/// Tails whose fitted exponential rate is above `−RATE_TOL` are divergent.
const RATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PZeroVerdict<T> {
    NoNonzeroSolution,
    /// Coefficients `(C₁, C₂)` of a weighted-square-integrable solution.
    SolutionFound(T, T),
}

/// Fitted exponential growth rate of the weighted integrand on each tail
/// (positive rate at the left tail means growth towards `−∞`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchTails<T> {
    pub left_rate: T,
    pub right_rate: T,
    pub left_divergent: bool,
    pub right_divergent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PZeroAnalysis<T> {
    pub q: T,
    pub delta: T,
    pub verdict: PZeroVerdict<T>,
    pub i_branch: BranchTails<T>,
    pub k_branch: BranchTails<T>,
}

#[derive(Clone, Copy)]
enum Pair {
    I,
    K,
}

fn ln_add_exp<T: Scalar>(a: T, b: T) -> T {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == T::neg_infinity() {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^{2wt}(|u|² + |v|²))` for one basis pair.
fn log_integrand<T: Scalar>(pair: Pair, q: T, w: T, t: T) -> Result<T> {
    let two = T::lit(2.0);
    let x = two * q * (-t / two).exp();
    let (lu, lv) = match pair {
        Pair::I => (
            x + bessel_i_scaled(0, x)?.ln(),
            x + bessel_i_scaled(1, x)?.ln(),
        ),
        Pair::K => (
            -x + bessel_k_scaled(0, x)?.ln(),
            -x + bessel_k_scaled(1, x)?.ln(),
        ),
    };
    Ok(two * w * t + ln_add_exp(two * lu, two * lv))
}

/// `ln ∫_a^b g` by the trapezoid rule in log space.
fn log_window<T: Scalar>(pair: Pair, q: T, w: T, a: T, b: T) -> Result<T> {
    let h = T::lit(STEP);
    let n = ((b - a) / h).round().to_i64().unwrap_or(1).max(1);
    let h = (b - a) / T::of_i64(n);
    let mut acc = T::neg_infinity();
    for i in 0..=n {
        let t = a + h * T::of_i64(i);
        let mut g = log_integrand(pair, q, w, t)?;
        if i == 0 || i == n {
            g = g - T::LN_2();
        }
        acc = ln_add_exp(acc, g);
    }
    Ok(acc + h.ln())
}

fn tails<T: Scalar>(pair: Pair, q: T, w: T) -> Result<BranchTails<T>> {
    let (inner, mid, outer) = (T::lit(T_INNER), T::lit(T_MID), T::lit(T_OUTER));
    let width = mid - inner;
    let right_rate = (log_window(pair, q, w, mid, outer)? - log_window(pair, q, w, inner, mid)?) / width;
    let left_rate = (log_window(pair, q, w, -outer, -mid)? - log_window(pair, q, w, -mid, -inner)?) / width;
    let tol = T::lit(RATE_TOL);
    Ok(BranchTails {
        left_rate,
        right_rate,
        left_divergent: left_rate > -tol,
        right_divergent: right_rate > -tol,
    })
}

/// Decides whether any nonzero solution of the `P = 0` system lies in the
/// weighted space with weight exponent `δ − 1/4`.
pub fn p_zero_membership<T: Scalar>(q: T, delta: T) -> Result<PZeroAnalysis<T>> {
    if !(q > T::zero()) || !q.is_finite() {
        return Err(Error::DomainError {
            reason: format!("|Q| must be positive, got {q}"),
        });
    }
    let w = delta - T::lit(0.25);
    let i_branch = tails(Pair::I, q, w)?;
    let k_branch = tails(Pair::K, q, w)?;

    // A coefficient is forced to vanish at an end where its pair diverges,
    // unless both pairs diverge there at the same rate and could cancel.
    let tol = T::lit(RATE_TOL);
    let mut forced = [false, false];
    for (di, dk, ri, rk) in [
        (i_branch.left_divergent, k_branch.left_divergent, i_branch.left_rate, k_branch.left_rate),
        (i_branch.right_divergent, k_branch.right_divergent, i_branch.right_rate, k_branch.right_rate),
    ] {
        match (di, dk) {
            (true, false) => forced[0] = true,
            (false, true) => forced[1] = true,
            (true, true) if (ri - rk).abs() > tol * (T::one() + ri.abs().max(rk.abs())) => {
                forced = [true, true];
            }
            _ => {}
        }
    }
    let verdict = match forced {
        [true, true] => PZeroVerdict::NoNonzeroSolution,
        [true, false] => PZeroVerdict::SolutionFound(T::zero(), T::one()),
        [false, true] => PZeroVerdict::SolutionFound(T::one(), T::zero()),
        [false, false] => PZeroVerdict::SolutionFound(T::one(), T::one()),
    };
    Ok(PZeroAnalysis {
        q,
        delta,
        verdict,
        i_branch,
        k_branch,
    })
}
