//! Modified Bessel functions `I₀, I₁, K₀, K₁` of real positive argument.
//!
//! * `I_ν`: ascending power series for `x ≤ 15`, Hankel asymptotic
//!   expansion beyond.
//! * `K_ν`: series with the logarithmic term for `x ≤ 2`, Steed's continued
//!   fraction on `(2, 20)`, asymptotic expansion for `x ≥ 20`.
//!
//! The `*_scaled` variants return `e^{−x} I_ν(x)` and `e^{x} K_ν(x)` and stay
//! finite for arguments where the unscaled values overflow.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const I_SERIES_MAX: f64 = 15.0;
const K_SERIES_MAX: f64 = 2.0;
const K_ASYMPTOTIC_MIN: f64 = 20.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check<T: Scalar>(order: u32, x: T) -> Result<()> {
    if order > 1 {
        return Err(Error::DomainError {
            reason: format!("only orders 0 and 1 are supported, got {order}"),
        });
    }
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::DomainError {
            reason: format!("argument must be positive and finite, got {x}"),
        });
    }
    Ok(())
}

/// `I_ν(x)`; overflows to `+∞` past `x ≈ 700`.
pub fn bessel_i<T: Scalar>(order: u32, x: T) -> Result<T> {
    check(order, x)?;
    if x <= T::lit(I_SERIES_MAX) {
        Ok(i_series(order, x))
    } else {
        Ok(i_asymptotic_scaled(order, x) * x.exp())
    }
}

/// `e^{−x} I_ν(x)`.
pub fn bessel_i_scaled<T: Scalar>(order: u32, x: T) -> Result<T> {
    check(order, x)?;
    if x <= T::lit(I_SERIES_MAX) {
        Ok(i_series(order, x) * (-x).exp())
    } else {
        Ok(i_asymptotic_scaled(order, x))
    }
}

/// `K_ν(x)`; underflows to 0 past `x ≈ 700`.
pub fn bessel_k<T: Scalar>(order: u32, x: T) -> Result<T> {
    check(order, x)?;
    if x <= T::lit(K_SERIES_MAX) {
        Ok(k_series(order, x))
    } else {
        Ok(k_scaled_large(order, x) * (-x).exp())
    }
}

/// `e^{x} K_ν(x)`.
pub fn bessel_k_scaled<T: Scalar>(order: u32, x: T) -> Result<T> {
    check(order, x)?;
    if x <= T::lit(K_SERIES_MAX) {
        Ok(k_series(order, x) * x.exp())
    } else {
        Ok(k_scaled_large(order, x))
    }
}

fn i_series<T: Scalar>(order: u32, x: T) -> T {
    let y = x * x / T::lit(4.0);
    let mut term = if order == 0 { T::one() } else { x / T::lit(2.0) };
    let mut sum = term;
    let nu = T::of_i64(order as i64);
    for k in 1..500 {
        let kk = T::of_i64(k);
        term = term * y / (kk * (kk + nu));
        sum = sum + term;
        if term <= T::epsilon() * sum {
            break;
        }
    }
    sum
}

/// Hankel expansion of `e^{−x} I_ν(x)`, truncated at its smallest term.
fn i_asymptotic_scaled<T: Scalar>(order: u32, x: T) -> T {
    asymptotic_sum(order, x, true) / (T::TAU() * x).sqrt()
}

/// `Σ_k (±1)^k a_k(ν) / x^k` with `a_k = Π_{j≤k} (4ν² − (2j−1)²) / (k! 8^k)`.
fn asymptotic_sum<T: Scalar>(order: u32, x: T, alternating: bool) -> T {
    let mu = T::of_i64(4 * (order as i64) * (order as i64));
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..200 {
        let odd = T::of_i64(2 * k - 1);
        let mut next = term * (mu - odd * odd) / (T::lit(8.0) * T::of_i64(k) * x);
        if alternating {
            next = -next;
        }
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    sum
}

fn k_series<T: Scalar>(order: u32, x: T) -> T {
    let half = x / T::lit(2.0);
    let log_half = half.ln();
    let gamma = T::lit(EULER_GAMMA);
    let y = half * half;
    if order == 0 {
        // K₀ = −(ln(x/2) + γ) I₀ + Σ_{k≥1} H_k (x²/4)^k / (k!)²
        let mut term = T::one();
        let mut harmonic = T::zero();
        let mut sum = T::zero();
        for k in 1..500 {
            let kk = T::of_i64(k);
            term = term * y / (kk * kk);
            harmonic = harmonic + T::one() / kk;
            let add = term * harmonic;
            sum = sum + add;
            if add <= T::epsilon() * sum {
                break;
            }
        }
        -(log_half + gamma) * i_series(0, x) + sum
    } else {
        // K₁ = 1/x + ln(x/2) I₁ − (x/4) Σ_{k≥0} (ψ(k+1) + ψ(k+2)) (x²/4)^k / (k!(k+1)!)
        let mut term = T::one();
        let mut psi_k1 = -gamma; // ψ(1)
        let mut psi_k2 = T::one() - gamma; // ψ(2)
        let mut sum = term * (psi_k1 + psi_k2);
        for k in 1..500 {
            let kk = T::of_i64(k);
            term = term * y / (kk * (kk + T::one()));
            psi_k1 = psi_k1 + T::one() / kk;
            psi_k2 = psi_k2 + T::one() / (kk + T::one());
            let add = term * (psi_k1 + psi_k2);
            sum = sum + add;
            if add.abs() <= T::epsilon() * sum.abs() {
                break;
            }
        }
        T::one() / x + log_half * i_series(1, x) - x / T::lit(4.0) * sum
    }
}

fn k_scaled_large<T: Scalar>(order: u32, x: T) -> T {
    if x >= T::lit(K_ASYMPTOTIC_MIN) {
        (T::PI() / (T::lit(2.0) * x)).sqrt() * asymptotic_sum(order, x, false)
    } else {
        let (k0, k1) = k_steed_scaled(x);
        if order == 0 {
            k0
        } else {
            k1
        }
    }
}

/// Steed's continued-fraction evaluation of `(e^x K₀(x), e^x K₁(x))`,
/// accurate for `x ≳ 2`.
fn k_steed_scaled<T: Scalar>(x: T) -> (T, T) {
    let two = T::lit(2.0);
    let a1 = T::lit(0.25);
    let mut b = two * (T::one() + x);
    let mut d = T::one() / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    for i in 2..10_000 {
        let ii = T::of_i64(i);
        a = a - two * T::of_i64(i - 1);
        c = -a * c / ii;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = T::one() / (b + a * d);
        delh = (b * d - T::one()) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < T::epsilon() {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (T::PI() / (two * x)).sqrt() / s;
    let k1 = k0 * (x + T::lit(0.5) - h) / x;
    (k0, k1)
}
