//! Adaptive Dormand–Prince 5(4) integration of the mode system with
//! magnitude renormalization.
//!
//! Solutions of interest grow like `exp(|P| eᵗ)` or `exp(2|Q| e^{−t/2})`,
//! far beyond the floating-point range. The state is kept near unit norm and
//! the discarded magnitude is accumulated as a logarithm, so the integrator
//! returns `(direction, log‖y(t_to)‖/‖y(t_from)‖)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::ModeCoeff;
use crate::scalar::Scalar;

use super::system::{ode_velocity, ModeState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorConfig<T> {
    pub rtol: T,
    pub atol: T,
    pub min_step: T,
    pub max_steps: usize,
}

impl<T: Scalar> Default for IntegratorConfig<T> {
    fn default() -> Self {
        IntegratorConfig {
            rtol: T::lit(1e-10),
            atol: T::lit(1e-12),
            min_step: T::lit(1e-14),
            max_steps: 50_000_000,
        }
    }
}

/// Result of a renormalized transport.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transport<T> {
    /// Unit-norm state at `t_to`.
    pub state: ModeState<T>,
    /// `ln ‖y(t_to)‖ − ln ‖y(t_from)‖`.
    pub logmag: T,
    pub steps: usize,
    pub rejected: usize,
}

const RENORM_HIGH: f64 = 2.0;
const RENORM_LOW: f64 = 0.5;

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates the mode system from `t_from` to `t_to` (either direction).
pub fn integrate_renormalized<T: Scalar>(
    c: &ModeCoeff<T>,
    t_from: T,
    t_to: T,
    init: ModeState<T>,
    cfg: &IntegratorConfig<T>,
) -> Result<Transport<T>> {
    if t_from == t_to {
        return Err(Error::InvalidArgument {
            reason: "zero-length integration interval".into(),
        });
    }
    let n0 = init.norm();
    if !(n0 > T::zero()) || !n0.is_finite() {
        return Err(Error::InvalidArgument {
            reason: "initial state must be finite and nonzero".into(),
        });
    }
    let l = T::lit;
    let dir = (t_to - t_from).signum();
    let span = (t_to - t_from).abs();

    let mut y = init * (T::one() / n0);
    let mut logmag = T::zero();
    let mut t = t_from;

    let rate = |t: T| c.p.abs() * t.exp() + c.q.norm() * (-t / l(2.0)).exp() + l(0.5);
    let mut h = span.min(l(0.1) / rate(t)) * dir;

    let mut k1 = ode_velocity(c, t, &y);
    let mut steps = 0usize;
    let mut rejected = 0usize;
    let mut last_reject = false;

    loop {
        let remaining = (t_to - t) * dir;
        if remaining <= T::zero() {
            break;
        }
        if steps + rejected >= cfg.max_steps {
            return Err(Error::StepBudgetExceeded {
                max_steps: cfg.max_steps,
                t: t.to_f64_lossy(),
            });
        }
        let last = h.abs() >= remaining;
        if last {
            h = remaining * dir;
        }
        if h.abs() < cfg.min_step {
            return Err(Error::StepUnderflow {
                t: t.to_f64_lossy(),
                h: h.to_f64_lossy(),
            });
        }

        let k2 = ode_velocity(c, t + h * l(C2), &(y + k1 * (h * l(A21))));
        let k3 = ode_velocity(c, t + h * l(C3), &(y + k1 * (h * l(A31)) + k2 * (h * l(A32))));
        let k4 = ode_velocity(
            c,
            t + h * l(C4),
            &(y + k1 * (h * l(A41)) + k2 * (h * l(A42)) + k3 * (h * l(A43))),
        );
        let k5 = ode_velocity(
            c,
            t + h * l(C5),
            &(y + k1 * (h * l(A51)) + k2 * (h * l(A52)) + k3 * (h * l(A53)) + k4 * (h * l(A54))),
        );
        let k6 = ode_velocity(
            c,
            t + h,
            &(y + k1 * (h * l(A61))
                + k2 * (h * l(A62))
                + k3 * (h * l(A63))
                + k4 * (h * l(A64))
                + k5 * (h * l(A65))),
        );
        let y_new = y
            + k1 * (h * l(A71))
            + k3 * (h * l(A73))
            + k4 * (h * l(A74))
            + k5 * (h * l(A75))
            + k6 * (h * l(A76));
        let t_new = if last { t_to } else { t + h };
        let k7 = ode_velocity(c, t_new, &y_new);

        let err = (k1 * l(E1) + k3 * l(E3) + k4 * l(E4) + k5 * l(E5) + k6 * l(E6) + k7 * l(E7)) * h;
        let sc_u = cfg.atol + cfg.rtol * y.u.norm().max(y_new.u.norm());
        let sc_v = cfg.atol + cfg.rtol * y.v.norm().max(y_new.v.norm());
        let ru = err.u.norm() / sc_u;
        let rv = err.v.norm() / sc_v;
        let err_norm = ((ru * ru + rv * rv) / l(2.0)).sqrt();

        if err_norm <= T::one() && err_norm.is_finite() {
            steps += 1;
            t = t_new;
            y = y_new;
            k1 = k7;
            let n = y.norm();
            if n > l(RENORM_HIGH) || n < l(RENORM_LOW) {
                let inv = T::one() / n;
                y = y * inv;
                k1 = k1 * inv;
                logmag = logmag + n.ln();
            }
            if last {
                break;
            }
            let mut fac = l(0.9) * err_norm.max(l(1e-10)).powf(l(-0.2));
            fac = fac.min(l(10.0)).max(l(0.2));
            if last_reject {
                fac = fac.min(T::one());
            }
            h = h * fac;
            last_reject = false;
        } else {
            rejected += 1;
            let fac = if err_norm.is_finite() {
                (l(0.9) * err_norm.powf(l(-0.2))).max(l(0.2))
            } else {
                l(0.2)
            };
            h = h * fac;
            last_reject = true;
        }
    }

    let n = y.norm();
    Ok(Transport {
        state: y * (T::one() / n),
        logmag: logmag + n.ln(),
        steps,
        rejected,
    })
}
