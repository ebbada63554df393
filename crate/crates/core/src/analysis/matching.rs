use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Mode, ModeCoeff};
use crate::scalar::{Cx, Scalar};

use super::integrate::{integrate_renormalized, IntegratorConfig};
use super::system::{decaying_init, End, ModeState};
use super::twist::TwistParameter;

/// Dominant rate required at both truncation times.
pub const LAMBDA: f64 = 40.0;
/// Modes with `|P|` at or below this use the Bessel branch.
pub const P_ZERO_THRESHOLD: f64 = 1e-8;
/// A normalized matching determinant below this is flagged.
pub const FLAG_THRESHOLD: f64 = 1e-3;
/// Default lower bound for both truncation times.
pub const T_FLOOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchingConfig<T> {
    pub integrator: IntegratorConfig<T>,
    pub lambda: T,
    /// Lower bound for both truncation times.
    pub t_floor: T,
    /// Added to both truncation times; used by truncation-independence checks.
    pub t_extra: T,
    pub flag_threshold: T,
}

impl<T: Scalar> Default for MatchingConfig<T> {
    fn default() -> Self {
        MatchingConfig {
            integrator: IntegratorConfig::default(),
            lambda: T::lit(LAMBDA),
            t_floor: T::lit(T_FLOOR),
            t_extra: T::zero(),
            flag_threshold: T::lit(FLAG_THRESHOLD),
        }
    }
}

/// Truncation times `(T₋, T₊)`: large enough that `|P| e^{T₊}` and
/// `2|Q| e^{T₋/2}` both reach `Λ`, and never below `t_floor`.
pub fn truncation_times<T: Scalar>(c: &ModeCoeff<T>, cfg: &MatchingConfig<T>) -> (T, T) {
    let two = T::lit(2.0);
    let t_plus = (cfg.lambda / c.p.abs()).ln().max(cfg.t_floor) + cfg.t_extra;
    let t_minus = (two * (cfg.lambda / (two * c.q.norm())).ln()).max(cfg.t_floor) + cfg.t_extra;
    (t_minus, t_plus)
}

/// Normalized matching determinant of one mode at one twist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct MatchingResult<T> {
    pub mode: Mode,
    pub delta: T,
    #[serde(serialize_with = "crate::json::complex")]
    pub det: Cx<T>,
    #[serde(rename = "logmag_plus")]
    pub logmag_plus: T,
    #[serde(rename = "logmag_minus")]
    pub logmag_minus: T,
    #[serde(rename = "T_plus")]
    pub t_plus: T,
    #[serde(rename = "T_minus")]
    pub t_minus: T,
    pub steps: usize,
    pub steps_plus: usize,
    pub steps_minus: usize,
    pub flagged: bool,
}

impl<T: Scalar> MatchingResult<T> {
    pub fn abs_det(&self) -> T {
        self.det.norm()
    }
}

/// Transports the solution decaying at `+∞` from `T₊` and the one decaying
/// at `−∞` from `−T₋` to `t = 0`, where the determinant of the two unit
/// directions is taken. Both transports run in the direction in which their
/// solution grows, so the other component is damped out.
///
/// The system does not involve `δ`; it is carried for reporting because
/// super-exponential decay makes weighted membership independent of it.
pub fn matching_determinant<T: Scalar>(
    c: &ModeCoeff<T>,
    tw: &TwistParameter<T>,
    cfg: &MatchingConfig<T>,
) -> Result<MatchingResult<T>> {
    if c.mode.is_zero() {
        return Err(Error::InvalidArgument {
            reason: "the zero mode is a finite orbit, not a matching problem".into(),
        });
    }
    if !(c.p.abs() > T::lit(P_ZERO_THRESHOLD)) {
        return Err(Error::BranchUndefined {
            p_abs: c.p.abs().to_f64_lossy(),
        });
    }
    let (t_minus, t_plus) = truncation_times(c, cfg);

    let d_plus = decaying_init(c, End::Plus, t_plus)?;
    let plus = integrate_renormalized(c, t_plus, T::zero(), d_plus, &cfg.integrator)?;

    let d_minus = decaying_init(c, End::Minus, t_minus)?;
    let minus = integrate_renormalized(c, -t_minus, T::zero(), d_minus, &cfg.integrator)?;

    let (a, b) = (gauge(minus.state), gauge(plus.state));
    let det = a.u * b.v - b.u * a.v;

    Ok(MatchingResult {
        mode: c.mode,
        delta: tw.delta,
        det,
        logmag_plus: plus.logmag,
        logmag_minus: minus.logmag,
        t_plus,
        t_minus,
        steps: plus.steps + minus.steps,
        steps_plus: plus.steps,
        steps_minus: minus.steps,
        flagged: !(det.norm() >= cfg.flag_threshold),
    })
}

/// Fixes the phase of a unit direction so that its larger component is real
/// and positive, making the complex determinant independent of the phase
/// accumulated during transport.
fn gauge<T: Scalar>(s: ModeState<T>) -> ModeState<T> {
    let pivot = if s.v.norm() >= s.u.norm() { s.v } else { s.u };
    let n = pivot.norm();
    if n == T::zero() {
        return s;
    }
    let phase = pivot.conj() / n;
    ModeState::new(s.u * phase, s.v * phase)
}
