use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::ModeCoeff;
use crate::scalar::{real, Cx, Scalar};

use super::matching::P_ZERO_THRESHOLD;

/// Values `(u, v)` of the two unknowns at one time.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct ModeState<T> {
    #[serde(serialize_with = "crate::json::complex")]
    pub u: Cx<T>,
    #[serde(serialize_with = "crate::json::complex")]
    pub v: Cx<T>,
}

impl<T: Scalar> ModeState<T> {
    pub fn new(u: Cx<T>, v: Cx<T>) -> Self {
        ModeState { u, v }
    }

    pub fn norm(&self) -> T {
        (self.u.norm_sqr() + self.v.norm_sqr()).sqrt()
    }

    pub fn normalized(&self) -> Self {
        *self * (T::one() / self.norm())
    }
}

impl<T: Scalar> Add for ModeState<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ModeState::new(self.u + o.u, self.v + o.v)
    }
}

impl<T: Scalar> Sub for ModeState<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ModeState::new(self.u - o.u, self.v - o.v)
    }
}

impl<T: Scalar> Mul<T> for ModeState<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        ModeState::new(self.u * s, self.v * s)
    }
}

/// Right-hand side of the first-order system.
#[inline]
pub fn ode_velocity<T: Scalar>(c: &ModeCoeff<T>, t: T, s: &ModeState<T>) -> ModeState<T> {
    let pe = c.p * t.exp();
    let qe = c.q * (-t / T::lit(2.0)).exp();
    ModeState {
        u: s.u * (-pe) + qe * s.v,
        v: qe.conj() * s.u + s.v * (T::lit(0.5) + pe),
    }
}

/// Potential of the decoupled equation `−u'' + U(t) u = 0`.
pub fn sl_potential_u<T: Scalar>(c: &ModeCoeff<T>, t: T) -> T {
    let pe = c.p * t.exp();
    pe * (pe - T::one()) + c.q.norm_sqr() * (-t).exp()
}

/// Potential of the decoupled equation `−v'' + V(t) v = 0`.
pub fn sl_potential_v<T: Scalar>(c: &ModeCoeff<T>, t: T) -> T {
    let pe = c.p * t.exp();
    pe * (pe + T::lit(2.0)) + c.q.norm_sqr() * (-t).exp() + T::lit(0.25)
}

/// End of the real line at which a solution is required to decay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Plus,
    Minus,
}

/// Unit direction of the solution decaying at `+∞` (evaluated at `t = T`)
/// or at `−∞` (evaluated at `t = −T`).
///
/// The coefficient matrix of the system is Hermitian. Freezing it at the
/// truncation time, the decaying solution at `+∞` follows the eigenvector of
/// the smallest eigenvalue (the `v` direction for `P < 0`, `u` for `P > 0`,
/// corrected at order `e^{−3T/2}/|P|`), and the solution decaying at `−∞`
/// follows the eigenvector of the largest eigenvalue, `u ≈ (Q/|Q|) v`.
pub fn decaying_init<T: Scalar>(c: &ModeCoeff<T>, end: End, t_trunc: T) -> Result<ModeState<T>> {
    if !(c.p.abs() > T::lit(P_ZERO_THRESHOLD)) {
        return Err(Error::BranchUndefined {
            p_abs: c.p.abs().to_f64_lossy(),
        });
    }
    let t = match end {
        End::Plus => t_trunc,
        End::Minus => -t_trunc,
    };
    let pe = c.p * t.exp();
    let a = -pe;
    let d = T::lit(0.5) + pe;
    let w = c.q * (-t / T::lit(2.0)).exp();
    let mean = (a + d) / T::lit(2.0);
    let half = (a - d) / T::lit(2.0);
    let radius = (half * half + w.norm_sqr()).sqrt();
    let lambda = match end {
        End::Plus => mean - radius,
        End::Minus => mean + radius,
    };
    // Two equivalent forms of the eigenvector; keep the better conditioned.
    let first = ModeState::new(w, real(lambda - a));
    let second = ModeState::new(real(lambda - d), w.conj());
    let pick = if first.norm() >= second.norm() {
        first
    } else {
        second
    };
    if !(pick.norm() > T::zero()) {
        // Diagonal matrix: the eigenvector is a coordinate axis.
        let axis = if (lambda - a).abs() <= (lambda - d).abs() {
            ModeState::new(real(T::one()), real(T::zero()))
        } else {
            ModeState::new(real(T::zero()), real(T::one()))
        };
        return Ok(axis);
    }
    Ok(pick.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Mode;

    fn coeff(p: f64, q: Cx<f64>) -> ModeCoeff<f64> {
        ModeCoeff {
            mode: Mode::new(1, 0, 0),
            p,
            q,
        }
    }

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn velocity_examples() {
        let s = ModeState::new(c(1.0, 0.0), c(1.0, 0.0));
        let d = ode_velocity(&coeff(0.0, c(0.0, 0.0)), 0.0, &s);
        assert_eq!(d, ModeState::new(c(0.0, 0.0), c(0.5, 0.0)));

        let s = ModeState::new(c(1.0, 0.0), c(0.0, 0.0));
        let d = ode_velocity(&coeff(1.0, c(0.0, 0.0)), 0.0, &s);
        assert_eq!(d, ModeState::new(c(-1.0, 0.0), c(0.0, 0.0)));

        let s = ModeState::new(c(0.0, 0.0), c(1.0, 0.0));
        let d = ode_velocity(&coeff(0.0, c(2.0, 0.0)), 0.0, &s);
        assert_eq!(d, ModeState::new(c(2.0, 0.0), c(0.5, 0.0)));
    }

    #[test]
    fn potentials() {
        let q = 1.7;
        for t in [-3.0, 0.0, 2.5] {
            let cf = coeff(0.0, c(q, 0.0));
            assert!((sl_potential_u(&cf, t) - q * q * (-t).exp()).abs() < 1e-12);
        }
        let p = 0.8;
        let cf = coeff(-p, c(0.3, -1.1));
        for i in -400..=400 {
            let t = i as f64 * 0.05;
            let u = sl_potential_u(&cf, t);
            assert!(u > 0.0);
            assert!(u >= p * p * (2.0 * t).exp());
        }
        let cf = coeff(p, c(0.3, -1.1));
        for i in -400..=400 {
            assert!(sl_potential_v(&cf, i as f64 * 0.05) > 0.0);
        }
    }

    #[test]
    fn init_rejects_small_p() {
        let cf = coeff(1e-9, c(1.0, 0.0));
        assert!(matches!(
            decaying_init(&cf, End::Plus, 10.0),
            Err(Error::BranchUndefined { .. })
        ));
    }

    #[test]
    fn init_directions() {
        let cf = coeff(-0.5, c(2.0, 1.0));
        let d = decaying_init(&cf, End::Plus, 12.0).unwrap();
        assert!(d.u.norm() < 1e-6 && (d.v.norm() - 1.0).abs() < 1e-12);
        let cf = coeff(0.5, c(2.0, 1.0));
        let d = decaying_init(&cf, End::Plus, 12.0).unwrap();
        assert!(d.v.norm() < 1e-6 && (d.u.norm() - 1.0).abs() < 1e-12);
        let d = decaying_init(&cf, End::Minus, 12.0).unwrap();
        let phase = cf.q / cf.q.norm();
        assert!((d.u - phase * d.v).norm() < 1e-2);
    }
}
