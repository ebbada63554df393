//! Action of the monodromy on Fourier modes of the fiber torus.
//!
//! A mode `(k, ℓ, m) ∈ Z³` labels the character
//! `θ ↦ exp(2πi (θ, kξ* + ℓη* + mζ*))`. Pulling back by the monodromy sends
//! the mode to `M·(k, ℓ, m)`, and the per-mode ODE coefficients are
//! `(P, Re Q, Im Q) = 2π·Y⁻¹·(k, ℓ, m)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{InoueMatrix, LatticeBasis, Surface};
use crate::dd::dot_split;
use crate::error::{Error, Result};
use crate::scalar::{cx, Cx, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(into = "[i64; 3]")]
pub struct Mode {
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl From<Mode> for [i64; 3] {
    fn from(v: Mode) -> Self {
        [v.k, v.l, v.m]
    }
}

impl From<[i64; 3]> for Mode {
    fn from(v: [i64; 3]) -> Self {
        Mode::new(v[0], v[1], v[2])
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.m)
    }
}

impl Mode {
    pub const ZERO: Mode = Mode { k: 0, l: 0, m: 0 };

    pub const fn new(k: i64, l: i64, m: i64) -> Self {
        Mode { k, l, m }
    }

    pub fn is_zero(&self) -> bool {
        *self == Mode::ZERO
    }

    pub fn sup_norm(&self) -> i64 {
        self.k.abs().max(self.l.abs()).max(self.m.abs())
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.k, self.l, self.m]
    }

    /// Parses `"k,l,m"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument {
                reason: format!("expected three comma-separated integers, got {s:?}"),
            });
        }
        let mut v = [0i64; 3];
        for (slot, p) in v.iter_mut().zip(parts) {
            *slot = p.parse().map_err(|_| Error::InvalidArgument {
                reason: format!("not an integer: {p:?}"),
            })?;
        }
        Ok(v.into())
    }
}

fn mat_vec(m: &[[i64; 3]; 3], v: Mode) -> Result<Mode> {
    let x = v.as_array();
    let mut out = [0i64; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc: i64 = 0;
        for (j, xj) in x.iter().enumerate() {
            let term = m[i][j].checked_mul(*xj).ok_or(Error::IntegerOverflow)?;
            acc = acc.checked_add(term).ok_or(Error::IntegerOverflow)?;
        }
        *slot = acc;
    }
    Ok(out.into())
}

/// `M·mode`, exact.
pub fn apply_monodromy(m: &InoueMatrix, mode: Mode) -> Result<Mode> {
    mat_vec(m.entries(), mode)
}

/// `M⁻¹·mode`, exact.
pub fn apply_inverse_monodromy(m: &InoueMatrix, mode: Mode) -> Result<Mode> {
    mat_vec(&m.inverse_entries()?, mode)
}

/// A mode together with its ODE coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoeff<T> {
    pub mode: Mode,
    pub p: T,
    pub q: Cx<T>,
}

pub fn mode_coefficients<T: Scalar>(basis: &LatticeBasis<T>, mode: Mode) -> ModeCoeff<T> {
    let x = mode.as_array().map(T::of_i64);
    let two_pi = T::TAU();
    let row = |i: usize| {
        let r = &basis.y_inv[i];
        two_pi * (r[0] * x[0] + r[1] * x[1] + r[2] * x[2])
    };
    // Compensated, with the refined α-covector.
    let p = two_pi * dot_split(&basis.y_inv[0], &basis.alpha_row_lo, &x);
    ModeCoeff {
        mode,
        p,
        q: cx(row(1), row(2)),
    }
}

impl<T: Scalar> ModeCoeff<T> {
    /// Relative residual of `Y·(P, Re Q, Im Q)ᵀ = 2π·modeᵀ`.
    pub fn defining_residual(&self, basis: &LatticeBasis<T>) -> T {
        let v = [self.p, self.q.re, self.q.im];
        let target = self.mode.as_array().map(|n| T::TAU() * T::of_i64(n));
        let mut err = T::zero();
        let mut scale = T::zero();
        for i in 0..3 {
            let mut acc = T::zero();
            for j in 0..3 {
                acc = acc + basis.y[i][j] * v[j];
            }
            err = err.max((acc - target[i]).abs());
            scale = scale.max(target[i].abs());
        }
        if scale > T::zero() {
            err / scale
        } else {
            err
        }
    }
}

/// Consecutive orbit elements `Mⁿ·seed` for `n ∈ [n_lo, n_hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSegment {
    pub seed: Mode,
    pub n_lo: i64,
    pub n_hi: i64,
    pub modes: Vec<Mode>,
}

impl OrbitSegment {
    pub fn iter(&self) -> impl Iterator<Item = (i64, Mode)> + '_ {
        (self.n_lo..=self.n_hi).zip(self.modes.iter().copied())
    }
}

pub fn orbit_segment(m: &InoueMatrix, seed: Mode, n_lo: i64, n_hi: i64) -> Result<OrbitSegment> {
    if n_lo > n_hi {
        return Err(Error::InvalidArgument {
            reason: format!("empty range [{n_lo}, {n_hi}]"),
        });
    }
    let inv = m.inverse_entries()?;
    let mut start = seed;
    if n_lo < 0 {
        for _ in 0..(-n_lo) {
            start = mat_vec(&inv, start)?;
        }
    } else {
        for _ in 0..n_lo {
            start = mat_vec(m.entries(), start)?;
        }
    }
    let mut modes = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    let mut cur = start;
    modes.push(cur);
    for _ in n_lo..n_hi {
        cur = mat_vec(m.entries(), cur)?;
        modes.push(cur);
    }
    Ok(OrbitSegment {
        seed,
        n_lo,
        n_hi,
        modes,
    })
}

const MAX_ESCAPE_STEPS: usize = 10_000;

/// One representative per orbit among the nonzero modes with
/// `‖mode‖∞ ≤ bound`: the lexicographically smallest orbit element inside
/// the box. Returned in lexicographic order.
///
/// Each orbit is followed forward until `|P|` (which grows like `αⁿ`)
/// exceeds its maximum over the box, and backward until `|Q|` (which grows
/// like `α^{n/2}` in that direction) does the same; past those points the
/// orbit cannot return.
pub fn orbit_representatives(m: &InoueMatrix, bound: i64) -> Result<Vec<Mode>> {
    if bound < 1 {
        return Err(Error::InvalidArgument {
            reason: format!("bound must be at least 1, got {bound}"),
        });
    }
    let surface = Surface::<f64>::new(*m)?;
    let basis = &surface.basis;
    let b = bound as f64;
    let tau = std::f64::consts::TAU;
    let row_l1 = |i: usize| basis.y_inv[i].iter().map(|x| x.abs()).sum::<f64>();
    let p_max = tau * b * row_l1(0) * (1.0 + 1e-9);
    let q_max = tau * b * (row_l1(1) + row_l1(2)) * (1.0 + 1e-9);

    let inv = m.inverse_entries()?;
    let in_box = |x: &Mode| x.sup_norm() <= bound;
    let mut seen: HashSet<Mode> = HashSet::new();
    let mut reps = Vec::new();

    for k in -bound..=bound {
        for l in -bound..=bound {
            for mm in -bound..=bound {
                let x = Mode::new(k, l, mm);
                if x.is_zero() || seen.contains(&x) {
                    continue;
                }
                reps.push(x);
                seen.insert(x);

                let mut y = x;
                for step in 0.. {
                    if step == MAX_ESCAPE_STEPS {
                        return Err(Error::IntegerOverflow);
                    }
                    y = mat_vec(m.entries(), y)?;
                    if in_box(&y) {
                        seen.insert(y);
                    }
                    if mode_coefficients(basis, y).p.abs() > p_max {
                        break;
                    }
                }
                let mut y = x;
                for step in 0.. {
                    if step == MAX_ESCAPE_STEPS {
                        return Err(Error::IntegerOverflow);
                    }
                    y = mat_vec(&inv, y)?;
                    if in_box(&y) {
                        seen.insert(y);
                    }
                    if mode_coefficients(basis, y).q.norm() > q_max {
                        break;
                    }
                }
            }
        }
    }
    Ok(reps)
}
