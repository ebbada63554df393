//! Weighted `L²` norms on the line and their series counterpart on the
//! fundamental domain of the surface.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::Surface;
use crate::error::{Error, Result};
use crate::lattice::{orbit_segment, Mode};
use crate::scalar::{Cx, Scalar};

use super::twist::TwistParameter;

/// `(∫ e^{2wt} |f(t)|² dt)^{1/2}` by the composite trapezoid rule over
/// uniformly spaced samples sorted by `t`.
pub fn weighted_norm<T: Scalar>(samples: &[(T, Cx<T>)], w: T) -> Result<T> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    if samples.len() == 1 {
        return Ok(T::zero());
    }
    let h = samples[1].0 - samples[0].0;
    if !(h > T::zero()) {
        return Err(Error::InvalidArgument {
            reason: "samples must be strictly increasing in t".into(),
        });
    }
    let slack = h * T::lit(1e-6) + T::epsilon() * samples[0].0.abs().max(T::one()) * T::lit(16.0);
    let mut acc = T::zero();
    for (i, pair) in samples.windows(2).enumerate() {
        let (t0, f0) = pair[0];
        let (t1, f1) = pair[1];
        if ((t1 - t0) - h).abs() > slack {
            return Err(Error::InvalidArgument {
                reason: format!("non-uniform spacing at sample {}", i + 1),
            });
        }
        let g0 = (T::lit(2.0) * w * t0).exp() * f0.norm_sqr();
        let g1 = (T::lit(2.0) * w * t1).exp() * f1.norm_sqr();
        acc = acc + (g0 + g1) * h / T::lit(2.0);
    }
    Ok(acc.sqrt())
}

/// A function sampled on a uniform grid `t0, t0 + h, …`, evaluated between
/// nodes by linear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled<T> {
    pub t0: T,
    pub h: T,
    pub values: Vec<Cx<T>>,
}

impl<T: Scalar> Sampled<T> {
    pub fn from_fn(t_lo: T, t_hi: T, h: T, f: impl Fn(T) -> Cx<T>) -> Self {
        let n = ((t_hi - t_lo) / h).round().to_usize().unwrap_or(0);
        let h = if n > 0 { (t_hi - t_lo) / T::of_i64(n as i64) } else { h };
        let values = (0..=n).map(|i| f(t_lo + h * T::of_i64(i as i64))).collect();
        Sampled { t0: t_lo, h, values }
    }

    pub fn t_end(&self) -> T {
        self.t0 + self.h * T::of_i64(self.values.len().saturating_sub(1) as i64)
    }

    pub fn samples(&self) -> Vec<(T, Cx<T>)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.t0 + self.h * T::of_i64(i as i64), *v))
            .collect()
    }

    /// Linear interpolation; zero outside the sampled range.
    pub fn eval(&self, t: T) -> Cx<T> {
        let n = self.values.len();
        if n == 0 {
            return Cx::new(T::zero(), T::zero());
        }
        let s = (t - self.t0) / self.h;
        let last = T::of_i64(n as i64 - 1);
        let eps = T::lit(1e-9);
        if s < -eps || s > last + eps {
            return Cx::new(T::zero(), T::zero());
        }
        let s = s.max(T::zero()).min(last);
        let i = s.floor().to_usize().unwrap_or(0).min(n.saturating_sub(2));
        if n == 1 {
            return self.values[0];
        }
        let frac = s - T::of_i64(i as i64);
        self.values[i] * (T::one() - frac) + self.values[i + 1] * frac
    }
}

/// Norms produced by [`assemble_series`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesNorms<T> {
    /// Norm of the truncated `(b, c)` series over the fundamental domain.
    pub series: T,
    /// Weighted line norm of `(u, v)` with weight exponent `δ − 1/4`.
    pub line: T,
    pub series_u: T,
    pub line_u: T,
    pub series_v: T,
    pub line_v: T,
}

/// Compares the `L²` norm of the Fourier–Laplace transformed series built
/// from one orbit with the weighted line norms of `u` and `v`.
///
/// The series side sums, over `n ∈ [−N, N)`, the squared coefficient of the
/// character of `Mⁿ·seed` integrated over `t ∈ [0, ln α]`: for `b` the
/// coefficient is `(β̄e^μ)^{t/ln α}·β̄ⁿ e^{nμ}·u(t + n ln α)` and for `c` it is
/// `(e^μ)^{t/ln α}·e^{nμ}·c₀(t + n ln α)` with `c₀(s) = e^{−s/2} v(s)`.
/// Characters of distinct modes are orthonormal on the fiber, so cross terms
/// vanish. The line side is [`weighted_norm`] over the sampled range.
pub fn assemble_series<T: Scalar>(
    surface: &Surface<T>,
    seed: Mode,
    u: &Sampled<T>,
    v: &Sampled<T>,
    tw: &TwistParameter<T>,
    n_trunc: usize,
) -> Result<SeriesNorms<T>> {
    if u.values.is_empty() || v.values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if n_trunc == 0 {
        return Err(Error::InvalidArgument {
            reason: "truncation must be at least 1".into(),
        });
    }
    let n = n_trunc as i64;
    let seg = orbit_segment(&surface.matrix, seed, -n, n - 1)?;
    let distinct: HashSet<Mode> = seg.modes.iter().copied().collect();
    if distinct.len() != seg.modes.len() {
        return Err(Error::InvalidArgument {
            reason: "seed lies on a finite orbit".into(),
        });
    }

    let ln_a = surface.eigen.log_alpha;
    let beta_bar = surface.eigen.beta.conj();
    let z_b = beta_bar * tw.mu.exp();
    let ln_zb = z_b.norm().ln();
    let ln_zc = tw.mu.exp().norm().ln();

    let h = u.h.min(v.h);
    let cells = (ln_a / h).ceil().to_i64().unwrap_or(1).max(1);
    let dt = ln_a / T::of_i64(cells);
    let half = T::lit(0.5);

    let mut sum_u = T::zero();
    let mut sum_v = T::zero();
    for (idx, _mode) in seg.iter() {
        let shift = T::of_i64(idx) * ln_a;
        let mult_b = (beta_bar.powi(idx as i32) * (tw.mu * T::of_i64(idx)).exp()).norm();
        let mult_c = (tw.mu * T::of_i64(idx)).exp().norm();
        let mut piece_u = T::zero();
        let mut piece_v = T::zero();
        for j in 0..=cells {
            let t = dt * T::of_i64(j);
            let s = t + shift;
            let fl_b = (ln_zb * t / ln_a).exp();
            let fl_c = (ln_zc * t / ln_a).exp();
            let cu = fl_b * mult_b * u.eval(s).norm();
            let c0 = (-s / T::lit(2.0)).exp() * v.eval(s).norm();
            let cv = fl_c * mult_c * c0;
            let wgt = if j == 0 || j == cells { half } else { T::one() };
            piece_u = piece_u + wgt * cu * cu;
            piece_v = piece_v + wgt * cv * cv;
        }
        sum_u = sum_u + piece_u * dt;
        sum_v = sum_v + piece_v * dt;
    }

    let w = tw.line_weight();
    let line_u = weighted_norm(&u.samples(), w)?;
    let line_v = weighted_norm(&v.samples(), w)?;
    Ok(SeriesNorms {
        series: (sum_u + sum_v).sqrt(),
        line: (line_u * line_u + line_v * line_v).sqrt(),
        series_u: sum_u.sqrt(),
        line_u,
        series_v: sum_v.sqrt(),
        line_v,
    })
}
