use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cx, Cx, Scalar};

/// A twist `z = e^μ` of the Dolbeault operator and its weight index
/// `δ = Re μ / ln α − 1/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct TwistParameter<T> {
    #[serde(serialize_with = "crate::json::complex")]
    pub z: Cx<T>,
    /// Principal logarithm of `z`, `Im μ ∈ (−π, π]`.
    #[serde(serialize_with = "crate::json::complex")]
    pub mu: Cx<T>,
    pub delta: T,
}

impl<T: Scalar> TwistParameter<T> {
    pub fn from_z(z: Cx<T>, log_alpha: T) -> Result<Self> {
        if z.norm() == T::zero() {
            return Err(Error::ZeroInput);
        }
        let mu = z.ln();
        Ok(TwistParameter {
            z,
            mu,
            delta: mu.re / log_alpha - T::lit(0.25),
        })
    }

    /// The twist with modulus `α^{δ+1/4}` and argument `arg`.
    pub fn from_delta(delta: T, arg: T, log_alpha: T) -> Self {
        let mu = cx((delta + T::lit(0.25)) * log_alpha, arg);
        TwistParameter {
            z: mu.exp(),
            mu,
            delta,
        }
    }

    /// Whether `δ ∈ [−1/4, 1/4]`, i.e. `1 ≤ |z| ≤ α^{1/2}`.
    pub fn in_band(&self) -> bool {
        let q = T::lit(0.25);
        self.delta >= -q && self.delta <= q
    }

    /// Exponent `w = δ − 1/4` of the line weight `e^{2wt}`.
    pub fn line_weight(&self) -> T {
        self.delta - T::lit(0.25)
    }
}
