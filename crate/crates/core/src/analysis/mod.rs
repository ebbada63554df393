//! Per-mode analysis of the twisted Dolbeault system.
//!
//! For a mode with coefficients `P ∈ R`, `Q ∈ C` the Fourier coefficients
//! `u = b₀(t)`, `v = e^{t/2} c₀(t)` satisfy
//!
//! ```text
//! u' = −P eᵗ u + Q e^{−t/2} v
//! v' = Q̄ e^{−t/2} u + (1/2 + P eᵗ) v
//! ```
//!
//! A spectral contribution needs a nonzero solution lying in the weighted
//! space with weight `e^{(δ−1/4)t}` on the whole line. For `P ≠ 0` every
//! solution either decays super-exponentially or grows super-exponentially
//! at each end, so membership reduces to the existence of a solution that
//! decays at both ends: the [`matching_determinant`] of the two decaying
//! directions vanishes exactly then. For `P = 0` the solutions are modified
//! Bessel functions and membership is decided in [`p_zero_membership`].

mod bessel;
mod fd;
mod integrate;
mod matching;
mod pzero;
mod quadrature;
mod system;
mod twist;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled};
pub use fd::{fd_oracle, FdEquation, FdOracle};
pub use integrate::{integrate_renormalized, IntegratorConfig, Transport};
pub use matching::{
    matching_determinant, truncation_times, MatchingConfig, MatchingResult, FLAG_THRESHOLD,
    LAMBDA, P_ZERO_THRESHOLD, T_FLOOR,
};
pub use pzero::{p_zero_membership, BranchTails, PZeroAnalysis, PZeroVerdict};
pub use quadrature::{assemble_series, weighted_norm, Sampled, SeriesNorms};
pub use system::{decaying_init, ode_velocity, sl_potential_u, sl_potential_v, End, ModeState};
pub use twist::TwistParameter;
