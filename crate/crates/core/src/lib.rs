//! Spectral sets of twisted Dirac–Dolbeault operators on Inoue surfaces.
//!
//! The pipeline runs in four layers:
//!
//! * [`algebra`]: validate the defining matrix `M`, compute `α`, `β`, the
//!   eigenvectors and the lattice basis `Y`.
//! * [`lattice`]: the action of `M` on Fourier modes and the per-mode
//!   coefficients `P`, `Q`.
//! * [`analysis`]: the per-mode ODE system, its decaying solutions, the
//!   matching determinant, weighted norms and the Bessel branch.
//! * [`spectral`]: finite-orbit spectral points on all three operator scales
//!   and the annulus scan.
//!
//! All numerical code is generic over [`Scalar`]; the `*64` aliases below fix
//! `f64`, which is what the CLI and the documented tolerances use.

pub mod algebra;
pub mod analysis;
mod dd;
pub mod error;
pub mod json;
pub mod lattice;
pub mod scalar;
pub mod spectral;

pub use algebra::{cappell_shaneson, CharPoly, EigenData, InoueMatrix, LatticeBasis, Surface};
pub use error::{Error, Result};
pub use lattice::{Mode, ModeCoeff, OrbitSegment};
pub use scalar::{Cx, Scalar};

pub type Surface64 = Surface<f64>;
pub type EigenData64 = EigenData<f64>;
pub type LatticeBasis64 = LatticeBasis<f64>;
pub type ModeCoeff64 = ModeCoeff<f64>;
pub type TwistParameter64 = analysis::TwistParameter<f64>;
pub type MatchingResult64 = analysis::MatchingResult<f64>;
pub type SpectrumReport64 = spectral::SpectrumReport;

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
