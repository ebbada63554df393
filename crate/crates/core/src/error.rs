use thiserror::Error;

/// Failure modes of the numerical pipeline.
///
/// Variant names are part of the CLI contract: they appear verbatim in the
/// machine-readable error objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: i64 },

    #[error("wrong eigenvalue pattern: {reason}")]
    WrongEigenvaluePattern { reason: String },

    #[error("root finding failed: {reason}")]
    RootFindingFailure { reason: String },

    #[error("lattice basis is singular (det Y = {det})")]
    SingularBasis { det: f64 },

    #[error("integer overflow while applying the monodromy")]
    IntegerOverflow,

    #[error("decaying branch undefined for |P| = {p_abs:e}")]
    BranchUndefined { p_abs: f64 },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("step budget of {max_steps} exhausted at t = {t}")]
    StepBudgetExceeded { max_steps: usize, t: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("argument outside domain: {reason}")]
    DomainError { reason: String },

    #[error("zero is not a valid twist parameter")]
    ZeroInput,

    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}

impl Error {
    /// Stable variant name used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotUnimodular { .. } => "NotUnimodular",
            Error::WrongEigenvaluePattern { .. } => "WrongEigenvaluePattern",
            Error::RootFindingFailure { .. } => "RootFindingFailure",
            Error::SingularBasis { .. } => "SingularBasis",
            Error::IntegerOverflow => "IntegerOverflow",
            Error::BranchUndefined { .. } => "BranchUndefined",
            Error::StepUnderflow { .. } => "StepUnderflow",
            Error::StepBudgetExceeded { .. } => "StepBudgetExceeded",
            Error::EmptyInput => "EmptyInput",
            Error::DomainError { .. } => "DomainError",
            Error::ZeroInput => "ZeroInput",
            Error::InvalidArgument { .. } => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
