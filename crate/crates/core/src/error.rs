use thiserror::Error;

/// Errors raised by model construction and the verification checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("spacetime dimension must be at least 2, got {0}")]
    SpacetimeDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not a Lorentz transformation (residual {residual:.3e})")]
    NotLorentz { residual: f64 },

    #[error("matrix is not skew with respect to the Lorentz form (residual {residual:.3e})")]
    NotSkew { residual: f64 },

    #[error("invalid spectral decomposition: {0}")]
    InvalidSpectral(String),

    #[error("left and right warped convolutions disagree (residual {residual:.3e})")]
    WarpDisagreement { residual: f64 },

    #[error("no intertwiner registered for the requested Lorentz transformation")]
    MissingIntertwiner,

    #[error("intertwiner does not map the spectral measure covariantly: {0}")]
    BadIntertwiner(String),

    #[error("geometric precondition failed: {0}")]
    Precondition(String),

    #[error("duplicate mode at index {0}")]
    DuplicateMode(usize),

    #[error("Fock space dimension {dim} exceeds the limit {limit}")]
    DimensionGuard { dim: usize, limit: usize },

    #[error("momentum is not on a common positive mass shell")]
    OffShell,

    #[error("vector has weight outside the one-particle sector (norm {0:.3e})")]
    NotOneParticle(f64),

    #[error("empty support")]
    EmptySupport,

    #[error("configuration violates the precedence required for {0} states")]
    PrecedenceViolation(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
