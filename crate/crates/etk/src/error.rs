//! Error type shared by the solver, the improvement and the oracle.

use thiserror::Error;

/// Errors produced by the envelope-theory machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// System definition violates an invariant (N < 2, m ≤ 0, bad quantum numbers, ...).
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    /// A potential or kinematics family was built with out-of-range parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Evaluation left the mathematical domain (singular point, non-finite value,
    /// undefined relative error, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The compact equations (or the oracle) admit no bound-state solution.
    #[error("no bound state: {0}")]
    NoBoundState(String),

    /// The requested improvement is not defined for this configuration
    /// (one-dimensional systems, vanishing orbital quantum number, ...).
    #[error("improvement unavailable: {0}")]
    UnsupportedImprovement(String),

    /// The dominantly-orbital coupling exists but yields no stable oscillation
    /// (effective spring constant k ≤ 0).
    #[error("improvement undefined: {0}")]
    ImprovementUndefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
