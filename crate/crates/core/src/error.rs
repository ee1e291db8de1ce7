use thiserror::Error;

/// Errors raised while constructing or analysing spinors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid kinematics: {0}")]
    InvalidKinematics(String),
    #[error("phase {0} must be nonzero and finite")]
    ZeroPhase(&'static str),
    #[error("degenerate phases: Γ² deviates from identity by {residual:e}")]
    DegeneratePhases { residual: f64 },
    #[error("Γ operator and spinor were built at different kinematics or phases")]
    MismatchedContext,
    #[error("spinor is zero")]
    ZeroSpinor,
    #[error("spinor is not classifiable: {0}")]
    Unclassifiable(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
