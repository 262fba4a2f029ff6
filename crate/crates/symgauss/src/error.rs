use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid multiplicities for family {family}: {reason}")]
    Multiplicity { family: String, reason: String },

    #[error("rank {rank} below minimum {min} for family {family}")]
    RankTooSmall { family: String, rank: usize, min: usize },

    #[error("rank {rank} exceeds cap {cap} for {what}")]
    RankCap { what: &'static str, rank: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is not a type IV (complex) descriptor with metric_c = 4")]
    NotTypeIv(String),

    #[error("degrees are not defined for the non-reduced BC family")]
    NonReduced,

    #[error("Weyl sum cancels (relative residue {residue:.3e}); the point is too close to a wall, perturb it")]
    WallProximity { residue: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error estimate {error_estimate:.3e}")]
    QuadNonConvergence { estimate: f64, error_estimate: f64 },

    #[error("singular configuration: {0}")]
    Singular(String),
}
