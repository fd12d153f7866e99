use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the region where the conformal factor is defined.
    #[error("point with |x| = {norm} is outside the model domain (|x| < {limit})")]
    Domain { norm: f64, limit: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// The parameter Jacobian lost rank (chart pole or a genuine singularity).
    #[error("rank-deficient differential: singular value ratio {ratio:.3e}")]
    RankDeficient { ratio: f64 },

    /// A statement's hypothesis does not hold for the input; reported as SKIP.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("unresolved zero cluster: candidates {distance:.3e} apart, loop radius {radius:.3e}")]
    UnresolvedCluster { distance: f64, radius: f64 },

    #[error("non-integer winding {winding:.4} (residue {residue:.3})")]
    NonIntegerWinding { winding: f64, residue: f64 },

    #[error("zeros are not isolated: {0}")]
    NotIsolated(String),

    #[error("non-integrable boundary integrand: {0}")]
    NonIntegrable(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    /// Hypothesis violations are reported as skips rather than failures.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis(_) | Error::NotIsolated(_) | Error::NonIntegrable(_)
        )
    }
}
