use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("equilibrium support has {intervals} intervals; only one-cut measures are supported")]
    MultiCut { intervals: usize },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("underflow: {0}")]
    Underflow(String),
    #[error("matrix is not skew-symmetric (defect {0:e})")]
    Assembly(f64),
    #[error("acceptance rate {0:.3} outside [0.1, 0.6]")]
    AcceptanceRate(f64),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("empty window: {0}")]
    EmptyWindow(String),
    #[error("too close to contour: {0}")]
    ContourProximity(String),
    #[error("record format: {0}")]
    Format(String),
}

impl Error {
    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence(_) | Error::Underflow(_) | Error::AcceptanceRate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
