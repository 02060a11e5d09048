use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument {value} outside supported range [{lo}, {hi}] for {what}")]
    OutOfRange { what: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("enumeration budget exceeded: need {required}, budget {budget}")]
    Budget { required: u128, budget: u128 },

    #[error("not a clump configuration: {reason} (component {component:?})")]
    NotClumps { reason: String, component: Vec<usize> },

    #[error("no hyperplane decomposition with at most {r_max} planes")]
    NoDecomposition { r_max: usize },

    #[error("no nontrivial minorant: alpha = {alpha} ≤ j_(d/2-1,1)/π = {threshold}")]
    NoMinorant { alpha: f64, threshold: f64 },

    #[error("no sign change found while bracketing the first zero of J_{nu}")]
    NoBracket { nu: f64 },

    #[error("matrix is numerically rank deficient (sigma_min ≈ {sigma_min:e}, sigma_max ≈ {sigma_max:e})")]
    RankDeficient { sigma_min: f64, sigma_max: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("certificate violated: {0}")]
    Certificate(String),

    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
