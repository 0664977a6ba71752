use std::path::PathBuf;

/// Errors raised by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("pole of {what} at {at}")]
    Pole { what: &'static str, at: String },
    #[error("requested accuracy {target:e} is out of reach in double precision (best {achieved:e})")]
    PrecisionUnreachable { target: f64, achieved: f64 },
    #[error("|zeta(s)| = {abs:e} is below its error budget {err:e}; s is too close to a zero")]
    NearZero { abs: f64, err: f64 },
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{path}:{line}: ordinates must be strictly ascending")]
    NotAscending { path: PathBuf, line: usize },
    #[error("first ordinate {value} is not the first zeta zero 14.134725...")]
    FirstZero { value: f64 },
    #[error("zero count {count} at height {t} gives Q = {q:.4}, outside |Q| <= {limit:.4}; zeros were missed")]
    MissedZero { t: f64, count: usize, q: f64, limit: f64 },
    #[error("height {t} exceeds the verified height {t_max} of the zero list")]
    HeightExceeded { t: f64, t_max: f64 },
    #[error("phi is not {expected} on the requested interval")]
    MonotonicityMismatch { expected: &'static str },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable tag, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PoleAtOne => "pole_at_one",
            Error::Pole { .. } => "pole",
            Error::PrecisionUnreachable { .. } => "precision_unreachable",
            Error::NearZero { .. } => "near_zero",
            Error::Divergence(_) => "divergence",
            Error::Domain(_) => "domain",
            Error::Range(_) => "range",
            Error::Quadrature(_) => "quadrature",
            Error::Parse { .. } => "parse",
            Error::NotAscending { .. } => "not_ascending",
            Error::FirstZero { .. } => "first_zero",
            Error::MissedZero { .. } => "missed_zero",
            Error::HeightExceeded { .. } => "height_exceeded",
            Error::MonotonicityMismatch { .. } => "monotonicity_mismatch",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
