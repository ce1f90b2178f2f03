use thiserror::Error;

use crate::rational::ParseRationalError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("negative payoff {value} at {locus}")]
    NegativePayoff { locus: String, value: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("not an equilibrium: {0}")]
    NotAnEquilibrium(String),

    #[error("linear program: {0}")]
    Lp(String),

    #[error("parse error at {locus}: {message}")]
    Parse { locus: String, message: String },

    #[error(transparent)]
    Rational(#[from] ParseRationalError),

    #[error("unknown example {0:?}")]
    UnknownExample(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid search config: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
