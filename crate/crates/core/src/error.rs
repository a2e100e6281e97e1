use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no cycle")]
    AcyclicGraph,
    #[error("graph is not connected")]
    NotConnected,
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("value does not fit in the result type")]
    Overflow,
    #[error("eigensolver did not converge")]
    NumericalFailure,
    #[error("spectral radius is zero; eigenratio undefined")]
    DegenerateSpectrum,
    #[error("shortest-cycle incidence is empty")]
    EmptyIncidence,
    #[error("no connected sample after {0} attempts")]
    ExhaustedAttempts(usize),
    #[error("graph girth {actual} is below the floor {floor}")]
    GirthViolation { actual: String, floor: usize },
    #[error("initial values have zero norm")]
    ZeroInitialNorm,
    #[error("averaging did not converge within {0} rounds")]
    MaxRoundsExceeded(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Short machine-readable code used in sweep records.
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::AcyclicGraph => "acyclic",
            Error::NotConnected => "not_connected",
            Error::Domain(_) => "domain",
            Error::Overflow => "overflow",
            Error::NumericalFailure => "numerical_failure",
            Error::DegenerateSpectrum => "degenerate_spectrum",
            Error::EmptyIncidence => "empty_incidence",
            Error::ExhaustedAttempts(_) => "exhausted_attempts",
            Error::GirthViolation { .. } => "girth_violation",
            Error::ZeroInitialNorm => "zero_initial_norm",
            Error::MaxRoundsExceeded(_) => "max_rounds",
            Error::Parse { .. } => "parse",
            Error::Config(_) => "config",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}
