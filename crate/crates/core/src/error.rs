use thiserror::Error;

/// How a failure should be reported to a caller such as the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Validation,
    Guard,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a Cartan matrix: {0}")]
    NotCartan(String),
    #[error("Cartan matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("parity violation: odd label {label} has odd entry a[{label}][{column}] = {entry}")]
    ParityViolation {
        label: String,
        column: String,
        entry: i64,
    },
    #[error("malformed datum: {0}")]
    MalformedDatum(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("position {position} out of range for length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("malformed query: {0}")]
    MalformedQuery(String),
    #[error("block labels must be pairwise distinct")]
    RepeatedLabels,
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),
    #[error("{0} is not a rearrangement of {1}")]
    NotRearrangement(String, String),
    #[error("level {ell} is smaller than rank {n}: the cyclotomic quotient is zero")]
    LevelTooSmall { n: usize, ell: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator index {index} out of range for rank {n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("{what} has size {size}, exceeding the cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("computation guard tripped: {0}")]
    GuardTripped(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotCartan(_) => "E_NOT_CARTAN",
            Error::NotSymmetrizable(_) => "E_NOT_SYMMETRIZABLE",
            Error::ParityViolation { .. } => "E_PARITY",
            Error::MalformedDatum(_) => "E_MALFORMED_DATUM",
            Error::UnknownLabel(_) => "E_UNKNOWN_LABEL",
            Error::Parse(_) => "E_PARSE",
            Error::PositionOutOfRange { .. } => "E_POSITION",
            Error::MalformedQuery(_) => "E_QUERY",
            Error::RepeatedLabels => "E_REPEATED_LABELS",
            Error::CompositionMismatch(_) => "E_COMPOSITION",
            Error::NotRearrangement(..) => "E_NOT_REARRANGEMENT",
            Error::LevelTooSmall { .. } => "E_LEVEL",
            Error::RankMismatch(..) => "E_RANK",
            Error::GeneratorOutOfRange { .. } => "E_GENERATOR",
            Error::CapExceeded { .. } => "E_CAP",
            Error::GuardTripped(_) => "E_GUARD",
            Error::Internal(_) => "E_INTERNAL",
        }
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse(_) | Error::UnknownLabel(_) => ErrorCategory::Parse,
            Error::CapExceeded { .. } | Error::GuardTripped(_) | Error::Internal(_) => {
                ErrorCategory::Guard
            }
            _ => ErrorCategory::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
