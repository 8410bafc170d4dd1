use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid isometry '{name}': {reason}")]
    InvalidIsometry { name: String, reason: String },

    #[error("group exceeds bound of {0} elements")]
    GroupExceedsBound(usize),

    #[error("unsupported singularity: {0}")]
    UnsupportedSingularity(String),

    #[error("non-calibrated stratum: {0}")]
    NonCalibratedStratum(String),

    #[error("stratum {0} carries no invariant 1-form")]
    MissingOneForm(String),

    #[error("invalid stratum anchor: {0}")]
    InvalidAnchor(String),

    #[error("degenerate pairing in degree {0}")]
    DegeneratePairing(usize),

    #[error("unknown stratum label '{0}'")]
    UnknownStratum(String),

    #[error("Massey product not well-defined: {0}")]
    NotWellDefined(String),

    #[error("non-transverse intersection: {0}")]
    NonTransverse(String),

    #[error("cobordism endpoint matches no stratum: {0}")]
    UnmatchedBoundary(String),

    #[error("invalid cobordism: {0}")]
    InvalidCobordism(String),

    #[error("{0}")]
    Parse(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
}

impl Error {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { path: path.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
