use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("photon-number cutoff must be at least 1, got {0}")]
    Cutoff(usize),

    #[error("mode index must be 1, 2 or 3, got {0}")]
    InvalidMode(usize),

    #[error("invalid mode set {0:?}: must be a nonempty strict subset of the available modes")]
    InvalidModeSet(Vec<usize>),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("frequency is zero: {0}")]
    ZeroFrequency(&'static str),

    #[error("time grid must be nonempty, nonnegative and strictly increasing")]
    TimeGrid,

    #[error("norm drifted by {drift:.3e} at t = {t}")]
    NormDrift { t: f64, drift: f64 },

    #[error("density matrix lost positivity (min eigenvalue {min_eig:.3e}) at t = {t}")]
    Positivity { t: f64, min_eig: f64 },

    #[error("steady state is not unique: null space has dimension {0}")]
    DegenerateNullSpace(usize),

    #[error("steady-state solve failed: {0}")]
    SteadyState(String),

    #[error("sweep grid is empty or not strictly increasing")]
    SweepGrid,

    #[error("conflicting options: {0}")]
    ConflictingOptions(String),

    #[error("malformed config: {0}")]
    MalformedConfig(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code: 2-4 for configuration problems, 5 for numerical
    /// failures, 6 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConflictingOptions(_) => 2,
            Error::MalformedConfig(_) => 3,
            Error::OutOfRange(_) => 4,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => 6,
            _ => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
