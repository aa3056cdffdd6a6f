use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported dimension {0}: only 2 and 3 are supported")]
    UnsupportedDimension(usize),

    #[error("invalid resolution {0}: points per axis must be 2^k or 3*2^k and at least 8")]
    InvalidResolution(usize),

    #[error("box length must be positive, got {0}")]
    NonPositiveBoxLength(f64),

    #[error("far-field density must be positive, got {0}")]
    NonPositiveFarField(f64),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("expected {expected} values for the grid, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("density not strictly positive: min {value:e} at index {index} (x = {position:?})")]
    DensityNotPositive {
        index: usize,
        position: Vec<f64>,
        value: f64,
    },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("block {j} beyond grid resolution (j_max = {j_max})")]
    BlockBeyondResolution { j: i32, j_max: i32 },

    #[error("grid too coarse for a dyadic decomposition (j_max = {0})")]
    GridTooCoarse(i32),

    #[error("empty time series")]
    EmptySeries,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state has the wrong formulation: expected {expected}")]
    WrongFormulation { expected: &'static str },

    #[error("time step {dt:e} violates the stability guard (limit {limit:e})")]
    CflViolation { dt: f64, limit: f64 },

    #[error("positivity lost at t = {t}: min density {min_density:e}; retry with half the time step ({hint_dt:e})")]
    PositivityLoss {
        t: f64,
        min_density: f64,
        hint_dt: f64,
    },

    #[error("solver failure at t = {t}: {source}")]
    StepFailed { t: f64, source: Box<Error> },

    #[error("unknown probe {0:?}")]
    UnknownProbe(String),

    #[error("snapshot format: {0}")]
    Snapshot(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
