use thiserror::Error;

/// Errors raised by the numerical and algebraic operations of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra dimension {0} is outside the supported range 1..=12")]
    Dimension(usize),

    #[error("dimension mismatch: left operand has n = {left}, right operand has n = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular input: {0}")]
    Singular(&'static str),

    #[error("vector is not a unit imaginary (|u|^2 = {0})")]
    NotUnit(f64),

    #[error("basis completion failed: {0} consecutive candidates were degenerate")]
    DegenerateCandidate(usize),

    #[error("basis frame is invalid: {0}")]
    FrameInvalid(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("empty grid")]
    EmptyGrid,

    #[error("too few nodes: need at least {need}, got {got}")]
    TooFewNodes { need: usize, got: usize },

    #[error("point {point} does not lie on the sampled slice pair ({detail})")]
    PointSliceMismatch { point: String, detail: String },

    #[error("slice mismatch: {0}")]
    SliceMismatch(String),

    #[error("cannot truncate half-line integral with decay rate {0}")]
    CannotTruncate(f64),

    #[error("defect undefined for a zero function")]
    ZeroFunction,

    #[error("exponent p = {0} outside [1, 2]")]
    ExponentRange(f64),

    #[error("point outside the domain: {0}")]
    OutsideDomain(String),

    #[error("spectrum is not supported on (-inf, 0]: outside energy fraction {fraction:e} exceeds {tol:e}")]
    NonHardySpectrum { fraction: f64, tol: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
