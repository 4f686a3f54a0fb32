use thiserror::Error;

/// Errors raised while constructing or evaluating GFGM objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {d} not supported (expected {expected})")]
    Dimension { d: usize, expected: &'static str },

    #[error("negative probability {value} at outcome {mask:#b}")]
    NegativeMass { mask: u64, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    Normalization { sum: f64 },

    #[error("duplicate outcome {mask:#b}")]
    DuplicateAtom { mask: u64 },

    #[error("outcome {mask:#b} does not fit in dimension {d}")]
    MaskOutOfRange { mask: u64, d: usize },

    #[error("margin {index} equals {value}; margins must lie strictly inside (0, 1)")]
    DegenerateMargin { index: usize, value: f64 },

    #[error("margins of the Bernoulli pmf do not match the shape vector at index {index}: {pmf} vs {shape}")]
    MarginMismatch { index: usize, pmf: f64, shape: f64 },

    #[error("theta = {theta} outside admissible interval [{lower}, {upper}]")]
    ThetaOutOfRange { theta: f64, lower: f64, upper: f64 },

    #[error("point coordinate {index} = {value} outside [0, 1]")]
    OutsideUnitCube { index: usize, value: f64 },

    #[error("point has {got} coordinates, copula has dimension {expected}")]
    PointDimension { got: usize, expected: usize },

    #[error("invalid moment sequence: induced mass {value} at {at}")]
    InvalidMomentSequence { at: String, value: f64 },

    #[error("shape vectors differ; copulas with different p are not comparable")]
    ShapeMismatch,

    #[error("{what}: got {got}, need at least {min}")]
    TooSmall {
        what: &'static str,
        got: usize,
        min: usize,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
