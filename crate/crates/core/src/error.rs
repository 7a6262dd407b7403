use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("division by a value near zero at {point:?}")]
    DivisionNearZero { point: Vec<f64> },
    #[error("expression is not a polynomial")]
    NotPolynomial,
    #[error("fields live on different charts")]
    ChartMismatch,
    #[error("invalid component {indices:?} for a degree-{degree} field on a {dim}-dimensional chart")]
    InvalidComponent { indices: Vec<usize>, degree: usize, dim: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("volume form vanishes identically")]
    DegenerateVolume,
    #[error("operation requires an odd-dimensional chart, got dimension {0}")]
    EvenDimension(usize),
    #[error("operation requires an even-dimensional chart, got dimension {0}")]
    OddDimension(usize),
    #[error("dimension mismatch: source {source_dim}, target {target_dim}")]
    DimensionMismatch { source_dim: usize, target_dim: usize },
    #[error("form is not contact: alpha ^ (d alpha)^n vanishes at {point:?}")]
    NotContact { point: Vec<f64> },
    #[error("symbolic contact conversion supports dimension 3 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("homothety field is not the coordinate field d/d{0}")]
    NonCoordinateHomothety(String),
    #[error("vector field is not of weighted Euler type")]
    NotEulerField,
    #[error("no polynomial solution: n = {n} requires f without constant term")]
    NoPolynomialSolution { n: u32 },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
}
