use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid hyperplane: normal vector is zero")]
    ZeroNormal,

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("too many points: {given} given, at most {max} allowed")]
    TooManyPoints { given: usize, max: usize },

    #[error("exact arithmetic requires zero tolerance, got {0}")]
    NonzeroExactTolerance(f64),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("epsilon must be positive")]
    NonPositiveEpsilon,

    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error(
        "retry limit exhausted after {retries} perturbation rounds; nearest miss: {nearest_miss}"
    )]
    RetryLimit {
        retries: usize,
        nearest_miss: String,
    },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("no admissible direction at refinement level {level} (eps = {eps})")]
    NoAdmissibleDirection { level: usize, eps: f64 },

    #[error("direction sweep unsupported in dimension {0}")]
    SweepUnsupported(usize),

    #[error("invalid bounding box: {0}")]
    InvalidBox(String),
}
