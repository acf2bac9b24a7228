use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DspError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid Jordan normal form: {0}")]
    InvalidJnf(String),
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("reduction step undefined: {0}")]
    ReductionUndefined(String),
    #[error("invalid eigenvalue slot choice: {0}")]
    InvalidChoice(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),
    #[error("no generic eigenvalue assignment found after {0} attempts")]
    SamplingExhausted(usize),
    #[error("scalar has no exact image under the exponential map: {0}")]
    UnsupportedScalar(String),
    #[error("eigenvalue images collide: {0}")]
    SlotCollision(String),
    #[error("index of rigidity is {0}, expected 2")]
    KappaNotTwo(i64),
    #[error("every restart produced ill-conditioned conjugators")]
    IllConditioned,
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
}

pub type Result<T, E = DspError> = std::result::Result<T, E>;
