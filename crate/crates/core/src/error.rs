use thiserror::Error;

/// Errors raised by the samplers, the mixture algebra and the verification harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("power parameter must be a finite real >= 1, got {0}")]
    Power(f64),
    #[error("level k = {k} outside 1..={d}")]
    Level { k: usize, d: usize },
    #[error("invalid beta shape (m = {m}, n = {n})")]
    Shape { m: i64, n: i64 },
    #[error("probability level must lie in (0, 1), got {0}")]
    Probability(f64),
    #[error("Clayton radial parameter a = {a} requires a >= d - 1 = {min}")]
    Clayton { a: f64, min: f64 },
    #[error("invalid quantile table: {0}")]
    QuantileTable(String),
    #[error("invalid radial measure: {0}")]
    Measure(String),
    #[error("sample count must be positive")]
    EmptyBatch,
    #[error("{what} must be positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("inclusion-exclusion is capped at d = {max}, got {d}")]
    DimensionCap { d: usize, max: usize },
    #[error("max-id sampler consumed {0} Poisson points without stopping; the radial measure is suspect")]
    IterationCap(u64),
    #[error("samples are not sorted in ascending order")]
    Unsorted,
    #[error("at least {min} samples required, got {n}")]
    TooFewSamples { n: usize, min: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
