use thiserror::Error;

/// Errors raised by the toolkit. Each variant maps to one failure class of
/// the public operations; the CLI turns all of them into exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("approximation error: {0}")]
    Approximation(String),
    #[error("k = {k} is not suitable (minimal suitable k is {minimal})")]
    Suitability { k: u64, minimal: String },
    #[error("size guard: {size} exceeds limit {limit}")]
    SizeGuard { size: String, limit: String },
    #[error("membership error: {0}")]
    Membership(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("empty slice: {0}")]
    EmptySlice(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("negative coefficient {0} is not allowed on the cardinality side")]
    NegativeCoefficient(String),
    #[error("cover error: {0}")]
    Cover(String),
}

pub type Result<T> = std::result::Result<T, Error>;
