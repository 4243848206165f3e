use thiserror::Error;

/// Errors produced by the simulator and the bound calculators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system parameters: {0}")]
    InvalidParams(String),

    #[error("invalid popularity distribution: {0}")]
    InvalidDistribution(String),

    #[error("lower-bound instance requires even N (got N = {0})")]
    OddCatalog(usize),

    #[error("lower-bound instance constraint violated: {0}")]
    LowerBoundConstraint(String),

    #[error("popularity ingestion failed: {0}")]
    Ingest(String),

    #[error("exact delivery infeasible for {users} coded users (cap {cap}); use the analytic rate")]
    SubsetCapExceeded { users: usize, cap: usize },

    #[error("regret bound inapplicable: some p_i equals the threshold 1/(KM)")]
    ThresholdTie,

    #[error("cached subset must be nonempty")]
    EmptySubset,

    #[error("LFU requires an integer cache size (got M = {0})")]
    NonIntegerCache(f64),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
