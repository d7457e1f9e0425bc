use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator rows have rank zero")]
    DegenerateCode,

    #[error("format error: {0}")]
    Format(String),

    #[error("resource limit exceeded in {what}: reached {reached}, limit {limit}")]
    ResourceLimit {
        what: &'static str,
        reached: u128,
        limit: u128,
    },

    #[error("coordinate blocks do not partition the ambient space: {0}")]
    Partition(String),

    #[error("invalid gauge: {0}")]
    InvalidGauge(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vector is not in the lattice")]
    NotInLattice,

    /// A nonzero fractional part whose support is smaller than the code distance.
    #[error("fractional part {v0:?} has weight {weight} < d = {d}")]
    DecompositionAnomaly { v0: Vec<i64>, weight: usize, d: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("only {have} blocks share the selected gauge and exponent, need {need}")]
    InsufficientBlocks { need: usize, have: usize },

    #[error("monotonicity fails at every candidate pivot; witness {witness:?}")]
    Monotonicity { witness: Vec<f64> },
}
