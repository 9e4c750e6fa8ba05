use thiserror::Error;

/// Errors shared across the toolkit.
///
/// Domain violations (bad inputs) are kept apart from resource limits so
/// callers can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Sieve limits below 2 cannot hold a single prime.
    #[error("limit {limit} is too small to sieve (minimum is 2)")]
    LimitTooSmall { limit: u64 },

    /// Building the table would exceed the configured memory budget.
    #[error(
        "sieving to {limit} needs about {required} bytes, over the {budget}-byte memory budget"
    )]
    MemoryBudget {
        limit: u64,
        required: u64,
        budget: u64,
    },

    /// A query referenced a number beyond the sieved range. Queries never
    /// silently fall back to an approximation.
    #[error("{value} is beyond the table limit {limit}")]
    BeyondTable { value: u64, limit: u64 },

    /// Range bounds are inverted or outside their documented domain.
    #[error("invalid range [{lo}, {hi}]: {reason}")]
    InvalidRange {
        lo: u64,
        hi: u64,
        reason: &'static str,
    },

    /// Partition operations accept even numbers >= 4 only.
    #[error("{n} is not an even number >= 4")]
    NotEven { n: u64 },

    /// Sub-set indices must be odd primes; even or composite indices
    /// generate no sums of two primes.
    #[error("sub-set index {q} is not an odd prime")]
    InvalidIndex { q: u64 },

    /// A real-valued argument fell outside its domain.
    #[error("{name} = {value} is out of domain: requires {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// Arithmetic on gap bounds overflowed 64 bits.
    #[error("gap end {p} + {g} + 1 overflows u64")]
    Overflow { p: u64, g: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
