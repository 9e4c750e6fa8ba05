//! Number-theory verification toolkit: prime sieving and exact counting,
//! Goldbach partition search and exhaustive range verification, even-number
//! coverage by prime-pair sums, prime gap scanning, and the empirical
//! gap-clearing criterion `pi(N) >= G * ln(N)`.
//!
//! Everything is deterministic: no seeds, no probabilistic primality, and
//! results independent of thread count.

mod bits;
pub mod criterion;
pub mod error;
pub mod gaps;
pub mod goldbach;
pub mod primality;
pub mod report;
pub mod subsets;

pub use error::{Error, Result};
pub use primality::{is_prime, PrimeTable, PrimeTableBuilder, MILLER_RABIN_WITNESSES};

pub use goldbach::{
    count_partitions, min_partition, verify_range, GoldbachPartition, VerificationReport,
};

pub use subsets::{
    cumulative_coverage, extract_gaps, subset_row, EvenGap, SubsetCoverage, SubsetRow,
};

pub use gaps::{
    record_gaps, scan_gaps, verify_record_gap, CompositeRun, GapCertificate, GapDefect,
    RECORD_GAP_LENGTH, RECORD_GAP_PRIME,
};

pub use criterion::{
    check_criterion, criterion_ratio, criterion_row, figure1, figure1_default, li, pi_over_ln,
    record_gap_row, required_primes, CriterionReport, CriterionRow, Figure1Row, GapConvention,
    PiSource, FIGURE1_EXPONENTS, PI_1E16_REFERENCE, PI_1E8,
};

pub use report::{one_significant, pow10_label, Cell, Format, Table};
