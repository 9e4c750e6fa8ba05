//! Maximal runs of consecutive composites between primes.
//!
//! Two counting conventions are carried side by side: `g_all` counts every
//! integer in the run, `g_odd` only the odd ones. Both are computed by
//! direct counting over the run, never by a parity formula, because the two
//! conventions disagree in ways the criterion cares about.

use crate::error::{Error, Result};
use crate::primality::{is_prime, PrimeTable, MILLER_RABIN_WITNESSES};
use rayon::prelude::*;

/// Numbers per parallel scan chunk.
const SCAN_CHUNK: u64 = 1 << 22;

/// The longest run on record in the sources this toolkit reproduces:
/// 653 composites following this prime.
pub const RECORD_GAP_PRIME: u64 = 11_000_001_446_613_353;
pub const RECORD_GAP_LENGTH: u64 = 653;

/// A maximal run of consecutive composites and its bounding primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositeRun {
    pub preceding_prime: u64,
    /// First composite of the run (`preceding_prime + 1`); the `N` used by
    /// the clearing criterion.
    pub start: u64,
    pub following_prime: u64,
    /// Composites in the run, counting all integers.
    pub g_all: u64,
    /// Composites in the run, counting odd integers only.
    pub g_odd: u64,
}

fn run_between(preceding: u64, following: u64) -> CompositeRun {
    debug_assert!(following > preceding + 1);
    let mut g_odd = 0;
    let mut n = preceding + 1;
    while n < following {
        if n % 2 == 1 {
            g_odd += 1;
        }
        n += 1;
    }
    CompositeRun {
        preceding_prime: preceding,
        start: preceding + 1,
        following_prime: following,
        g_all: following - preceding - 1,
        g_odd,
    }
}

/// All maximal composite runs fully contained in `[lo, hi]` with
/// `g_all >= min_g_all`, ascending by start.
///
/// Primes are gathered over fixed-size sub-ranges in parallel and stitched
/// in order, so the result is independent of chunking and thread count.
pub fn scan_gaps(
    table: &PrimeTable,
    lo: u64,
    hi: u64,
    min_g_all: u64,
) -> Result<Vec<CompositeRun>> {
    if lo < 2 || lo >= hi {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "requires 2 <= lo < hi",
        });
    }
    if hi > table.limit() {
        return Err(Error::BeyondTable {
            value: hi,
            limit: table.limit(),
        });
    }

    let bounds: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut at = lo;
        while at <= hi {
            let end = at.saturating_add(SCAN_CHUNK - 1).min(hi);
            v.push((at, end));
            at = end + 1;
        }
        v
    };
    let prime_chunks: Vec<Vec<u64>> = bounds
        .par_iter()
        .map(|&(c_lo, c_hi)| table.primes_in(c_lo, c_hi).expect("validated").collect())
        .collect();

    let threshold = min_g_all.max(1);
    let mut runs = Vec::new();
    let mut prev: Option<u64> = None;
    for p in prime_chunks.into_iter().flatten() {
        if let Some(q) = prev {
            let g_all = p - q - 1;
            if g_all >= threshold {
                runs.push(run_between(q, p));
            }
        }
        prev = Some(p);
    }
    Ok(runs)
}

/// The record-breaking runs up to `hi`: each strictly exceeds every earlier
/// run's `g_all`.
pub fn record_gaps(table: &PrimeTable, hi: u64) -> Result<Vec<CompositeRun>> {
    if hi < 3 {
        return Err(Error::InvalidRange {
            lo: 2,
            hi,
            reason: "requires hi >= 3",
        });
    }
    if hi > table.limit() {
        return Err(Error::BeyondTable {
            value: hi,
            limit: table.limit(),
        });
    }
    let mut records = Vec::new();
    let mut best = 0;
    let mut prev: Option<u64> = None;
    for p in table.primes_in(2, hi)? {
        if let Some(q) = prev {
            let g_all = p - q - 1;
            if g_all > best {
                records.push(run_between(q, p));
                best = g_all;
            }
        }
        prev = Some(p);
    }
    Ok(records)
}

/// Why a claimed gap failed verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapDefect {
    /// The claimed preceding prime is composite.
    PrecedingComposite,
    /// The claimed following prime (`p + g_all + 1`) is composite.
    FollowingComposite,
    /// A prime interrupts the claimed run.
    InteriorPrime(u64),
}

/// Checkable record of a gap verification.
///
/// `witnesses` is the fixed base set behind the two bounding primality
/// verdicts; `composites_checked` counts the interior numbers proven
/// composite before the check settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCertificate {
    pub preceding_prime: u64,
    pub claimed_g_all: u64,
    pub following_prime: u64,
    pub g_odd: u64,
    pub composites_checked: u64,
    pub witnesses: &'static [u64],
    pub valid: bool,
    pub defect: Option<GapDefect>,
}

/// Verify that exactly `claimed_g_all` composites follow the prime `p`
/// before the next prime. Runs on the deterministic witness test, so it
/// works far beyond any sieveable range.
pub fn verify_record_gap(p: u64, claimed_g_all: u64) -> Result<GapCertificate> {
    if p < 2 {
        return Err(Error::InvalidRange {
            lo: 2,
            hi: p,
            reason: "the preceding prime must be at least 2",
        });
    }
    let following = p
        .checked_add(claimed_g_all)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow {
            p,
            g: claimed_g_all,
        })?;

    let mut cert = GapCertificate {
        preceding_prime: p,
        claimed_g_all,
        following_prime: following,
        g_odd: 0,
        composites_checked: 0,
        witnesses: &MILLER_RABIN_WITNESSES,
        valid: false,
        defect: None,
    };
    if !is_prime(p) {
        cert.defect = Some(GapDefect::PrecedingComposite);
        return Ok(cert);
    }
    let mut n = p + 1;
    while n < following {
        if is_prime(n) {
            cert.defect = Some(GapDefect::InteriorPrime(n));
            return Ok(cert);
        }
        cert.composites_checked += 1;
        if n % 2 == 1 {
            cert.g_odd += 1;
        }
        n += 1;
    }
    if !is_prime(following) {
        cert.defect = Some(GapDefect::FollowingComposite);
        return Ok(cert);
    }
    cert.valid = true;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_multi_composite_gap() {
        let t = PrimeTable::build(200).unwrap();
        let runs = scan_gaps(&t, 7, 12, 1).unwrap();
        assert_eq!(
            runs,
            vec![CompositeRun {
                preceding_prime: 7,
                start: 8,
                following_prime: 11,
                g_all: 3,
                g_odd: 1,
            }]
        );
    }

    #[test]
    fn gap_after_113() {
        let t = PrimeTable::build(200).unwrap();
        let runs = scan_gaps(&t, 2, 130, 10).unwrap();
        assert_eq!(runs.len(), 1);
        let run = runs[0];
        assert_eq!(run.preceding_prime, 113);
        assert_eq!(run.start, 114);
        assert_eq!(run.following_prime, 127);
        assert_eq!(run.g_all, 13);
        assert_eq!(run.g_odd, 6); // 115 117 119 121 123 125
    }

    #[test]
    fn runs_require_containment() {
        let t = PrimeTable::build(200).unwrap();
        // following prime 127 > 126, so the run after 113 is excluded.
        let runs = scan_gaps(&t, 2, 126, 10).unwrap();
        assert!(runs.is_empty());
    }

    #[test]
    fn scan_bounds_validation() {
        let t = PrimeTable::build(100).unwrap();
        assert!(matches!(
            scan_gaps(&t, 1, 50, 1),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            scan_gaps(&t, 50, 50, 1),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            scan_gaps(&t, 2, 101, 1),
            Err(Error::BeyondTable { .. })
        ));
    }

    #[test]
    fn g_odd_counts_directly() {
        let t = PrimeTable::build(10_000).unwrap();
        for run in scan_gaps(&t, 2, 10_000, 1).unwrap() {
            let odd = (run.start..run.following_prime)
                .filter(|n| n % 2 == 1)
                .count() as u64;
            let even = (run.start..run.following_prime)
                .filter(|n| n % 2 == 0)
                .count() as u64;
            assert_eq!(run.g_odd, odd);
            assert_eq!(run.g_all - even, run.g_odd);
            assert!(run.g_odd <= run.g_all);
        }
    }

    #[test]
    fn first_records() {
        let t = PrimeTable::build(100).unwrap();
        let records = record_gaps(&t, 100).unwrap();
        let summary: Vec<(u64, u64)> = records
            .iter()
            .map(|r| (r.preceding_prime, r.g_all))
            .collect();
        assert_eq!(summary, vec![(3, 1), (7, 3), (23, 5), (89, 7)]);
    }

    #[test]
    fn records_up_to_ten() {
        let t = PrimeTable::build(100).unwrap();
        let records = record_gaps(&t, 10).unwrap();
        let summary: Vec<(u64, u64)> = records
            .iter()
            .map(|r| (r.preceding_prime, r.g_all))
            .collect();
        // The run after 7 completes only at 11, beyond this bound.
        assert_eq!(summary, vec![(3, 1)]);
        let records = record_gaps(&t, 11).unwrap();
        let summary: Vec<(u64, u64)> = records
            .iter()
            .map(|r| (r.preceding_prime, r.g_all))
            .collect();
        assert_eq!(summary, vec![(3, 1), (7, 3)]);
    }

    #[test]
    fn records_strictly_increase() {
        let t = PrimeTable::build(100_000).unwrap();
        let records = record_gaps(&t, 100_000).unwrap();
        for pair in records.windows(2) {
            assert!(pair[1].g_all > pair[0].g_all);
        }
    }

    #[test]
    fn verify_small_gap() {
        let cert = verify_record_gap(7, 3).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.following_prime, 11);
        assert_eq!(cert.composites_checked, 3);
        assert_eq!(cert.g_odd, 1);
        assert_eq!(cert.witnesses, &MILLER_RABIN_WITNESSES);
    }

    #[test]
    fn verify_rejects_wrong_claims() {
        // Claimed following prime 10 is composite.
        let cert = verify_record_gap(7, 2).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.defect, Some(GapDefect::FollowingComposite));

        // 11 interrupts the claimed run.
        let cert = verify_record_gap(7, 5).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.defect, Some(GapDefect::InteriorPrime(11)));

        // 8 is not prime.
        let cert = verify_record_gap(8, 2).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.defect, Some(GapDefect::PrecedingComposite));
    }

    #[test]
    fn verify_overflow_guard() {
        assert!(matches!(
            verify_record_gap(u64::MAX - 1, 10),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn scan_independent_of_chunking() {
        // SCAN_CHUNK exceeds this range, so also scan via narrow windows
        // and stitch manually against the one-shot result.
        let t = PrimeTable::build(50_000).unwrap();
        let whole = scan_gaps(&t, 2, 50_000, 1).unwrap();
        let first = scan_gaps(&t, 2, 25_000, 1).unwrap();
        let second = scan_gaps(&t, 25_000, 50_000, 1).unwrap();
        for run in whole {
            let contained = |r: &CompositeRun| *r == run;
            assert!(
                first.iter().any(contained)
                    || second.iter().any(contained)
                    || (run.start < 25_000 && run.following_prime > 25_000),
                "run at {} lost by windowing",
                run.start
            );
        }
    }
}
