//! Coverage of even numbers by prime-pair sums with a fixed smaller addend.
//!
//! For an odd prime `q`, the sub-set `{q + P_i}` contains every even
//! `n = q + p` where `p` ranges over the odd primes: `n` is generated
//! exactly when `n - q` is prime. Applying sub-sets cumulatively for
//! `q = 3, 5, 7, ...` covers even numbers one index at a time; the numbers
//! still uncovered after a set of indices form gaps. `4 = 2 + 2` is handled
//! by the base case outside this model, so coverage tracks `[6, even_limit]`.
//!
//! Composite odd indices (9, 15, ...) generate no prime-pair sums; they are
//! modeled by omission rather than as empty rows.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::primality::{is_prime, PrimeTable};
use rayon::prelude::*;

/// Evens handled per parallel work unit when building coverage.
const COVER_CHUNK_EVENS: usize = 1 << 15;

/// Membership row for a single index `q`: which evens in `[q + 3,
/// even_limit]` are `q` plus a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetRow {
    q: u64,
    even_limit: u64,
    bits: Bits, // bit i <-> even number q + 3 + 2i
}

impl SubsetRow {
    pub fn index(&self) -> u64 {
        self.q
    }

    pub fn even_limit(&self) -> u64 {
        self.even_limit
    }

    /// First even number in the row's domain.
    pub fn first_even(&self) -> u64 {
        self.q + 3
    }

    /// True when `n` is in the row's domain and `n - q` is prime.
    pub fn generates(&self, n: u64) -> bool {
        if n % 2 != 0 || n < self.q + 3 || n > self.even_limit {
            return false;
        }
        self.bits.get(((n - self.q - 3) / 2) as usize)
    }

    /// Plain-text grid of the row in the tabular layout: evens from
    /// `q + 1` upward, `columns` per line, non-generated numbers wrapped
    /// in asterisks. `q + 1` itself is never generated (1 is non-prime).
    pub fn render(&self, even_limit: u64, columns: usize) -> Result<String> {
        validate_render(self.q + 1, even_limit, self.even_limit, columns)?;
        Ok(render_grid(self.q + 1, even_limit, columns, |n| {
            self.generates(n)
        }))
    }
}

/// Build the membership row for odd prime `q`.
pub fn subset_row(table: &PrimeTable, q: u64, even_limit: u64) -> Result<SubsetRow> {
    if q < 3 || q % 2 == 0 || !is_prime(q) {
        return Err(Error::InvalidIndex { q });
    }
    validate_even_limit(table, even_limit, q + 3)?;
    let n_bits = ((even_limit - q - 3) / 2 + 1) as usize;
    let mut bits = Bits::zeros(n_bits);
    for p in table.primes_in(3, even_limit - q)? {
        bits.set(((p - 3) / 2) as usize);
    }
    Ok(SubsetRow {
        q,
        even_limit,
        bits,
    })
}

/// Cumulative cover state after applying every odd prime index `q <=
/// max_index` to the evens of `[6, even_limit]`.
///
/// A number is covered exactly when its minimal partition prime is at most
/// `max_index`; `first_cover_index` records that prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCoverage {
    even_limit: u64,
    max_index: u64,
    indices: Vec<u64>,
    first_cover: Vec<u32>, // by (n - 6) / 2; 0 = uncovered
}

impl SubsetCoverage {
    pub fn even_limit(&self) -> u64 {
        self.even_limit
    }

    pub fn max_index(&self) -> u64 {
        self.max_index
    }

    /// The odd prime indices applied, ascending.
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn is_covered(&self, n: u64) -> bool {
        self.first_cover_index(n).is_some()
    }

    /// Smallest index that covered `n`, or `None` while `n` is uncovered.
    pub fn first_cover_index(&self, n: u64) -> Option<u64> {
        debug_assert!(n >= 6 && n <= self.even_limit && n % 2 == 0);
        match self.first_cover[((n - 6) / 2) as usize] {
            0 => None,
            q => Some(u64::from(q)),
        }
    }

    /// Plain-text grid of the cumulative table: evens from 4 upward,
    /// uncovered numbers wrapped in asterisks. 4 renders covered — the
    /// 2 + 2 base case is settled before this model applies.
    pub fn render(&self, even_limit: u64, columns: usize) -> Result<String> {
        validate_render(4, even_limit, self.even_limit, columns)?;
        Ok(render_grid(4, even_limit, columns, |n| {
            n == 4 || self.is_covered(n)
        }))
    }
}

/// Apply every sub-set row with an odd prime index `q <= max_index`.
pub fn cumulative_coverage(
    table: &PrimeTable,
    max_index: u64,
    even_limit: u64,
) -> Result<SubsetCoverage> {
    if max_index < 3 {
        return Err(Error::InvalidIndex { q: max_index });
    }
    validate_even_limit(table, even_limit, 6)?;
    let indices: Vec<u64> = table.primes_in(3, max_index.min(even_limit - 3))?.collect();

    let n_evens = ((even_limit - 6) / 2 + 1) as usize;
    let mut first_cover = vec![0u32; n_evens];
    first_cover
        .par_chunks_mut(COVER_CHUNK_EVENS)
        .enumerate()
        .for_each(|(ci, chunk)| {
            for (i, slot) in chunk.iter_mut().enumerate() {
                let n = 6 + 2 * (ci * COVER_CHUNK_EVENS + i) as u64;
                for &q in &indices {
                    if q + 3 > n {
                        break;
                    }
                    if table.contains(n - q) {
                        *slot = u32::try_from(q).expect("cover index fits in 32 bits");
                        break;
                    }
                }
            }
        });

    Ok(SubsetCoverage {
        even_limit,
        max_index,
        indices,
        first_cover,
    })
}

/// A maximal run of consecutive uncovered even numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvenGap {
    /// First uncovered even number of the run.
    pub start: u64,
    /// Count of consecutive uncovered evens (the gap length G).
    pub length: u64,
}

/// Maximal uncovered runs of a coverage, ascending.
pub fn extract_gaps(coverage: &SubsetCoverage) -> Vec<EvenGap> {
    let mut gaps = Vec::new();
    let mut open: Option<(u64, u64)> = None;
    let mut n = 6;
    while n <= coverage.even_limit {
        if coverage.is_covered(n) {
            if let Some((start, length)) = open.take() {
                gaps.push(EvenGap { start, length });
            }
        } else {
            open = Some(match open {
                Some((start, length)) => (start, length + 1),
                None => (n, 1),
            });
        }
        n += 2;
    }
    if let Some((start, length)) = open {
        gaps.push(EvenGap { start, length });
    }
    gaps
}

fn validate_even_limit(table: &PrimeTable, even_limit: u64, min: u64) -> Result<()> {
    if even_limit % 2 != 0 || even_limit < min {
        return Err(Error::InvalidRange {
            lo: min,
            hi: even_limit,
            reason: "even limit must be an even number at or above the domain start",
        });
    }
    if even_limit > table.limit() {
        return Err(Error::BeyondTable {
            value: even_limit,
            limit: table.limit(),
        });
    }
    Ok(())
}

fn validate_render(start: u64, even_limit: u64, max_limit: u64, columns: usize) -> Result<()> {
    if columns < 1 {
        return Err(Error::InvalidRange {
            lo: 1,
            hi: columns as u64,
            reason: "a grid needs at least one column",
        });
    }
    if even_limit % 2 != 0 || even_limit < start || even_limit > max_limit {
        return Err(Error::InvalidRange {
            lo: start,
            hi: even_limit,
            reason: "render limit must be even and within the built range",
        });
    }
    Ok(())
}

fn render_grid(
    start: u64,
    even_limit: u64,
    columns: usize,
    covered: impl Fn(u64) -> bool,
) -> String {
    let cells = ((even_limit - start) / 2 + 1) as usize;
    let mut out = String::with_capacity(cells * 5);
    let mut col = 0;
    let mut n = start;
    while n <= even_limit {
        if col > 0 {
            out.push(' ');
        }
        if covered(n) {
            out.push_str(&n.to_string());
        } else {
            out.push('*');
            out.push_str(&n.to_string());
            out.push('*');
        }
        col += 1;
        if col == columns {
            out.push('\n');
            col = 0;
        }
        n += 2;
    }
    if col > 0 {
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::build(1_000).unwrap()
    }

    #[test]
    fn row_three_leaves_94_96_98_unmarked() {
        let t = table();
        let row = subset_row(&t, 3, 200).unwrap();
        for n in [94u64, 96, 98] {
            assert!(!row.generates(n), "{n} - 3 is composite");
        }
        assert!(row.generates(100)); // 97 prime
    }

    #[test]
    fn row_three_marks_small_evens() {
        let t = table();
        let row = subset_row(&t, 3, 10).unwrap();
        assert!(row.generates(6) && row.generates(8) && row.generates(10));
        assert!(!row.generates(4)); // below domain
        assert!(!row.generates(12)); // above limit
        assert!(!row.generates(7)); // odd
    }

    #[test]
    fn row_seven_misses_98_and_142() {
        let t = table();
        let row = subset_row(&t, 7, 200).unwrap();
        assert!(!row.generates(98)); // 91 = 7 * 13
        assert!(!row.generates(142)); // 135 composite
        assert!(!row.generates(100)); // 93 = 3 * 31
        assert!(row.generates(104)); // 97 prime
        assert!(row.generates(108)); // 101 prime
    }

    #[test]
    fn invalid_indices_rejected() {
        let t = table();
        for q in [9u64, 15, 1, 0, 2, 4, 21] {
            assert_eq!(
                subset_row(&t, q, 200).unwrap_err(),
                Error::InvalidIndex { q },
                "q={q}"
            );
        }
    }

    #[test]
    fn row_limit_validation() {
        let t = table();
        assert!(matches!(
            subset_row(&t, 3, 5),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            subset_row(&t, 3, 201),
            Err(Error::InvalidRange { .. }) // odd limit
        ));
        assert!(matches!(
            subset_row(&t, 3, 2_000),
            Err(Error::BeyondTable { .. })
        ));
    }

    #[test]
    fn coverage_through_seven_clears_94_96_not_98() {
        let t = table();
        let cov = cumulative_coverage(&t, 7, 200).unwrap();
        assert!(cov.is_covered(94)); // 5 + 89
        assert!(cov.is_covered(96)); // 7 + 89
        assert!(!cov.is_covered(98)); // 95, 93, 91 all composite
        assert_eq!(cov.first_cover_index(94), Some(5));
        assert_eq!(cov.first_cover_index(96), Some(7));
        assert_eq!(cov.first_cover_index(98), None);
    }

    #[test]
    fn coverage_122_and_126_clear_together_at_13() {
        let t = table();
        let before = cumulative_coverage(&t, 11, 200).unwrap();
        assert!(!before.is_covered(122) && !before.is_covered(126));
        let after = cumulative_coverage(&t, 13, 200).unwrap();
        assert!(after.is_covered(122) && after.is_covered(126));
        assert_eq!(after.first_cover_index(122), Some(13)); // 13 + 109
        assert_eq!(after.first_cover_index(126), Some(13)); // 13 + 113
    }

    #[test]
    fn single_row_coverage() {
        let t = table();
        let cov = cumulative_coverage(&t, 3, 10).unwrap();
        let covered: Vec<u64> = (6..=10).step_by(2).filter(|&n| cov.is_covered(n)).collect();
        assert_eq!(covered, vec![6, 8, 10]);
        assert_eq!(cov.indices(), &[3]);
    }

    #[test]
    fn coverage_monotone_in_index() {
        let t = table();
        let small = cumulative_coverage(&t, 7, 400).unwrap();
        let large = cumulative_coverage(&t, 13, 400).unwrap();
        for n in (6..=400u64).step_by(2) {
            if small.is_covered(n) {
                assert!(large.is_covered(n), "adding indices may not uncover {n}");
            }
        }
    }

    #[test]
    fn gaps_of_row_three_include_94_96_98() {
        let t = table();
        let cov = cumulative_coverage(&t, 3, 100).unwrap();
        let gaps = extract_gaps(&cov);
        assert!(gaps.contains(&EvenGap {
            start: 94,
            length: 3
        }));
    }

    #[test]
    fn fully_covered_has_no_gaps() {
        let t = table();
        // Every even in [6, 200] has a minimal partition prime <= 19.
        let cov = cumulative_coverage(&t, 19, 200).unwrap();
        assert!(extract_gaps(&cov).is_empty());
    }

    #[test]
    fn render_row_three_first_line() {
        let t = table();
        let row = subset_row(&t, 3, 200).unwrap();
        let grid = row.render(200, 11).unwrap();
        let first = grid.lines().next().unwrap();
        assert_eq!(first, "*4* 6 8 10 *12* 14 16 *18* 20 22 *24*");
        assert_eq!(grid.lines().count(), 9); // 99 cells in rows of 11
        assert!(grid.ends_with('\n'));
    }

    #[test]
    fn render_single_cell() {
        let t = table();
        let cov = cumulative_coverage(&t, 3, 6).unwrap();
        assert_eq!(cov.render(4, 11).unwrap(), "4\n");
    }

    #[test]
    fn render_through_17_leaves_exactly_98_and_128() {
        let t = table();
        let cov = cumulative_coverage(&t, 17, 200).unwrap();
        let grid = cov.render(200, 11).unwrap();
        let marked: Vec<&str> = grid
            .split_whitespace()
            .filter(|cell| cell.starts_with('*'))
            .collect();
        assert_eq!(marked, vec!["*98*", "*128*"]);
    }

    #[test]
    fn render_through_19_has_no_markers() {
        let t = table();
        let cov = cumulative_coverage(&t, 19, 200).unwrap();
        assert!(!cov.render(200, 11).unwrap().contains('*'));
    }

    #[test]
    fn render_validation() {
        let t = table();
        let row = subset_row(&t, 3, 100).unwrap();
        assert!(row.render(100, 0).is_err());
        assert!(row.render(102, 11).is_err());
        assert!(row.render(99, 11).is_err());
    }

    #[test]
    fn shift_between_consecutive_indices() {
        // Rows for consecutive prime indices are the same set shifted by
        // the index difference.
        let t = table();
        let row5 = subset_row(&t, 5, 300).unwrap();
        let row7 = subset_row(&t, 7, 300).unwrap();
        for n in (8..=298u64).step_by(2) {
            if n >= 8 && n + 2 <= 300 {
                assert_eq!(
                    row5.generates(n),
                    row7.generates(n + 2),
                    "shift mismatch at n={n}"
                );
            }
        }
    }
}
