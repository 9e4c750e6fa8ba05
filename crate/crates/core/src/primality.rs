//! Prime generation, membership, and exact counting.
//!
//! Two engines cover the full 64-bit range:
//!
//! 1. [`PrimeTable`] — a segmented sieve of Eratosthenes over odd numbers
//!    only (2 is special-cased), with a block popcount index that answers
//!    exact `pi(n)` queries in at most one 64 KiB block scan.
//! 2. [`is_prime`] — a deterministic Miller-Rabin test using a fixed
//!    7-witness set valid for every `n < 2^64`. No probabilistic answers.
//!
//! Table construction parallelizes across cache-sized segments; a built
//! table is immutable and safe to share across threads.

use crate::bits::Bits;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::io::{self, Read, Write};

/// Witness set proving 64-bit primality deterministically (Sinclair's
/// 7-base set: no composite below 2^64 passes all seven).
pub const MILLER_RABIN_WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Default segment span in numbers; 2^22 numbers occupy 256 KiB of bits,
/// which stays cache-resident on typical hardware.
pub const DEFAULT_SEGMENT_NUMBERS: u64 = 1 << 22;

/// Default ceiling on table storage (2 GiB, enough for limits near 3*10^10).
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// Numbers covered by one entry of the cumulative count index.
const COUNT_BLOCK_NUMBERS: u64 = 1 << 16;
/// 2^16 numbers = 2^15 odd slots = 512 words per index block.
const COUNT_BLOCK_WORDS: usize = (COUNT_BLOCK_NUMBERS / 2 / 64) as usize;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for any 64-bit integer.
///
/// Trial division by the first twelve primes, then Miller-Rabin over
/// [`MILLER_RABIN_WITNESSES`]. Total on its domain: never errs, never
/// guesses.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    miller_rabin(n)
}

fn miller_rabin(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MILLER_RABIN_WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Odd primes up to `max` by a plain in-memory sieve. Used for base primes
/// (up to sqrt of the table limit) where segmentation buys nothing.
fn simple_odd_primes(max: u64) -> Vec<u64> {
    if max < 3 {
        return Vec::new();
    }
    let slots = ((max - 3) / 2 + 1) as usize; // slot i <-> 3 + 2i
    let mut composite = vec![false; slots];
    let mut primes = Vec::new();
    for i in 0..slots {
        if composite[i] {
            continue;
        }
        let p = 3 + 2 * i as u64;
        primes.push(p);
        let mut m = p * p;
        while m <= max {
            composite[((m - 3) / 2) as usize] = true;
            m += 2 * p;
        }
    }
    primes
}

/// Configures and builds a [`PrimeTable`].
#[derive(Debug, Clone)]
pub struct PrimeTableBuilder {
    limit: u64,
    segment_numbers: u64,
    memory_budget: u64,
}

impl PrimeTableBuilder {
    /// Segment span in numbers. Rounded up to a multiple of 128 so segments
    /// align on word boundaries; 0 selects the default.
    pub fn segment_size(mut self, numbers: u64) -> Self {
        self.segment_numbers = if numbers == 0 {
            DEFAULT_SEGMENT_NUMBERS
        } else {
            numbers.max(128).next_multiple_of(128)
        };
        self
    }

    /// Upper bound in bytes on table storage; exceeded budgets fail fast
    /// before any allocation.
    pub fn memory_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    pub fn build(self) -> Result<PrimeTable> {
        PrimeTable::build_inner(self.limit, self.segment_numbers, self.memory_budget)
    }
}

/// Queryable store of every prime up to a fixed limit.
///
/// Membership is one bit per odd number in `[3, limit]`; prime 2 is
/// special-cased. The count index holds one cumulative total per
/// 2^16-number block, so `prime_count` scans at most 512 words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    odd: Bits,
    block_counts: Vec<u64>,
}

impl PrimeTable {
    /// Sieve `[2, limit]` with default segment size and memory budget.
    pub fn build(limit: u64) -> Result<PrimeTable> {
        PrimeTable::builder(limit).build()
    }

    pub fn builder(limit: u64) -> PrimeTableBuilder {
        PrimeTableBuilder {
            limit,
            segment_numbers: DEFAULT_SEGMENT_NUMBERS,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    fn build_inner(limit: u64, segment_numbers: u64, budget: u64) -> Result<PrimeTable> {
        if limit < 2 {
            return Err(Error::LimitTooSmall { limit });
        }
        let n_bits = if limit >= 3 {
            ((limit - 3) / 2 + 1) as usize
        } else {
            0
        };
        let n_words = n_bits.div_ceil(64);
        let n_blocks = n_words.div_ceil(COUNT_BLOCK_WORDS);
        let sqrt_limit = isqrt(limit);
        let required = (n_words as u64) * 8
            + (n_blocks as u64) * 8
            + sqrt_limit / 2 // transient base sieve
            + 64;
        if required > budget {
            return Err(Error::MemoryBudget {
                limit,
                required,
                budget,
            });
        }

        let base = simple_odd_primes(sqrt_limit);
        let mut words = vec![0u64; n_words];
        let chunk_words = ((segment_numbers / 128).max(1)) as usize;
        words
            .par_chunks_mut(chunk_words)
            .enumerate()
            .for_each(|(ci, chunk)| {
                sieve_segment(chunk, ci * chunk_words, n_bits, &base);
            });

        // Marked = composite; flip so a set bit means prime.
        let mut odd = Bits::from_words(words, n_bits);
        odd.negate();

        let block_counts = build_block_counts(&odd);
        Ok(PrimeTable {
            limit,
            odd,
            block_counts,
        })
    }

    /// Inclusive upper bound of the sieved range.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Exact primality verdict for any 64-bit `n`: table lookup within the
    /// sieved range, deterministic witness test above it.
    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            self.contains(n)
        } else {
            is_prime(n)
        }
    }

    /// Membership lookup; callers guarantee `n <= limit`.
    #[inline]
    pub(crate) fn contains(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        if n < 3 || n % 2 == 0 {
            return n == 2;
        }
        self.odd.get(((n - 3) / 2) as usize)
    }

    /// Exact count of primes `<= n`. Errors rather than approximating when
    /// `n` lies beyond the table.
    pub fn prime_count(&self, n: u64) -> Result<u64> {
        if n > self.limit {
            return Err(Error::BeyondTable {
                value: n,
                limit: self.limit,
            });
        }
        if n < 2 {
            return Ok(0);
        }
        if n < 3 {
            return Ok(1);
        }
        let max_bit = ((n - 3) / 2) as usize;
        let w = max_bit / 64;
        let block = w / COUNT_BLOCK_WORDS;
        let mut count = if block > 0 {
            self.block_counts[block - 1]
        } else {
            0
        };
        let words = self.odd.words();
        for word in &words[block * COUNT_BLOCK_WORDS..w] {
            count += word.count_ones() as u64;
        }
        count += (words[w] & (!0u64 >> (63 - max_bit % 64))).count_ones() as u64;
        Ok(1 + count) // +1 for the prime 2
    }

    /// pi(limit).
    pub fn count(&self) -> u64 {
        self.prime_count(self.limit).expect("limit is in range")
    }

    /// Ascending primes `p` with `lo <= p <= hi`, streamed without
    /// materializing the range.
    pub fn primes_in(&self, lo: u64, hi: u64) -> Result<Primes<'_>> {
        if lo < 2 || lo > hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "requires 2 <= lo <= hi",
            });
        }
        if hi > self.limit {
            return Err(Error::BeyondTable {
                value: hi,
                limit: self.limit,
            });
        }
        let first_odd = lo.max(3) | 1;
        let last_odd = if hi % 2 == 0 {
            hi.saturating_sub(1)
        } else {
            hi
        };
        let (next_bit, end_bit) = if last_odd >= first_odd && last_odd >= 3 {
            (
                ((first_odd - 3) / 2) as usize,
                ((last_odd - 3) / 2) as usize,
            )
        } else {
            (1, 0) // empty odd range
        };
        Ok(Primes {
            bits: &self.odd,
            next_bit,
            end_bit,
            two_pending: lo <= 2,
        })
    }

    /// Serialize as a versioned binary blob: magic, limit, bit length, and
    /// the raw membership words (little-endian). The count index is
    /// rebuilt on load.
    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        w.write_all(&(self.odd.len() as u64).to_le_bytes())?;
        for word in self.odd.words() {
            w.write_all(&word.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> io::Result<PrimeTable> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if magic != *MAGIC {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "not a prime table file (bad magic)",
            ));
        }
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let limit = u64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let n_bits = u64::from_le_bytes(buf) as usize;
        let expected_bits = if limit >= 3 {
            ((limit - 3) / 2 + 1) as usize
        } else {
            0
        };
        if limit < 2 || n_bits != expected_bits {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "inconsistent prime table header",
            ));
        }
        let mut words = vec![0u64; n_bits.div_ceil(64)];
        for word in &mut words {
            r.read_exact(&mut buf)?;
            *word = u64::from_le_bytes(buf);
        }
        let odd = Bits::from_words(words, n_bits);
        let block_counts = build_block_counts(&odd);
        Ok(PrimeTable {
            limit,
            odd,
            block_counts,
        })
    }
}

const MAGIC: &[u8; 8] = b"GBPTAB01";

fn build_block_counts(odd: &Bits) -> Vec<u64> {
    let words = odd.words();
    let n_blocks = words.len().div_ceil(COUNT_BLOCK_WORDS);
    let mut counts = Vec::with_capacity(n_blocks);
    let mut acc = 0u64;
    for b in 0..n_blocks {
        let end = ((b + 1) * COUNT_BLOCK_WORDS).min(words.len());
        acc += words[b * COUNT_BLOCK_WORDS..end]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum::<u64>();
        counts.push(acc);
    }
    counts
}

/// Mark composites within one word-aligned segment. Bit `i` (global) is the
/// number `3 + 2i`; marking is idempotent, so the result is identical for
/// any segmentation.
fn sieve_segment(chunk: &mut [u64], word_offset: usize, n_bits: usize, base: &[u64]) {
    let bit0 = word_offset * 64;
    let bit_end = (bit0 + chunk.len() * 64).min(n_bits);
    if bit0 >= bit_end {
        return;
    }
    let lo = 3 + 2 * bit0 as u64;
    let hi = 3 + 2 * (bit_end as u64 - 1);
    for &p in base {
        if p * p > hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        if m % 2 == 0 {
            m += p;
        }
        m = m.max(p * p);
        while m <= hi {
            let rel = ((m - 3) / 2) as usize - bit0;
            chunk[rel / 64] |= 1u64 << (rel % 64);
            m += 2 * p;
        }
    }
}

/// Streaming iterator over the primes of a sub-range of a table.
pub struct Primes<'a> {
    bits: &'a Bits,
    next_bit: usize,
    end_bit: usize,
    two_pending: bool,
}

impl Iterator for Primes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.two_pending {
            self.two_pending = false;
            return Some(2);
        }
        if self.next_bit > self.end_bit {
            return None;
        }
        match self.bits.next_set(self.next_bit) {
            Some(bit) if bit <= self.end_bit => {
                self.next_bit = bit + 1;
                Some(3 + 2 * bit as u64)
            }
            _ => {
                self.next_bit = self.end_bit + 1;
                None
            }
        }
    }
}
