//! `goldbach` — prime sums, gaps, and counting from the command line.
//!
//! Exit codes: 0 success, 1 a mathematical violation was found (a Goldbach
//! failure, a criterion violation, or a refuted gap claim), 2 usage, domain,
//! or I/O errors. Output is byte-identical across runs and thread counts;
//! timings go to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use goldbach_core::{
    check_criterion, count_partitions, cumulative_coverage, extract_gaps, figure1_default, li,
    min_partition, one_significant, pi_over_ln, pow10_label, record_gaps, scan_gaps, subset_row,
    verify_range, verify_record_gap, Cell, CriterionReport, Format, GapConvention, PrimeTable,
    Table,
};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const THREADS_ENV: &str = "GOLDBACH_THREADS";

#[derive(Parser)]
#[command(
    name = "goldbach",
    version,
    about = "Verify prime-pair sums, scan prime gaps, and check the gap-clearing criterion"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format; defaults to text for small tables, csv for bulk data
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Worker threads (overrides the GOLDBACH_THREADS environment variable)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Sieve segment size in numbers (0 = default)
    #[arg(long, global = true)]
    segment_size: Option<u64>,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that every even number in [4, limit] is a sum of two primes
    Verify {
        #[arg(long)]
        limit: u64,
    },
    /// Smallest prime pair summing to an even number
    Partition {
        #[arg(long)]
        n: u64,
    },
    /// Count the prime pairs summing to an even number
    Count {
        #[arg(long)]
        n: u64,
    },
    /// Even numbers generated by adding primes to a fixed odd prime index
    Subsets {
        /// Odd prime index q of the sub-set {q + p}
        #[arg(long)]
        index: u64,
        #[arg(long, default_value_t = 200)]
        limit: u64,
        /// Combine every prime index up to --index instead of a single row
        #[arg(long)]
        cumulative: bool,
        /// List the uncovered runs of the cumulative table
        #[arg(long)]
        gaps: bool,
        /// Grid columns for text output
        #[arg(long, default_value_t = 11)]
        columns: usize,
    },
    /// Maximal runs of consecutive composites
    Gaps {
        #[arg(long, required_unless_present = "record_prime")]
        limit: Option<u64>,
        /// Keep only runs with at least this many composites
        #[arg(long, default_value_t = 1)]
        min_gap: u64,
        /// Emit only record-breaking runs
        #[arg(long, conflicts_with = "min_gap")]
        records: bool,
        /// Verify a claimed gap: the prime the run follows
        #[arg(long, requires = "record_length")]
        record_prime: Option<u64>,
        /// Verify a claimed gap: the claimed number of composites
        #[arg(long, requires = "record_prime")]
        record_length: Option<u64>,
    },
    /// Evaluate pi(N) >= G*ln(N) against every gap in range
    Criterion {
        #[arg(long)]
        limit: u64,
        /// Gap length convention; omitted = report both
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
    /// The standard ratio table pi(N)/R(N) for N = 10^8 .. 10^16
    Figure1,
    /// pi(N) with its two analytic approximations at log-spaced N
    PiCurve {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
    Md,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Md => Format::Md,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    All,
    Odd,
}

impl From<ConventionArg> for GapConvention {
    fn from(c: ConventionArg) -> GapConvention {
        match c {
            ConventionArg::All => GapConvention::All,
            ConventionArg::Odd => GapConvention::Odd,
        }
    }
}

/// Anything that should terminate with exit code 2.
type OpError = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(violations_found) => {
            if violations_found {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .filter(|&t| t > 0)
    })
}

fn run(cli: Cli) -> Result<bool, OpError> {
    if let Some(threads) = resolve_threads(cli.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    let segment = cli.segment_size.unwrap_or(0);
    let build_table = |limit: u64| -> Result<PrimeTable, OpError> {
        Ok(PrimeTable::builder(limit).segment_size(segment).build()?)
    };
    let fmt = |default: Format| -> Format { cli.format.map(Format::from).unwrap_or(default) };

    let (artifact, violations_found) = match cli.command {
        Cmd::Verify { limit } => {
            let table = build_table(limit)?;
            let report = verify_range(&table, 4, limit, 0)?;
            eprintln!(
                "# verified {} even numbers in {:.3}s",
                report.checked,
                report.elapsed.as_secs_f64()
            );
            let format = fmt(Format::Text);
            let failed = !report.failures.is_empty();
            let text = if format == Format::Text {
                let mut s = format!(
                    "checked={} failures={}\n",
                    report.checked,
                    report.failures.len()
                );
                for n in &report.failures {
                    s.push_str(&format!("failure={n}\n"));
                }
                s
            } else {
                let mut t = Table::new(vec!["range_lo", "range_hi", "checked", "failure_count"]);
                t.push(vec![
                    Cell::UInt(report.range_lo),
                    Cell::UInt(report.range_hi),
                    Cell::UInt(report.checked),
                    Cell::UInt(report.failures.len() as u64),
                ]);
                let mut s = t.emit(format);
                if failed {
                    let mut f = Table::new(vec!["failure"]);
                    for n in &report.failures {
                        f.push(vec![Cell::UInt(*n)]);
                    }
                    s.push('\n');
                    s.push_str(&f.emit(format));
                }
                s
            };
            (text, failed)
        }

        Cmd::Partition { n } => {
            let table = build_table(n.max(4))?;
            let part = min_partition(&table, n)?;
            let format = fmt(Format::Text);
            match part {
                Some(p) => {
                    let text = if format == Format::Text {
                        format!("{} = {} + {}\n", p.n, p.p, p.q)
                    } else {
                        let mut t = Table::new(vec!["n", "p", "q"]);
                        t.push(vec![Cell::UInt(p.n), Cell::UInt(p.p), Cell::UInt(p.q)]);
                        t.emit(format)
                    };
                    (text, false)
                }
                None => {
                    let text = if format == Format::Text {
                        format!("no partition for {n}\n")
                    } else {
                        Table::new(vec!["n", "p", "q"]).emit(format)
                    };
                    eprintln!("counterexample: {n} has no prime partition");
                    (text, true)
                }
            }
        }

        Cmd::Count { n } => {
            let table = build_table(n.max(4))?;
            let count = count_partitions(&table, n)?;
            let format = fmt(Format::Text);
            let text = if format == Format::Text {
                format!("n={n} partitions={count}\n")
            } else {
                let mut t = Table::new(vec!["n", "partitions"]);
                t.push(vec![Cell::UInt(n), Cell::UInt(count)]);
                t.emit(format)
            };
            (text, false)
        }

        Cmd::Subsets {
            index,
            limit,
            cumulative,
            gaps,
            columns,
        } => {
            let table = build_table(limit)?;
            let format = fmt(Format::Text);
            if gaps || cumulative {
                let cov = cumulative_coverage(&table, index, limit)?;
                if gaps {
                    let mut t = Table::new(vec!["start", "length"]);
                    for gap in extract_gaps(&cov) {
                        t.push(vec![Cell::UInt(gap.start), Cell::UInt(gap.length)]);
                    }
                    (t.emit(format), false)
                } else if format == Format::Text {
                    (cov.render(limit, columns)?, false)
                } else {
                    let mut t = Table::new(vec!["n", "covered", "first_index"]);
                    let mut n = 6;
                    while n <= limit {
                        let first = cov.first_cover_index(n);
                        t.push(vec![
                            Cell::UInt(n),
                            Cell::Bool(first.is_some()),
                            Cell::UInt(first.unwrap_or(0)),
                        ]);
                        n += 2;
                    }
                    (t.emit(format), false)
                }
            } else {
                let row = subset_row(&table, index, limit)?;
                if format == Format::Text {
                    (row.render(limit, columns)?, false)
                } else {
                    let mut t = Table::new(vec!["n", "generated"]);
                    let mut n = row.first_even();
                    while n <= limit {
                        t.push(vec![Cell::UInt(n), Cell::Bool(row.generates(n))]);
                        n += 2;
                    }
                    (t.emit(format), false)
                }
            }
        }

        Cmd::Gaps {
            limit,
            min_gap,
            records,
            record_prime,
            record_length,
        } => {
            if let (Some(p), Some(g)) = (record_prime, record_length) {
                let cert = verify_record_gap(p, g)?;
                let format = fmt(Format::Text);
                let witnesses = cert
                    .witnesses
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                let defect = cert.defect.map(|d| format!("{d:?}")).unwrap_or_default();
                let mut t = Table::new(vec![
                    "preceding_prime",
                    "claimed_g_all",
                    "following_prime",
                    "composites_checked",
                    "g_odd",
                    "witnesses",
                    "valid",
                    "defect",
                ]);
                t.push(vec![
                    Cell::UInt(cert.preceding_prime),
                    Cell::UInt(cert.claimed_g_all),
                    Cell::UInt(cert.following_prime),
                    Cell::UInt(cert.composites_checked),
                    Cell::UInt(cert.g_odd),
                    Cell::Str(witnesses),
                    Cell::Bool(cert.valid),
                    Cell::Str(defect),
                ]);
                if !cert.valid {
                    eprintln!("gap claim refuted: {:?}", cert.defect);
                }
                (t.emit(format), !cert.valid)
            } else {
                let limit = limit.expect("clap enforces --limit outside record mode");
                let table = build_table(limit)?;
                let runs = if records {
                    record_gaps(&table, limit)?
                } else {
                    scan_gaps(&table, 2, limit, min_gap)?
                };
                let mut t = Table::new(vec![
                    "preceding_prime",
                    "start_N",
                    "G_all",
                    "G_odd",
                    "following_prime",
                ]);
                for run in runs {
                    t.push(vec![
                        Cell::UInt(run.preceding_prime),
                        Cell::UInt(run.start),
                        Cell::UInt(run.g_all),
                        Cell::UInt(run.g_odd),
                        Cell::UInt(run.following_prime),
                    ]);
                }
                (t.emit(fmt(Format::Csv)), false)
            }
        }

        Cmd::Criterion { limit, convention } => {
            let table = build_table(limit)?;
            let reports: Vec<CriterionReport> = match convention {
                Some(c) => vec![check_criterion(&table, limit, c.into())?],
                None => vec![
                    check_criterion(&table, limit, GapConvention::All)?,
                    check_criterion(&table, limit, GapConvention::Odd)?,
                ],
            };
            let mut t = Table::new(vec![
                "convention",
                "N",
                "G",
                "pi_N",
                "pi_source",
                "R_exact",
                "R_log",
                "ratio",
                "passes",
            ]);
            let mut any_violation = false;
            for report in &reports {
                for row in &report.rows {
                    t.push(vec![
                        Cell::Str(row.convention.label().to_string()),
                        Cell::UInt(row.n),
                        Cell::UInt(row.g),
                        Cell::real(row.pi_n, 1),
                        Cell::Str(row.pi_source.label().to_string()),
                        Cell::real(row.r_exact, 2),
                        Cell::real(row.r_log, 2),
                        Cell::real(row.ratio, 4),
                        Cell::Bool(row.passes),
                    ]);
                }
                any_violation |= !report.all_pass;
                eprintln!(
                    "# convention={} gaps={} violations={} last_violation={} clears_from={}",
                    report.convention.label(),
                    report.rows.len(),
                    report.violations,
                    report
                        .last_violation
                        .map_or_else(|| "none".into(), |v| v.to_string()),
                    report
                        .clears_from
                        .map_or_else(|| "none".into(), |v| v.to_string()),
                );
            }
            (t.emit(fmt(Format::Csv)), any_violation)
        }

        Cmd::Figure1 => {
            let mut t = Table::new(vec!["N", "G", "pi_over_R", "G_over_N_pct"]);
            for row in figure1_default() {
                t.push(vec![
                    Cell::Str(pow10_label(row.n)),
                    Cell::Str(pow10_label(row.g)),
                    Cell::Int(row.ratio.round() as i64),
                    Cell::Str(one_significant(row.g_over_n_pct)),
                ]);
            }
            (t.emit(fmt(Format::Text)), false)
        }

        Cmd::PiCurve { limit } => {
            let table = build_table(limit)?;
            let mut t = Table::new(vec!["N", "pi", "n_over_ln", "li"]);
            for n in log_samples(limit) {
                t.push(vec![
                    Cell::UInt(n),
                    Cell::UInt(table.prime_count(n)?),
                    Cell::real(pi_over_ln(n)?, 2),
                    Cell::real(li(n)?, 2),
                ]);
            }
            (t.emit(fmt(Format::Csv)), false)
        }
    };

    match &cli.output {
        Some(path) => fs::write(path, artifact.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{artifact}"),
    }
    Ok(violations_found)
}

/// Sample points for the pi curve: eight per decade from 10 upward, plus
/// the limit itself.
fn log_samples(limit: u64) -> Vec<u64> {
    let mut samples = Vec::new();
    if limit >= 10 {
        let max_k = (8.0 * (limit as f64).log10()).floor() as u64;
        for k in 8..=max_k {
            let n = 10f64.powf(k as f64 / 8.0).round() as u64;
            if n >= 10 && n <= limit && samples.last() != Some(&n) {
                samples.push(n);
            }
        }
    }
    if limit >= 2 && samples.last() != Some(&limit) {
        samples.push(limit);
    }
    samples
}
