//! CLI behavior: exit-code contract, format surface, determinism across
//! thread counts, file output, and the thread-count environment variable.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(args)
        .env_remove("GOLDBACH_THREADS")
        .output()
        .expect("failed to run goldbach binary")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

#[test]
fn verify_small_range_text() {
    let out = run(&["verify", "--limit", "200"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "checked=99 failures=0\n"
    );
}

#[test]
fn verify_rejects_odd_limit_with_usage_exit() {
    let out = run(&["verify", "--limit", "201"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("even"),
        "diagnostic should mention evenness: {err}"
    );
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["verify", "--limit", "200", "--bogus"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unknown_command_is_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn partition_text_and_json() {
    assert_eq!(stdout_of(&["partition", "--n", "98"]), "98 = 19 + 79\n");
    assert_eq!(stdout_of(&["partition", "--n", "4"]), "4 = 2 + 2\n");
    let json = stdout_of(&["partition", "--n", "98", "--format", "json"]);
    assert_eq!(json, "[\n  {\"n\":98,\"p\":19,\"q\":79}\n]\n");
}

#[test]
fn count_formats() {
    assert_eq!(stdout_of(&["count", "--n", "10"]), "n=10 partitions=2\n");
    let csv = stdout_of(&["count", "--n", "100", "--format", "csv"]);
    assert_eq!(csv, "n,partitions\n100,6\n");
}

#[test]
fn gaps_csv_schema_and_content() {
    let csv = stdout_of(&["gaps", "--limit", "130", "--min-gap", "10"]);
    assert_eq!(
        csv,
        "preceding_prime,start_N,G_all,G_odd,following_prime\n113,114,13,6,127\n"
    );
}

#[test]
fn gaps_records_mode() {
    let csv = stdout_of(&["gaps", "--limit", "100", "--records"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[1], "3,4,1,0,5");
    assert_eq!(lines[2], "7,8,3,1,11");
    assert_eq!(lines[3], "23,24,5,2,29");
    assert_eq!(lines[4], "89,90,7,3,97");
}

#[test]
fn gap_claim_check_exit_codes() {
    let ok = run(&["gaps", "--record-prime", "7", "--record-length", "3"]);
    assert_eq!(exit_code(&ok), 0);
    let refuted = run(&["gaps", "--record-prime", "7", "--record-length", "2"]);
    assert_eq!(exit_code(&refuted), 1);
    let out = String::from_utf8(refuted.stdout).unwrap();
    assert!(
        out.contains("false"),
        "refutation must be machine-readable: {out}"
    );
}

#[test]
fn criterion_exits_one_on_violations_and_zero_when_clean() {
    // Small scales contain failing gaps (e.g. N = 114).
    let out = run(&["criterion", "--limit", "1000", "--convention", "all"]);
    assert_eq!(exit_code(&out), 1);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout
        .lines()
        .any(|l| l.starts_with("all,114,13,") && l.ends_with("false")));

    // The odd convention has no violations anywhere in range.
    let out = run(&["criterion", "--limit", "1000", "--convention", "odd"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn criterion_defaults_to_both_conventions() {
    let csv = stdout_of(&["criterion", "--limit", "100", "--convention", "odd"]);
    assert!(csv.lines().skip(1).all(|l| l.starts_with("odd,")));
    let out = run(&["criterion", "--limit", "100"]);
    let both = String::from_utf8(out.stdout).unwrap();
    assert!(both.lines().any(|l| l.starts_with("all,")));
    assert!(both.lines().any(|l| l.starts_with("odd,")));
}

#[test]
fn subsets_tabular_formats() {
    let csv = stdout_of(&[
        "subsets", "--index", "3", "--limit", "12", "--format", "csv",
    ]);
    assert_eq!(csv, "n,generated\n6,true\n8,true\n10,true\n12,false\n");
    let csv = stdout_of(&[
        "subsets",
        "--index",
        "5",
        "--limit",
        "12",
        "--cumulative",
        "--format",
        "csv",
    ]);
    assert_eq!(
        csv,
        "n,covered,first_index\n6,true,3\n8,true,3\n10,true,3\n12,true,5\n"
    );
    let gaps = stdout_of(&[
        "subsets", "--index", "3", "--limit", "100", "--gaps", "--format", "csv",
    ]);
    assert!(gaps.starts_with("start,length\n"));
    assert!(gaps.contains("94,3\n"));
}

#[test]
fn pi_curve_ends_at_limit() {
    let csv = stdout_of(&["pi-curve", "--limit", "1000"]);
    assert_eq!(csv.lines().next().unwrap(), "N,pi,n_over_ln,li");
    assert_eq!(csv.lines().last().unwrap(), "1000,168,144.76,176.56");
}

#[test]
fn output_flag_writes_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("verify_out.txt");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "verify",
        "--limit",
        "200",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "checked=99 failures=0\n"
    );
}

#[test]
fn unwritable_output_is_operational_error() {
    let out = run(&[
        "verify",
        "--limit",
        "200",
        "--output",
        "/nonexistent-dir/never/out.txt",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn thread_count_does_not_change_bytes() {
    for (cmd, args) in [
        ("verify", vec!["verify", "--limit", "100000"]),
        ("gaps", vec!["gaps", "--limit", "100000"]),
        ("criterion", vec!["criterion", "--limit", "100000"]),
    ] {
        let mut outputs = Vec::new();
        for threads in ["1", "2", "8"] {
            let mut full = args.clone();
            full.extend(["--threads", threads]);
            let out = run(&full);
            outputs.push(out.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "{cmd}: 1 vs 2 threads");
        assert_eq!(outputs[0], outputs[2], "{cmd}: 1 vs 8 threads");
    }
}

#[test]
fn threads_env_var_is_honored() {
    let flagged = run(&["verify", "--limit", "10000", "--threads", "2"]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(["verify", "--limit", "10000"])
        .env("GOLDBACH_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, via_env.stdout);
    // The flag overrides the environment.
    let overridden = Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(["verify", "--limit", "10000", "--threads", "1"])
        .env("GOLDBACH_THREADS", "not-a-number")
        .output()
        .unwrap();
    assert!(overridden.status.success());
    assert_eq!(overridden.stdout, flagged.stdout);
}

#[test]
fn segment_size_does_not_change_bytes() {
    let default = stdout_of(&["gaps", "--limit", "200000"]);
    for seg in ["4096", "65536", "10000000"] {
        let got = stdout_of(&["gaps", "--limit", "200000", "--segment-size", seg]);
        assert_eq!(default, got, "segment size {seg}");
    }
}

#[test]
fn csv_and_json_criterion_values_agree() {
    // Exit code 1 is expected here: small-scale gaps violate the criterion.
    let csv =
        String::from_utf8(run(&["criterion", "--limit", "200", "--convention", "all"]).stdout)
            .unwrap();
    let json = String::from_utf8(
        run(&[
            "criterion",
            "--limit",
            "200",
            "--convention",
            "all",
            "--format",
            "json",
        ])
        .stdout,
    )
    .unwrap();
    let csv_rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    let json_rows: Vec<Vec<String>> = json
        .lines()
        .filter(|l| l.trim_start().starts_with('{'))
        .map(|line| {
            line.trim()
                .trim_start_matches('{')
                .trim_end_matches(',')
                .trim_end_matches('}')
                .split(',')
                .map(|pair| {
                    pair.split_once(':')
                        .unwrap()
                        .1
                        .trim_matches('"')
                        .to_string()
                })
                .collect()
        })
        .collect();
    assert_eq!(csv_rows.len(), json_rows.len());
    for (c, j) in csv_rows.iter().zip(&json_rows) {
        assert_eq!(c, &j.iter().map(String::as_str).collect::<Vec<_>>());
    }
}
