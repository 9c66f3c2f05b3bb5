//! The nine acceptance criteria at their stated scale. Each prints one
//! PASS/FAIL line with its wall time; every one must finish within a minute.

use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use symadj::linalg::rank;
use symadj::maps::ClassifyResult;
use symadj::selftest::{self, Report};

const SEED: u64 = 7;
const LIMIT: Duration = Duration::from_secs(60);

fn suite(name: &str, trials: usize) -> Report {
    let s = selftest::find_suite(name).unwrap_or_else(|| panic!("no suite {name}"));
    selftest::run_suite(s, SEED, trials)
}

fn symadj(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_symadj"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

/// Checks the control is flagged by both `map-classify` and `map-verify`
/// and that the reported witness really is a violation.
fn control_flagged(kind: &str) -> Result<(), String> {
    let (code, table) = symadj(&["map-gen", "--kind", kind, "--n", "2"], "");
    if code != 0 {
        return Err(format!("map-gen --kind {kind} exited {code}"));
    }
    let (code, out) = symadj(&["map-classify"], &table);
    if code != 1 || !out.starts_with("not-adjacency-preserving") {
        return Err(format!("map-classify on {kind}: exit {code}\n{out}"));
    }
    let Ok(ClassifyResult::NotAdjacencyPreserving { witness: w }) = symadj::text::from_text(&out) else {
        return Err(format!("unreadable verdict for {kind}\n{out}"));
    };
    if rank(&(&w.a - &w.b)) != 1 || rank(&(&w.image_a - &w.image_b)) == 1 {
        return Err(format!("witness for {kind} is not a violation\n{out}"));
    }
    let (code, out) = symadj(&["map-verify"], &table);
    if code != 1 || !out.starts_with("violation") {
        return Err(format!("map-verify on {kind}: exit {code}\n{out}"));
    }
    Ok(())
}

fn reports(rs: Vec<Report>) -> Result<(), String> {
    let failed: String = rs.iter().filter(|r| !r.passed()).map(Report::render).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed)
    }
}

type Criterion = (&'static str, fn() -> Result<(), String>);

const CRITERIA: &[Criterion] = &[
    ("1 metric invariance, 500 triples, n = 2..6", || reports(vec![suite("metric-invariance", 500)])),
    ("2 direct sums vs span counting, 200 pairs per n = 2..5", || reports(vec![suite("direct-sum", 800)])),
    ("3 line distance profiles, 300 instances, n = 2..5", || reports(vec![suite("line-profile", 300)])),
    ("4 adjacency chains (200) and invertible chains (100)", || {
        reports(vec![suite("adjacency-chains", 200), suite("invertible-chains", 100)])
    }),
    ("5 Minkowski determinant identity and swap, 1000 pairs", || reports(vec![suite("minkowski", 1000)])),
    ("6 Lorentz round trip, 100 congruences", || reports(vec![suite("lorentz-roundtrip", 100)])),
    ("7 preserver instances, 100 standard + 100 degenerate", || {
        reports(vec![suite("preserver-instances", 200)])
    }),
    ("8 affine congruences of S_2 and truncation, 100 maps", || reports(vec![suite("s2-affine", 100)])),
    ("9 negative controls A -> A^2 and truncation exit 1", || {
        control_flagged("square")?;
        control_flagged("truncate")
    }),
];

#[test]
fn acceptance() {
    let mut stdout = std::io::stdout();
    let _ = writeln!(stdout);
    let mut failures = Vec::new();
    for (name, check) in CRITERIA {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let ok = result.is_ok() && elapsed < LIMIT;
        let verdict = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(stdout, "{verdict} [{:>7.2}s] {name}", elapsed.as_secs_f64());
        if let Err(detail) = result {
            failures.push(format!("{name}\n{detail}"));
        } else if !ok {
            failures.push(format!("{name}: took {elapsed:?}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn selftest_command_passes() {
    let (code, out) = symadj(&["selftest", "--seed", "7", "--trials", "200"], "");
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.ends_with(" PASS")).count(), selftest::SUITES.len());
}
