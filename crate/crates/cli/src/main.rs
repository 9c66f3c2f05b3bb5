//! `symadj`: exact adjacency geometry of symmetric matrices from the shell.
//!
//! Inputs are read from the files named on the command line, concatenated in
//! order, or from standard input when none are given. Exit codes: 0 success,
//! 1 property violation or failed verification, 2 malformed input, 3
//! violated precondition.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use symadj::geometry::{self, Chain, InvertibleChain};
use symadj::linalg::{self, Mat, SymMat, Vector};
use symadj::maps::{self, controls, ClassifyResult, MapOracle, MapSpec, StandardMapSpec};
use symadj::minkowski::{self, AffineCongruence, LorentzMat};
use symadj::quadform;
use symadj::rat::Sign;
use symadj::selftest;
use symadj::text::{Reader, Style, TextFormat};
use symadj::{random, Error, ErrorKind};

#[derive(Parser)]
#[command(name = "symadj", version, about = "Exact adjacency geometry of rational symmetric matrices")]
struct Cli {
    /// Whitespace style of written matrices.
    #[arg(long, global = true, value_enum, default_value_t = Format::Compact)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Compact,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapKind {
    Standard,
    Degenerate,
    Identity,
    Square,
    Truncate,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a matrix.
    Rank { files: Vec<String> },
    /// Arithmetic distance rank(A − B).
    Dist { files: Vec<String> },
    /// Whether two symmetric matrices are adjacent.
    Adjacent { files: Vec<String> },
    /// A geodesic chain of adjacent points from A to B.
    Chain { files: Vec<String> },
    /// A chain of invertible points from A to B with a rank n−1 point on each segment.
    Invchain {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        files: Vec<String>,
    },
    /// Rational congruence diagonalization S·A·Sᵀ = D.
    Diag { files: Vec<String> },
    /// Inertia (positive, negative, zero) of a symmetric matrix.
    Inertia { files: Vec<String> },
    /// Decomposition into rank-one terms c·vvᵀ.
    Decompose { files: Vec<String> },
    /// Distance profile of G along the line through adjacent A and B.
    LineProfile { files: Vec<String> },
    /// T(x) for x in Minkowski space.
    MinkT { files: Vec<String> },
    /// T⁻¹(A) for A in S_2.
    MinkTinv { files: Vec<String> },
    /// Checks det(Tx − Ty) = Q(x − y) and adjacency against null separation.
    MinkCheck { files: Vec<String> },
    /// Whether a 3×3 matrix is Lorentz, and whether it is restricted.
    LorentzCheck { files: Vec<String> },
    /// The congruence (c, P) inducing a Lorentz matrix.
    LorentzToP { files: Vec<String> },
    /// The Weyl map induced by an affine congruence of S_2.
    PToLorentz { files: Vec<String> },
    /// Applies a map to a symmetric matrix.
    MapApply { files: Vec<String> },
    /// Writes a map.
    MapGen {
        #[arg(long, value_enum)]
        kind: MapKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Target dimension; defaults to n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the map as a table on the canonical probe inputs.
        #[arg(long)]
        tabulate: bool,
    },
    /// Classifies a map as standard, degenerate or not adjacency preserving.
    MapClassify { files: Vec<String> },
    /// Checks that a map sends adjacent pairs to adjacent pairs.
    MapVerify {
        /// Random adjacent pairs to check for formula maps.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        files: Vec<String>,
    },
    /// Runs the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        suite: Option<String>,
    },
}

/// Process outcome other than plain success.
enum Failure {
    Error(Error),
    /// A property does not hold; the message is already printed.
    Violation,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_input(files: &[String]) -> Result<String, Failure> {
    if files.is_empty() || files == ["-"] {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    let mut all = String::new();
    for f in files {
        let text = std::fs::read_to_string(f)
            .map_err(|e| Failure::Usage(format!("cannot read {f}: {e}")))?;
        all.push_str(&text);
        all.push('\n');
    }
    Ok(all)
}

/// Parses exactly `N` values of the same type from the inputs.
fn read_values<T: TextFormat, const N: usize>(files: &[String]) -> Result<[T; N], Failure> {
    let input = read_input(files)?;
    let mut r = Reader::new(&input);
    let mut out = Vec::with_capacity(N);
    for _ in 0..N {
        out.push(T::read_text(&mut r)?);
    }
    r.expect_end()?;
    Ok(out.try_into().unwrap_or_else(|_| unreachable!("exactly N values")))
}

fn print(value: &impl TextFormat, style: Style) {
    print!("{}", symadj::text::to_text(value, style));
}

fn run(cli: Cli) -> Outcome {
    let style = match cli.format {
        Format::Compact => Style::Compact,
        Format::Pretty => Style::Pretty,
    };
    match cli.command {
        Command::Rank { files } => {
            let [a] = read_values::<Mat, 1>(&files)?;
            println!("{}", linalg::rank(&a));
        }
        Command::Dist { files } => {
            let [a, b] = read_values::<SymMat, 2>(&files)?;
            println!("{}", linalg::dist(&a, &b)?);
        }
        Command::Adjacent { files } => {
            let [a, b] = read_values::<SymMat, 2>(&files)?;
            println!("{}", linalg::is_adjacent(&a, &b)?);
        }
        Command::Chain { files } => {
            let [a, b] = read_values::<SymMat, 2>(&files)?;
            let chain: Chain = geometry::adjacency_chain(&a, &b)?;
            print(&chain, style);
        }
        Command::Invchain { seed, files } => {
            let [a, b] = read_values::<SymMat, 2>(&files)?;
            let ic: InvertibleChain = geometry::invertible_chain(&a, &b, seed)?;
            print(&ic, style);
        }
        Command::Diag { files } => {
            let [a] = read_values::<SymMat, 1>(&files)?;
            print(&quadform::diagonalize(&a), style);
        }
        Command::Inertia { files } => {
            let [a] = read_values::<SymMat, 1>(&files)?;
            print(&quadform::inertia(&a), style);
        }
        Command::Decompose { files } => {
            let [a] = read_values::<SymMat, 1>(&files)?;
            print(&quadform::rank_one_decompose(&a), style);
        }
        Command::LineProfile { files } => {
            let [g, a, b] = read_values::<SymMat, 3>(&files)?;
            let l = geometry::line(&a, &b)?;
            print(&geometry::line_distance_profile(&g, &l)?, style);
        }
        Command::MinkT { files } => {
            let [x] = read_values::<Vector, 1>(&files)?;
            print(&minkowski::t_map(&x)?, style);
        }
        Command::MinkTinv { files } => {
            let [a] = read_values::<SymMat, 1>(&files)?;
            print(&minkowski::t_inv(&a)?, style);
        }
        Command::MinkCheck { files } => {
            let [x, y] = read_values::<Vector, 2>(&files)?;
            let c = minkowski::null_separation_adjacency_check(&x, &y)?;
            println!(
                "null_separated={} adjacent={} det_identity={}",
                c.null_separated, c.adjacent, c.det_identity
            );
            if !c.consistent() {
                return Err(Failure::Violation);
            }
        }
        Command::LorentzCheck { files } => {
            let [l] = read_values::<Mat, 1>(&files)?;
            if l.rows() != 3 || l.cols() != 3 || !minkowski::is_lorentz(&l) {
                println!("not-lorentz");
                return Err(Failure::Violation);
            }
            let l = LorentzMat::new(l)?;
            println!("lorentz restricted={}", minkowski::is_restricted_lorentz(&l));
        }
        Command::LorentzToP { files } => {
            let [l] = read_values::<LorentzMat, 1>(&files)?;
            let (c, p) = minkowski::lorentz_to_congruence(&l)?;
            print(&AffineCongruence::new(c, p, SymMat::zeros(2))?, style);
        }
        Command::PToLorentz { files } => {
            let [g] = read_values::<AffineCongruence, 1>(&files)?;
            print(&minkowski::congruence_to_weyl(&g)?, style);
        }
        Command::MapApply { files } => {
            let input = read_input(&files)?;
            let mut r = Reader::new(&input);
            let o = MapOracle::read_text(&mut r)?;
            let a = SymMat::read_text(&mut r)?;
            r.expect_end()?;
            print(&o.eval(&a)?, style);
        }
        Command::MapGen { kind, n, m, seed, tabulate } => {
            let m = m.unwrap_or(n);
            if n == 0 || m == 0 {
                return Err(Failure::Usage("dimensions must be positive".into()));
            }
            print(&generate(kind, n, m, seed, tabulate)?, style);
        }
        Command::MapClassify { files } => {
            let [o] = read_values::<MapOracle, 1>(&files)?;
            let verdict = maps::classify(&o);
            print(&verdict, style);
            if matches!(
                verdict,
                ClassifyResult::NotAdjacencyPreserving { .. } | ClassifyResult::Undetermined { .. }
            ) {
                return Err(Failure::Violation);
            }
        }
        Command::MapVerify { pairs, seed, files } => {
            let [o] = read_values::<MapOracle, 1>(&files)?;
            verify(&o, pairs, seed, style)?;
        }
        Command::Selftest { seed, trials, suite } => selftest_command(seed, trials, suite)?,
    }
    Ok(())
}

fn generate(kind: MapKind, n: usize, m: usize, seed: u64, tabulate: bool) -> Result<MapOracle, Failure> {
    let probes = || maps::canonical_probes(n, maps::PROBE_SEED);
    if matches!(kind, MapKind::Square | MapKind::Truncate) {
        if m != n {
            return Err(Failure::Usage("control maps need m = n".into()));
        }
        let f = if kind == MapKind::Square { controls::square } else { controls::truncate };
        return Ok(MapOracle::tabulate(n, n, probes(), f)?);
    }
    let spec = match kind {
        MapKind::Standard => MapSpec::Standard(maps::gen_random_standard(n, m, seed)?),
        MapKind::Degenerate => MapSpec::Degenerate(maps::gen_random_degenerate(n, m, seed)?),
        _ => {
            let block = Mat::identity(m).block(0, 0, m, n);
            MapSpec::Standard(StandardMapSpec::new(Sign::Plus, block, None)?)
        }
    };
    if !tabulate {
        return Ok(MapOracle::from_spec(spec));
    }
    Ok(MapOracle::tabulate(n, m, probes(), |a| maps::apply(&spec, a).expect("dimensions match"))?)
}

/// Formula maps are checked on seeded random adjacent pairs, tables on every
/// pair of tabulated inputs.
fn verify(o: &MapOracle, pairs: usize, seed: u64, style: Style) -> Outcome {
    let candidates: Vec<(SymMat, SymMat)> = if o.spec().is_some() {
        let mut rng = random::trial_rng(seed, 0);
        maps::random_adjacent_pairs(&mut rng, o.n(), pairs)
    } else {
        let inputs: Vec<&SymMat> = o.table().iter().map(|(x, _)| x).collect();
        inputs
            .iter()
            .enumerate()
            .flat_map(|(i, a)| inputs[i + 1..].iter().map(move |b| ((*a).clone(), (*b).clone())))
            .collect()
    };
    let report = maps::check_adjacency_preserving(o, &candidates)?;
    match &report.violation {
        None => {
            println!("pass pairs={} adjacent={}", report.pairs_checked, report.adjacent_pairs);
            Ok(())
        }
        Some(w) => {
            println!("violation");
            print(w, style);
            Err(Failure::Violation)
        }
    }
}

fn selftest_command(seed: u64, trials: usize, suite: Option<String>) -> Outcome {
    let suites: Vec<&selftest::Suite> = match &suite {
        Some(name) => vec![selftest::find_suite(name).ok_or_else(|| {
            let names: Vec<&str> = selftest::SUITES.iter().map(|s| s.name).collect();
            Failure::Usage(format!("unknown suite `{name}`; known: {}", names.join(", ")))
        })?],
        None => selftest::SUITES.iter().collect(),
    };
    let mut failed = 0;
    for s in suites {
        let report = selftest::run_suite(s, seed, trials);
        print!("{}", report.render());
        eprintln!("{}: {:.2?}", report.suite, report.wall_time);
        if !report.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} suite(s) failed");
        return Err(Failure::Violation);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Verification => 1,
                ErrorKind::Malformed => 2,
                ErrorKind::Precondition => 3,
            })
        }
    }
}
