//! Seeded property suites over the whole library.
//!
//! Every suite draws its instances from [`random::trial_rng`] with one
//! stream per trial, so a `(seed, trials)` pair fixes every instance. Trials
//! run in parallel; failures are reported in trial order, so the printed
//! report does not depend on scheduling.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::geometry::{self, LineProfile};
use crate::linalg::{self, Mat, SymMat, Vector};
use crate::maps::{
    self, ClassifyResult, DegenerateMapSpec, MapOracle, MapSpec, StandardMapSpec, Witness,
};
use crate::minkowski::{self, AffineCongruence, LorentzMat};
use crate::quadform;
use crate::random::{self, TrialRng};
use crate::rat::{self, Rat, Sign};
use crate::text::{self, Style, TextFormat};

/// A failed trial: what went wrong and the values that show it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub description: String,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report text. Wall time is left out so that equal seeds give
    /// byte-identical reports.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} seed={} trials={} failures={} {}",
            self.suite,
            self.seed,
            self.trials,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for f in &self.failures {
            let _ = writeln!(out, "  trial {}: {}", f.trial, f.description);
            for line in f.witness.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        out
    }
}

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    trial: fn(&mut TrialRng, usize) -> Check,
}

struct Fault {
    description: String,
    witness: String,
}

type Check = std::result::Result<(), Fault>;

impl From<Error> for Fault {
    fn from(e: Error) -> Self {
        Fault { description: format!("unexpected error: {e}"), witness: String::new() }
    }
}

fn ensure(cond: bool, description: &str, witness: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(Fault { description: description.to_string(), witness: witness() })
    }
}

fn show(label: &str, value: &impl TextFormat) -> String {
    format!("{label}:\n{}", text::to_text(value, Style::Compact))
}

fn shows(items: &[(&str, &dyn Shown)]) -> String {
    items.iter().map(|(label, v)| format!("{label}:\n{}", v.shown())).collect()
}

/// Object-safe view of [`TextFormat`] for witness lists.
trait Shown {
    fn shown(&self) -> String;
}

impl<T: TextFormat> Shown for T {
    fn shown(&self) -> String {
        text::to_text(self, Style::Compact)
    }
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "metric-invariance",
        summary: "d is a metric invariant under translation, congruence and scaling",
        trial: metric_invariance,
    },
    Suite {
        name: "direct-sum",
        summary: "rank additivity agrees with an independent column-span count",
        trial: direct_sum,
    },
    Suite {
        name: "congruence",
        summary: "diagonalization, inertia invariance and rank-one decompositions",
        trial: congruence,
    },
    Suite {
        name: "line-profile",
        summary: "distance profile along a line matches direct evaluation",
        trial: line_profile,
    },
    Suite {
        name: "lines-through-multiples",
        summary: "a point adjacent to R and λR is a multiple of R",
        trial: lines_through_multiples,
    },
    Suite {
        name: "projection-splitting",
        summary: "rank-additive splittings of an idempotent are orthogonal idempotents",
        trial: projection_splitting,
    },
    Suite {
        name: "compression",
        summary: "corner compression and zero padding preserve distance and products",
        trial: compression,
    },
    Suite {
        name: "spectral-uniqueness",
        summary: "a full-rank matrix adjacent to every A − λᵢPᵢ at distance k−1 from λᵢPᵢ is A",
        trial: spectral_uniqueness,
    },
    Suite {
        name: "rank-one-perturbation",
        summary: "rank(A + λB) = 1 for all sampled λ forces B = 0",
        trial: rank_one_perturbation,
    },
    Suite {
        name: "adjacency-chains",
        summary: "adjacency chains are geodesics",
        trial: adjacency_chains,
    },
    Suite {
        name: "invertible-chains",
        summary: "invertible chains with rank n−1 crossings verify independently",
        trial: invertible_chains,
    },
    Suite {
        name: "preserver-lines",
        summary: "preservers map lines into lines injectively",
        trial: preserver_lines,
    },
    Suite {
        name: "isometry",
        summary: "standard maps are isometries; all preservers are nonexpansive",
        trial: isometry,
    },
    Suite {
        name: "block-form",
        summary: "padded standard maps stay in the top-left block",
        trial: block_form,
    },
    Suite {
        name: "minkowski",
        summary: "det(Tx − Ty) = Q(x − y), adjacency is null separation, K acts as the swap",
        trial: minkowski_suite,
    },
    Suite {
        name: "lorentz-roundtrip",
        summary: "congruence to Weyl map and back recovers (c, ±P)",
        trial: lorentz_roundtrip,
    },
    Suite {
        name: "preserver-instances",
        summary: "generated maps preserve adjacency and classify to their parameters",
        trial: preserver_instances,
    },
    Suite {
        name: "s2-affine",
        summary: "affine congruences of S_2 are recovered from tabulations",
        trial: s2_affine,
    },
    Suite {
        name: "negative-controls",
        summary: "A ↦ A² and entry truncation are flagged with verified witnesses",
        trial: negative_controls,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// FNV-1a, so each suite gets its own streams for the same user seed.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

pub fn run_suite(suite: &Suite, seed: u64, trials: usize) -> Report {
    let start = Instant::now();
    let base = seed ^ name_hash(suite.name);
    let failures = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = random::trial_rng(base, t as u64);
            (suite.trial)(&mut rng, t).err().map(|f| Failure {
                trial: t,
                description: f.description,
                witness: f.witness,
            })
        })
        .collect();
    Report { suite: suite.name, seed, trials, failures, wall_time: start.elapsed() }
}

pub fn run_all(seed: u64, trials: usize) -> Vec<Report> {
    SUITES.iter().map(|s| run_suite(s, seed, trials)).collect()
}

fn dim_in(rng: &mut TrialRng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Dimension cycling through `lo..=hi` with the trial index, so every
/// dimension gets an equal share of trials.
fn cycled_dim(trial: usize, lo: usize, hi: usize) -> usize {
    lo + trial % (hi - lo + 1)
}

fn invertible_sym(rng: &mut TrialRng, n: usize) -> SymMat {
    loop {
        let a = random::sym(rng, n);
        if !linalg::det(&a).is_zero() {
            return a;
        }
    }
}

fn sym_rank_upto(rng: &mut TrialRng, n: usize, max_rank: usize) -> SymMat {
    let r = rng.gen_range(0..=max_rank);
    random::sym_of_rank(rng, n, r)
}

fn to_sym(m: Mat) -> std::result::Result<SymMat, Fault> {
    SymMat::new(m).map_err(Fault::from)
}

fn metric_invariance(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 6);
    let a = random::sym_any_rank(rng, n);
    let b = random::sym_any_rank(rng, n);
    let s = random::sym(rng, n);
    let r = random::invertible(rng, n);
    let c = random::nonzero_rat(rng);
    let d = linalg::dist(&a, &b)?;
    let witness = || shows(&[("A", &a), ("B", &b), ("S", &s), ("R", &r)]);
    ensure(linalg::dist(&(&a + &s), &(&b + &s))? == d, "d(A+S, B+S) ≠ d(A, B)", witness)?;
    let (ra, rb) = (linalg::congruence(&a, &r)?, linalg::congruence(&b, &r)?);
    ensure(linalg::dist(&ra, &rb)? == d, "d(RARᵀ, RBRᵀ) ≠ d(A, B)", witness)?;
    ensure(linalg::dist(&a.scale(&c), &b.scale(&c))? == d, "d(cA, cB) ≠ d(A, B)", witness)?;
    ensure(linalg::dist(&b, &a)? == d, "d is not symmetric", witness)?;
    ensure((d == 0) == (a == b), "d(A, B) = 0 does not match A = B", witness)?;
    let triangle = linalg::dist(&a, &s)? <= d + linalg::dist(&b, &s)?;
    ensure(triangle, "triangle inequality fails for A, B, S", witness)
}

/// Dimension of the span of `vectors` by Gauss-Jordan reduction over ℚ.
fn span_dim(vectors: &[Vector]) -> usize {
    let mut rows: Vec<Vec<Rat>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        let pivot_row: Vec<Rat> = rows[rank].iter().map(|x| x / &pivot).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn direct_sum(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 5);
    let y = sym_rank_upto(rng, n, n);
    let mut z = sym_rank_upto(rng, n, n);
    if rng.gen_bool(0.3) && !y.is_zero() {
        // Force a shared image direction.
        let shared = y.as_mat().columns().into_iter().find(|c| !c.is_zero()).expect("nonzero");
        z = &z + &SymMat::outer(&random::nonzero_rat(rng), &shared);
    }
    let x = &y + &z;
    let got = linalg::direct_sum_check(&x, &y, &z)?;
    let (cy, cz) = (y.as_mat().columns(), z.as_mat().columns());
    let joint: Vec<Vector> = cy.iter().chain(&cz).cloned().collect();
    let expected = span_dim(&joint) == span_dim(&cy) + span_dim(&cz);
    ensure(got == expected, "direct_sum_check disagrees with span dimension count", || {
        shows(&[("Y", &y), ("Z", &z)])
    })
}

fn congruence(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 6);
    let a = random::sym_any_rank(rng, n);
    let witness = || show("A", &a);
    let cd = quadform::diagonalize(&a);
    ensure(cd.verify(&a), "S·A·Sᵀ is not the returned diagonal", witness)?;
    ensure(!linalg::det(&cd.s).is_zero(), "diagonalizing S is singular", witness)?;
    let r = random::invertible(rng, n);
    let moved = linalg::congruence(&a, &r)?;
    ensure(quadform::inertia(&moved) == quadform::inertia(&a), "inertia changed", || {
        shows(&[("A", &a), ("R", &r)])
    })?;
    let dec = quadform::rank_one_decompose(&a);
    ensure(dec.reassemble(n) == a, "decomposition does not sum to A", witness)?;
    let vectors: Vec<Vector> = dec.terms.iter().map(|t| t.vector().clone()).collect();
    ensure(span_dim(&vectors) == dec.len(), "decomposition vectors are dependent", witness)?;
    for count in 0..=dec.len() {
        let partial = dec.partial_sum(n, count);
        ensure(linalg::rank(&partial) == count, "partial sum rank ≠ term count", witness)?;
    }
    let u = random::rank_one(rng, n);
    let expected = if u.coeff().is_positive() { 1 } else { -1 };
    ensure(quadform::sign_of_rank_one(&u.to_sym())? == expected, "wrong rank-one sign", || {
        show("cuuᵀ", &u.to_sym())
    })
}

fn line_profile(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 5);
    let base = random::sym_any_rank(rng, n);
    let dir = random::rank_one(rng, n);
    let l = geometry::Line::new(base, dir.clone())?;
    // Thirds: unrelated G, G off the line by a term missing the direction,
    // and G off the line by a term containing it.
    let g = match trial % 3 {
        0 => random::sym_any_rank(rng, n),
        1 => {
            let w = sym_rank_upto(rng, n, n - 1);
            &l.point(&random::small_rat(rng)) + &w
        }
        _ => {
            let w = random::sym_any_rank(rng, n);
            &(&l.point(&random::small_rat(rng)) + &w) + &dir.to_sym()
        }
    };
    let profile = geometry::line_distance_profile(&g, &l)?;
    let witness = || {
        format!("{}{}{}", show("G", &g), show("base", l.base()), show("profile", &profile))
    };
    let mut samples: Vec<Rat> =
        [0, 1, -1, 2, -3].iter().map(|&k| rat::int(k)).chain([rat::frac(1, 2)]).collect();
    match &profile {
        LineProfile::Constant { .. } => samples.push(rat::int(7)),
        LineProfile::Exceptional { lambda0, point, k_at_point } => {
            samples.push(lambda0.clone());
            ensure(*point == l.point(lambda0), "exceptional point is not on the line", witness)?;
            ensure(linalg::dist(&g, point)? == *k_at_point, "d(G, K) mismatch", witness)?;
            let off = linalg::dist(&g, &l.point(&(lambda0 + Rat::one())))?;
            ensure(off == k_at_point + 1, "d(G, K) is not one less than off-point", witness)?;
        }
    }
    for lambda in &samples {
        let direct = linalg::dist(&g, &l.point(lambda))?;
        ensure(direct == profile.distance_at(lambda), "profile disagrees with direct rank", || {
            format!("λ = {lambda}\n{}", witness())
        })?;
    }
    Ok(())
}

fn lines_through_multiples(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 5);
    let r = random::rank_one(rng, n).to_sym();
    let lambda = loop {
        let x = random::nonzero_rat(rng);
        if !x.is_one() {
            break x;
        }
    };
    let lr = r.scale(&lambda);
    let l = geometry::line(&r, &lr)?;
    let mu = loop {
        let x = random::small_rat(rng);
        if !x.is_one() && x != lambda {
            break x;
        }
    };
    let mut candidates = vec![r.scale(&mu)];
    candidates.extend((0..4).map(|_| &r + &random::rank_one(rng, n).to_sym()));
    for x in &candidates {
        if !(linalg::is_adjacent(x, &r)? && linalg::is_adjacent(x, &lr)?) {
            ensure(x != &r.scale(&mu), "μR is not adjacent to R and λR", || show("R", &r))?;
            continue;
        }
        let on = geometry::on_line(&l, x)?;
        let multiple = quadform::rank_one_decompose(&r)
            .terms
            .first()
            .map(|t| {
                let v = t.vector();
                let k = v.leading_index().expect("nonzero");
                let m = x.get(k, k) / r.get(k, k);
                r.scale(&m) == *x
            })
            .unwrap_or(false);
        ensure(on.is_some() && multiple, "point adjacent to R and λR is not a multiple of R", || {
            format!("λ = {lambda}\n{}{}", show("R", &r), show("X", x))
        })?;
    }
    Ok(())
}

fn projection_splitting(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 5);
    let mut idx: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
    if idx.is_empty() {
        idx.push(0);
    }
    let cut = rng.gen_range(0..=idx.len());
    let v = random::invertible(rng, n);
    let v_inv = linalg::inverse(&v)?;
    let conj = |set: &[usize]| {
        let d = quadform::coordinate_projection(n, set).into_mat();
        &(&v * &d) * &v_inv
    };
    let (a, b) = (conj(&idx[..cut]), conj(&idx[cut..]));
    let p = &a + &b;
    let witness = || shows(&[("A", &a), ("B", &b)]);
    ensure(&p * &p == p, "P = A + B is not idempotent", witness)?;
    ensure(linalg::rank(&p) == linalg::rank(&a) + linalg::rank(&b), "ranks do not add", witness)?;
    let zero = Mat::zeros(n, n);
    ensure(&a * &a == a && &b * &b == b, "summand is not idempotent", witness)?;
    ensure(&a * &b == zero && &b * &a == zero, "AB or BA is nonzero", witness)?;

    let p = quadform::coordinate_projection(n, &idx);
    let dec = quadform::rank_one_decompose(&p);
    let split = rng.gen_range(0..=dec.len());
    let a = dec.partial_sum(n, split);
    let b = &p - &a;
    ensure(linalg::rank(&p) == linalg::rank(&a) + linalg::rank(&b), "ranks do not add", || {
        show("P", &p)
    })?;
    let (am, bm) = (a.as_mat(), b.as_mat());
    let ok = &(am * am) == am && &(bm * bm) == bm && (am * bm).is_zero() && (bm * am).is_zero();
    ensure(ok, "splitting of a coordinate projection is not orthogonal", || {
        shows(&[("A", &a), ("B", &b)])
    })
}

fn compression(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 5);
    let k = dim_in(rng, 1, n);
    let (a, b) = (random::sym_any_rank(rng, k), random::sym_any_rank(rng, k));
    let (ha, hb) = (linalg::embed_h(&a, n)?, linalg::embed_h(&b, n)?);
    let witness = || shows(&[("A", &a), ("B", &b)]);
    ensure(quadform::compress_q(&ha, k)? == a, "q(h(A)) ≠ A", witness)?;
    ensure(linalg::dist(&ha, &hb)? == linalg::dist(&a, &b)?, "padding changed distance", witness)?;
    let hsq = to_sym(ha.as_mat() * ha.as_mat())?;
    let sq = to_sym(a.as_mat() * a.as_mat())?;
    ensure(quadform::compress_q(&hsq, k)? == sq, "q(A²) ≠ q(A)²", witness)?;
    let haba = to_sym(&(ha.as_mat() * hb.as_mat()) * ha.as_mat())?;
    let aba = to_sym(&(a.as_mat() * b.as_mat()) * a.as_mat())?;
    ensure(quadform::compress_q(&haba, k)? == aba, "q(ABA) ≠ q(A)q(B)q(A)", witness)?;
    if k < n {
        let outside = &ha + &SymMat::unit(n, k, rng.gen_range(0..n));
        let rejected = matches!(quadform::compress_q(&outside, k), Err(Error::NotInBlockForm { .. }));
        ensure(rejected, "compression accepted a matrix outside the corner", || {
            show("X", &outside)
        })?;
    }
    Ok(())
}

fn spectral_uniqueness(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 3, 5);
    let k = dim_in(rng, 3, n);
    // Congruence by R preserves d and adjacency, so R·E_jj·Rᵀ may stand in
    // for orthogonal rank-one projections.
    let r = random::invertible(rng, n);
    let lambdas: Vec<Rat> = (0..k).map(|_| random::nonzero_rat(rng)).collect();
    let parts = (0..k)
        .map(|j| Ok(linalg::congruence(&SymMat::unit(n, j, j), &r)?.scale(&lambdas[j])))
        .collect::<crate::Result<Vec<_>>>()?;
    let a = parts.iter().fold(SymMat::zeros(n), |acc, p| &acc + p);
    let hypotheses = |b: &SymMat| -> crate::Result<bool> {
        if linalg::rank(b) != k {
            return Ok(false);
        }
        for p in &parts {
            if !linalg::is_adjacent(b, &(&a - p))? || linalg::dist(b, p)? != k - 1 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    ensure(hypotheses(&a)?, "A itself fails the hypotheses", || show("A", &a))?;
    let i = rng.gen_range(0..k);
    let mut candidates = vec![&a + &parts[i].scale(&random::nonzero_rat(rng))];
    candidates.extend((0..3).map(|_| &a + &random::rank_one(rng, n).to_sym()));
    candidates.push(&a + &random::sym_of_rank(rng, n, 2));
    for b in &candidates {
        if hypotheses(b)? {
            ensure(*b == a, "B satisfies the hypotheses but differs from A", || {
                shows(&[("A", &a), ("B", b)])
            })?;
        }
    }
    Ok(())
}

fn rank_one_perturbation(rng: &mut TrialRng, trial: usize) -> Check {
    let m = cycled_dim(trial, 2, 5);
    let a = random::rank_one(rng, m).to_sym();
    let b = match trial % 3 {
        0 => a.scale(&random::nonzero_rat(rng)),
        1 => random::rank_one(rng, m).to_sym(),
        _ => loop {
            let b = random::sym_any_rank(rng, m);
            if !b.is_zero() {
                break b;
            }
        },
    };
    // Outside B ∈ ℚ·A, rank one holds at λ = 0 and at most two roots of a
    // quadratic 2×2 minor, so one of four fixed nonzero samples leaves rank
    // one. For B = tA only λ = −1/t does, which is among the entry ratios.
    let mut samples = vec![rat::int(1), rat::int(-1), rat::int(2), rat::frac(1, 3)];
    samples.extend(
        a.upper_entries()
            .filter(|(ij, _)| !b.get(ij.0, ij.1).is_zero())
            .map(|((i, j), x)| -(x / b.get(i, j))),
    );
    let ranks: Vec<usize> = samples.iter().map(|l| linalg::rank(&(&a + &b.scale(l)))).collect();
    ensure(ranks.iter().any(|&r| r != 1), "rank(A + λB) = 1 on every sample with B ≠ 0", || {
        shows(&[("A", &a), ("B", &b)])
    })?;
    let zero = SymMat::zeros(m);
    let all_one = samples.iter().all(|l| linalg::rank(&(&a + &zero.scale(l))) == 1);
    ensure(all_one, "rank(A + λ·0) ≠ 1", || show("A", &a))
}

fn adjacency_chains(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 5);
    let a = random::sym_any_rank(rng, n);
    let b = if trial.is_multiple_of(7) { a.clone() } else { random::sym_any_rank(rng, n) };
    let chain = geometry::adjacency_chain(&a, &b)?;
    let d = linalg::dist(&a, &b)?;
    let witness = || format!("{}{}", shows(&[("A", &a), ("B", &b)]), show("chain", &chain));
    ensure(chain.len() == d + 1, "chain length ≠ d(A, B) + 1", witness)?;
    ensure(chain.first() == &a && chain.last() == &b, "chain endpoints differ", witness)?;
    let pts = chain.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            ensure(linalg::dist(&pts[i], &pts[j])? == j - i, "chain is not geodesic", || {
                format!("points {i} and {j}\n{}", witness())
            })?;
        }
    }
    Ok(())
}

fn invertible_chains(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 4);
    let a = invertible_sym(rng, n);
    let b = loop {
        let b = invertible_sym(rng, n);
        if b != a {
            break b;
        }
    };
    let seed = rng.gen();
    let ic = geometry::invertible_chain(&a, &b, seed)?;
    let witness = || format!("seed = {seed}\n{}", shows(&[("A", &a), ("B", &b)]));
    geometry::verify_invertible_chain(&ic)?;
    let pts = ic.chain.points();
    ensure(pts.first() == Some(&a) && pts.last() == Some(&b), "chain endpoints differ", witness)?;
    ensure(ic.crossings.len() == pts.len() - 1, "one crossing per segment expected", witness)?;
    for p in pts {
        ensure(!linalg::det(p).is_zero(), "chain point is singular", witness)?;
    }
    for (j, c) in ic.crossings.iter().enumerate() {
        ensure(c.index == j, "crossing out of order", witness)?;
        ensure(linalg::rank(&c.point) == n - 1, "crossing rank ≠ n − 1", witness)?;
        let l = geometry::line(&pts[j], &pts[j + 1])?;
        ensure(geometry::on_line(&l, &c.point)?.is_some(), "crossing off its segment line", witness)?;
    }
    Ok(())
}

fn random_standard(rng: &mut TrialRng, n: usize, m: usize) -> crate::Result<StandardMapSpec> {
    let spec = maps::gen_random_standard(n, m, rng.gen())?;
    StandardMapSpec::new(spec.c(), spec.r_block().clone(), Some(random::sym(rng, m)))
}

fn preserver_lines(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 4);
    let m = n + rng.gen_range(0..=2);
    let spec = if trial % 4 == 3 {
        MapSpec::Degenerate(maps::gen_random_degenerate(n, m, rng.gen())?)
    } else {
        MapSpec::Standard(random_standard(rng, n, m)?)
    };
    let (a, b) = maps::random_adjacent_pairs(rng, n, 1).remove(0);
    let (fa, fb) = (maps::apply(&spec, &a)?, maps::apply(&spec, &b)?);
    let witness = || format!("{}{}", show("map", &spec), shows(&[("A", &a), ("B", &b)]));
    let image_line = geometry::line(&fa, &fb)?;
    let source_line = geometry::line(&a, &b)?;
    let mut params: Vec<Rat> = Vec::new();
    for lambda in [0, 1, 2, -1, 3].map(rat::int).into_iter().chain([rat::frac(1, 2)]) {
        let image = maps::apply(&spec, &source_line.point(&lambda))?;
        let Some(mu) = geometry::on_line(&image_line, &image)? else {
            return ensure(false, "image of a line point is off the image line", || {
                format!("λ = {lambda}\n{}", witness())
            });
        };
        ensure(!params.contains(&mu), "two line points share an image", witness)?;
        params.push(mu);
    }
    Ok(())
}

fn isometry(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 4);
    let m = if trial.is_multiple_of(2) { n } else { n + rng.gen_range(1..=2) };
    let spec = random_standard(rng, n, m)?;
    let (x, y) = (random::sym_any_rank(rng, n), random::sym_any_rank(rng, n));
    let witness = || format!("{}{}", show("map", &MapSpec::Standard(spec.clone())), shows(&[("X", &x), ("Y", &y)]));
    let d = linalg::dist(&spec.apply(&x)?, &spec.apply(&y)?)?;
    ensure(d == linalg::dist(&x, &y)?, "standard map changed a distance", witness)?;
    // With Ψ(X) = Φ(X) − Φ(0): invertible inputs reach full rank n, singular
    // inputs stay below it.
    let zero_image = spec.apply(&SymMat::zeros(n))?;
    let psi = |z: &SymMat| -> crate::Result<usize> { Ok(linalg::rank(&(&spec.apply(z)? - &zero_image))) };
    let inv = invertible_sym(rng, n);
    ensure(psi(&inv)? == n, "invertible input does not reach rank n", witness)?;
    let singular = sym_rank_upto(rng, n, n - 1);
    ensure(psi(&singular)? < n, "singular input reaches rank n", witness)?;

    let deg = maps::gen_random_degenerate(n, m, rng.gen())?;
    let o = MapOracle::from_spec(MapSpec::Degenerate(deg.clone()));
    let pairs: Vec<(SymMat, SymMat)> =
        (0..5).map(|_| (random::sym_any_rank(rng, n), random::sym_any_rank(rng, n))).collect();
    let report = maps::check_nonexpansive(&o, &pairs)?;
    ensure(report.passed(), "degenerate map increased a distance", || {
        report.violation.as_ref().map(|w| show("witness", w)).unwrap_or_default()
    })
}

fn block_form(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 4);
    let m = n + rng.gen_range(1..=2);
    let k = random::invertible(rng, n);
    let padded = Mat::from_fn(m, n, |i, j| if i < n { k.get(i, j).clone() } else { rat::zero() });
    let c = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let spec = StandardMapSpec::new(c, padded, None)?;
    let a = random::sym_any_rank(rng, n);
    let image = spec.apply(&a)?;
    let witness = || shows(&[("K", &k), ("A", &a), ("Φ(A)", &image)]);
    let block = linalg::extract_block(&image, n)?;
    let expected = linalg::congruence(&a, &k)?.scale(&c.to_rat());
    ensure(block == expected, "top-left block is not c·KAKᵀ", witness)?;
    let b = random::sym_any_rank(rng, n);
    let (ha, hb) = (linalg::embed_h(&a, m)?, linalg::embed_h(&b, m)?);
    ensure((a == b) == (ha == hb), "padding is not injective", witness)?;
    ensure(linalg::dist(&ha, &hb)? == linalg::dist(&a, &b)?, "padding changed distance", witness)
}

/// A nonzero null vector of `Q` from a Pythagorean triple.
fn null_vector(rng: &mut TrialRng) -> Vector {
    let (p, q) = (rng.gen_range(1i64..=4), rng.gen_range(0i64..=4));
    let t = random::nonzero_rat(rng);
    let (mut x1, mut x2) = (rat::int(p * p - q * q), rat::int(2 * p * q));
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut x1, &mut x2);
    }
    let s1 = rat::int(random::sign(rng).into());
    let s2 = rat::int(random::sign(rng).into());
    Vector::new(vec![&x1 * &s1, &x2 * &s2, rat::int(p * p + q * q)]).scale(&t)
}

fn minkowski_suite(rng: &mut TrialRng, trial: usize) -> Check {
    let x = random::vector(rng, 3);
    let y = match trial % 3 {
        0 => random::vector(rng, 3),
        1 => &x + &null_vector(rng),
        _ => x.clone(),
    };
    let witness = || shows(&[("x", &x), ("y", &y)]);
    let check = minkowski::null_separation_adjacency_check(&x, &y)?;
    ensure(check.det_identity, "det(Tx − Ty) ≠ Q(x − y)", witness)?;
    ensure(check.consistent(), "adjacency disagrees with null separation", witness)?;
    let q = minkowski::q_form(&(&x - &y), 3)?;
    let adjacent = linalg::is_adjacent(&minkowski::t_map(&x)?, &minkowski::t_map(&y)?)?;
    ensure(adjacent == (x != y && q.is_zero()), "adjacency disagrees with Q = 0", witness)?;
    ensure(minkowski::t_inv(&minkowski::t_map(&x)?)? == x, "T⁻¹(Tx) ≠ x", witness)?;
    let swap = Mat::from_i64(&[&[0, 1], &[1, 0]]);
    let lhs = minkowski::t_map(&LorentzMat::reflection().as_mat().mul_vec(&x))?;
    let rhs = linalg::congruence(&minkowski::t_map(&x)?, &swap)?;
    ensure(lhs == rhs, "T(Kx) ≠ Q·T(x)·Qᵀ", witness)
}

fn random_sign(rng: &mut TrialRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn lorentz_roundtrip(rng: &mut TrialRng, _trial: usize) -> Check {
    let p = random::unimodular_2x2(rng);
    let c = random_sign(rng);
    let g = AffineCongruence::new(c, p.clone(), random::sym(rng, 2))?;
    let w = minkowski::congruence_to_weyl(&g)?;
    let l = w.lorentz().as_mat();
    let witness = || format!("c = {c}\n{}", show("P", &p));
    let j = minkowski::signature(3);
    ensure(&(&l.transpose() * &j) * l == j, "LᵀJL ≠ J", witness)?;
    ensure(w.alpha().is_one(), "|det P| = 1 but α ≠ 1", witness)?;
    let x = random::vector(rng, 3);
    let direct = g.apply(&minkowski::t_map(&x)?)?;
    ensure(minkowski::t_map(&w.apply(&x))? == direct, "Weyl map disagrees with congruence", witness)?;
    let (c2, p2) = minkowski::lorentz_to_congruence(w.lorentz())?;
    ensure(c2 == c, "recovered c differs", witness)?;
    ensure(p2 == p || p2 == -&p, "recovered P is not ±P", || format!("{}{}", witness(), show("recovered", &p2)))
}

fn preserver_instances(rng: &mut TrialRng, trial: usize) -> Check {
    let n = 2 + (trial / 2) % 3;
    let m = n + rng.gen_range(0..=2);
    let spec = if trial.is_multiple_of(2) {
        MapSpec::Standard(random_standard(rng, n, m)?)
    } else {
        MapSpec::Degenerate(maps::gen_random_degenerate(n, m, rng.gen())?)
    };
    let witness = || show("map", &spec);
    let o = MapOracle::from_spec(spec.clone());
    let pairs = maps::random_adjacent_pairs(rng, n, 50);
    let report = maps::check_adjacency_preserving(&o, &pairs)?;
    ensure(report.passed() && report.adjacent_pairs == 50, "generated map broke adjacency", witness)?;
    let verdict = maps::classify(&o);
    let matches = match (&spec, &verdict) {
        (MapSpec::Standard(s), ClassifyResult::Standard { c, r_block, translation }) => {
            let s = s.normalized();
            *c == s.c() && r_block == s.r_block() && translation == s.translation()
        }
        (MapSpec::Degenerate(d), ClassifyResult::Degenerate { b, translation, samples }) => {
            b == d.b() && translation.is_zero() && degenerate_samples_match(d, samples)?
        }
        _ => false,
    };
    ensure(matches, "classifier verdict does not match the generated map", || {
        format!("{}{}", witness(), show("verdict", &verdict))
    })
}

fn degenerate_samples_match(d: &DegenerateMapSpec, samples: &[(SymMat, Rat)]) -> crate::Result<bool> {
    let f0 = d.functional().eval(&SymMat::zeros(d.n()))?;
    for (x, v) in samples {
        if d.functional().eval(x)? - &f0 != *v {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verified_witness(w: &Witness, f: impl Fn(&SymMat) -> SymMat) -> crate::Result<bool> {
    Ok(linalg::is_adjacent(&w.a, &w.b)?
        && f(&w.a) == w.image_a
        && f(&w.b) == w.image_b
        && !linalg::is_adjacent(&w.image_a, &w.image_b)?)
}

fn flagged(o: &MapOracle, f: impl Fn(&SymMat) -> SymMat) -> crate::Result<bool> {
    match maps::classify(o) {
        ClassifyResult::NotAdjacencyPreserving { witness } => verified_witness(&witness, f),
        _ => Ok(false),
    }
}

fn s2_affine(rng: &mut TrialRng, _trial: usize) -> Check {
    let p = random::invertible(rng, 2);
    let c = random_sign(rng);
    let g = AffineCongruence::new(c, p.clone(), random::sym(rng, 2))?;
    let probes = maps::canonical_probes(2, maps::PROBE_SEED);
    let o = MapOracle::tabulate(2, 2, probes.clone(), |a| g.apply(a).expect("2x2 input"))?;
    let witness = || format!("c = {c}\n{}{}", show("P", &p), show("S", &g.s));
    let got = maps::recover_s2_affine(&o)?;
    let same_p = got.p() == &p || got.p() == &-&p;
    ensure(got.c == c && got.s == g.s && same_p, "affine congruence not recovered", || {
        format!("{}{}", witness(), show("recovered", &got))
    })?;
    let truncated = MapOracle::tabulate(2, 2, probes, maps::controls::truncate)?;
    ensure(flagged(&truncated, maps::controls::truncate)?, "truncation map not flagged", witness)
}

fn negative_controls(rng: &mut TrialRng, trial: usize) -> Check {
    let n = cycled_dim(trial, 2, 4);
    let shift = random::sym(rng, n);
    let square = |a: &SymMat| &maps::controls::square(a) + &shift;
    let truncate = |a: &SymMat| &maps::controls::truncate(a) + &shift;
    let mut inputs = maps::canonical_probes(n, maps::PROBE_SEED);
    inputs.extend((0..4).map(|_| random::sym(rng, n)));
    let witness = || show("shift", &shift);
    let o = MapOracle::tabulate(n, n, inputs.clone(), square)?;
    ensure(flagged(&o, square)?, "A ↦ A² + S not flagged", witness)?;
    let o = MapOracle::tabulate(n, n, inputs, truncate)?;
    ensure(flagged(&o, truncate)?, "truncation + S not flagged", witness)
}
