//! Seeded generators for rational test instances.
//!
//! Every generator draws from an explicit RNG; [`trial_rng`] derives one
//! independent stream per `(seed, trial)` so trials can run in any order and
//! still reproduce exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, Mat, RankOneTerm, SymMat, Vector};
use crate::rat::{self, Rat};

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A small rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
pub fn small_rat(rng: &mut impl Rng) -> Rat {
    rat::frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_rat(rng: &mut impl Rng) -> Rat {
    loop {
        let x = small_rat(rng);
        if x != rat::zero() {
            return x;
        }
    }
}

pub fn small_int(rng: &mut impl Rng) -> Rat {
    rat::int(rng.gen_range(-4..=4))
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::new((0..n).map(|_| small_rat(rng)).collect())
}

pub fn nonzero_vector(rng: &mut impl Rng, n: usize) -> Vector {
    loop {
        let v = vector(rng, n);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn rank_one(rng: &mut impl Rng, n: usize) -> RankOneTerm {
    RankOneTerm::new(nonzero_rat(rng), nonzero_vector(rng, n)).expect("nonzero parts")
}

/// A symmetric matrix with independent small rational entries.
pub fn sym(rng: &mut impl Rng, n: usize) -> SymMat {
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = small_rat(rng);
            m = m.with_entry(i, j, x.clone()).with_entry(j, i, x);
        }
    }
    SymMat::new(m).expect("filled symmetrically")
}

/// A symmetric matrix of exactly rank `r`, built from `r` rank-one terms with
/// independent vectors.
pub fn sym_of_rank(rng: &mut impl Rng, n: usize, r: usize) -> SymMat {
    assert!(r <= n, "rank {r} exceeds dimension {n}");
    loop {
        let vectors: Vec<Vector> = (0..r).map(|_| nonzero_vector(rng, n)).collect();
        if linalg::rank(&Mat::from_columns(&vectors)) < r {
            continue;
        }
        return vectors
            .iter()
            .fold(SymMat::zeros(n), |acc, v| &acc + &SymMat::outer(&nonzero_rat(rng), v));
    }
}

/// A symmetric matrix whose rank is drawn uniformly from `0..=n`.
pub fn sym_any_rank(rng: &mut impl Rng, n: usize) -> SymMat {
    let r = rng.gen_range(0..=n);
    sym_of_rank(rng, n, r)
}

pub fn mat(rng: &mut impl Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| small_rat(rng))
}

pub fn invertible(rng: &mut impl Rng, n: usize) -> Mat {
    loop {
        let m = mat(rng, n, n);
        if linalg::rank(&m) == n {
            return m;
        }
    }
}

/// A rational `2×2` matrix with `|det| = 1`: a product of shears, a
/// diagonal scaling `diag(t, 1/t)` and possibly a swap.
pub fn unimodular_2x2(rng: &mut impl Rng) -> Mat {
    let lower = Mat::from_rows(vec![vec![rat::one(), rat::zero()], vec![small_rat(rng), rat::one()]]);
    let upper = Mat::from_rows(vec![vec![rat::one(), small_rat(rng)], vec![rat::zero(), rat::one()]]);
    let t = nonzero_rat(rng);
    let scale = Mat::diagonal(&[t.clone(), rat::one() / t]);
    let mut p = &(&lower * &scale) * &upper;
    if rng.gen_bool(0.5) {
        p = &p * &Mat::from_i64(&[&[0, 1], &[1, 0]]);
    }
    p
}

pub fn sign(rng: &mut impl Rng) -> i32 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}
