use rand::Rng;

use super::{DegenerateMapSpec, Functional, StandardMapSpec};
use crate::error::{Error, Result};
use crate::linalg::{self, SymMat};
use crate::random;
use crate::rat::{self, Sign};

/// A random standard map `S_n → S_m` with zero translation.
pub fn gen_random_standard(n: usize, m: usize, seed: u64) -> Result<StandardMapSpec> {
    if m < n {
        return Err(Error::Precondition(format!("standard map needs m ≥ n, got n={n}, m={m}")));
    }
    let mut rng = random::trial_rng(seed, 0);
    let c = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    loop {
        let r = random::mat(&mut rng, m, n);
        if linalg::rank(&r) == n {
            return StandardMapSpec::new(c, r, None);
        }
    }
}

/// A random degenerate map `A ↦ f(A)·B` with `f` a (scaled) trace.
pub fn gen_random_degenerate(n: usize, m: usize, seed: u64) -> Result<DegenerateMapSpec> {
    let mut rng = random::trial_rng(seed, 0);
    let v = random::nonzero_vector(&mut rng, m);
    let b = SymMat::outer(&rat::one(), &v);
    let f = if rng.gen_bool(0.5) {
        Functional::Trace
    } else {
        Functional::ScaledTrace(random::nonzero_rat(&mut rng))
    };
    DegenerateMapSpec::new(n, b, f)
}

/// `(A, A + λ·uuᵀ)` with random `A` and random nonzero rank-one step.
pub fn random_adjacent_pairs(rng: &mut impl Rng, n: usize, count: usize) -> Vec<(SymMat, SymMat)> {
    (0..count)
        .map(|_| {
            let a = random::sym(rng, n);
            let b = &a + &random::rank_one(rng, n).to_sym();
            (a, b)
        })
        .collect()
}
