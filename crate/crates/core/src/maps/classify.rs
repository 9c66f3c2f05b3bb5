//! Deciding which branch of the standard/degenerate dichotomy a map is on.
//!
//! Everything runs on a finite probe set, after translating the map so that
//! `0 ↦ 0`. A verdict is only returned after it has been checked against
//! the oracle on every probe.

use num_traits::Zero;

use super::check::Witness;
use super::MapOracle;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, SymMat, Vector};
use crate::minkowski::AffineCongruence;
use crate::quadform;
use crate::random;
use crate::rat::{self, Rat, Sign};

/// Seed for the random rank-one part of the canonical probe set.
pub const PROBE_SEED: u64 = 0x00ad_1ace;

const RANDOM_PROBES: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyResult {
    Standard { c: Sign, r_block: Mat, translation: SymMat },
    /// `samples` lists `(X, f(X) − f(0))` for every probe.
    Degenerate { b: SymMat, translation: SymMat, samples: Vec<(SymMat, Rat)> },
    NotAdjacencyPreserving { witness: Witness },
    Undetermined { reason: String },
}

/// `0`, every `E_ii`, every `E_ij + E_ji`, `2E₁₁`, `I`, the adjacent
/// non-commuting pair `D = E₁₁ + 2E₂₂`, `D + (e₁+e₂)(e₁+e₂)ᵀ`, and ten seeded
/// random rank-one matrices. Duplicates are dropped.
pub fn canonical_probes(n: usize, seed: u64) -> Vec<SymMat> {
    let mut probes = vec![SymMat::zeros(n)];
    probes.extend((0..n).map(|i| SymMat::unit(n, i, i)));
    probes.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| SymMat::unit(n, i, j))));
    probes.push(SymMat::unit(n, 0, 0).scale(&rat::int(2)));
    probes.push(SymMat::identity(n));
    if n >= 2 {
        let d = &SymMat::unit(n, 0, 0) + &SymMat::unit(n, 1, 1).scale(&rat::int(2));
        let mut w = vec![rat::zero(); n];
        w[0] = rat::one();
        w[1] = rat::one();
        let step = SymMat::outer(&rat::one(), &Vector::new(w));
        let next = &d + &step;
        probes.push(d);
        probes.push(next);
    }
    let mut rng = random::trial_rng(seed, 0);
    probes.extend((0..RANDOM_PROBES).map(|_| random::rank_one(&mut rng, n).to_sym()));
    let mut seen = std::collections::HashSet::new();
    probes.retain(|p| seen.insert(p.clone()));
    probes
}

pub fn classify(o: &MapOracle) -> ClassifyResult {
    let mut probes = canonical_probes(o.n(), PROBE_SEED);
    let extra: Vec<SymMat> = o
        .table()
        .iter()
        .map(|(x, _)| x.clone())
        .filter(|x| !probes.contains(x))
        .collect();
    probes.extend(extra);
    classify_with_probes(o, &probes)
}

/// Classifies on the given probes; the first probe must be the zero matrix.
///
/// Order of checks: an adjacency violation among the probes wins; then all
/// translated values being multiples of one rank-one `B` gives a degenerate
/// verdict; then a standard map is recovered and verified.
pub fn classify_with_probes(o: &MapOracle, probes: &[SymMat]) -> ClassifyResult {
    match classify_inner(o, probes) {
        Ok(result) => result,
        Err(e) => ClassifyResult::Undetermined { reason: e.to_string() },
    }
}

fn classify_inner(o: &MapOracle, probes: &[SymMat]) -> Result<ClassifyResult> {
    let n = o.n();
    if probes.first() != Some(&SymMat::zeros(n)) {
        return Err(Error::Precondition("probe set must start with the zero matrix".into()));
    }
    let images = probes.iter().map(|p| o.eval(p)).collect::<Result<Vec<_>>>()?;
    let translation = images[0].clone();
    let shifted: Vec<SymMat> = images.iter().map(|y| y - &translation).collect();

    for i in 0..probes.len() {
        for j in i + 1..probes.len() {
            if linalg::is_adjacent(&probes[i], &probes[j])?
                && !linalg::is_adjacent(&shifted[i], &shifted[j])?
            {
                return Ok(ClassifyResult::NotAdjacencyPreserving {
                    witness: Witness {
                        a: probes[i].clone(),
                        b: probes[j].clone(),
                        image_a: images[i].clone(),
                        image_b: images[j].clone(),
                        input_distance: 1,
                        image_distance: linalg::dist(&images[i], &images[j])?,
                    },
                });
            }
        }
    }

    if let Some(b) = common_rank_one_direction(&shifted) {
        let (k, l) = b.leading_entry().expect("nonzero");
        let samples = probes
            .iter()
            .zip(&shifted)
            .map(|(x, y)| (x.clone(), y.get(k, l).clone()))
            .collect();
        return Ok(ClassifyResult::Degenerate { b, translation, samples });
    }

    let (c, r_block) = recover_from_values(n, |x| {
        let k = probes.iter().position(|p| p == x).ok_or(Error::MissingTableEntry)?;
        Ok(shifted[k].clone())
    })?;
    for (x, y) in probes.iter().zip(&shifted) {
        let predicted = linalg::congruence_rect(x, &r_block)?.scale(&c.to_rat());
        if &predicted != y {
            return Ok(ClassifyResult::Undetermined {
                reason: format!("recovered standard form disagrees with the oracle at {x}"),
            });
        }
    }
    Ok(ClassifyResult::Standard { c, r_block, translation })
}

/// The normalized rank-one `B` with every value in `ℚ·B`, if there is one.
fn common_rank_one_direction(values: &[SymMat]) -> Option<SymMat> {
    let first = values.iter().find(|y| !y.is_zero())?;
    if linalg::rank(first) != 1 {
        return None;
    }
    let (k, l) = first.leading_entry()?;
    let b = first.scale(&(rat::one() / first.get(k, l)));
    values.iter().all(|y| b.scale(y.get(k, l)) == *y).then_some(b)
}

/// `r` with `r·rᵀ = m` for positive semidefinite rank-one `m`, leading entry positive.
fn column_root(m: &SymMat, column: usize) -> Result<Vector> {
    let dim = m.dim();
    let k = (0..dim).find(|&i| !m.get(i, i).is_zero()).expect("nonzero rank-one matrix");
    let root = rat::sqrt(m.get(k, k))
        .ok_or_else(|| Error::NonRationalColumn { column, value: m.get(k, k).clone() })?;
    let r = Vector::new((0..dim).map(|j| m.get(j, k) / &root).collect());
    if SymMat::outer(&rat::one(), &r) != *m {
        return Err(Error::Verification(format!("column {column} is not a rank-one square")));
    }
    Ok(r)
}

fn recover_from_values(
    n: usize,
    psi: impl Fn(&SymMat) -> Result<SymMat>,
) -> Result<(Sign, Mat)> {
    let diag_images = (0..n).map(|i| psi(&SymMat::unit(n, i, i))).collect::<Result<Vec<_>>>()?;
    let signs = diag_images
        .iter()
        .map(quadform::sign_of_rank_one)
        .collect::<Result<Vec<_>>>()?;
    let c = if signs[0] > 0 { Sign::Plus } else { Sign::Minus };
    if let Some(i) = signs.iter().position(|&s| s != c.as_i32()) {
        return Err(Error::Verification(format!(
            "image of E_{0}{0} has the opposite sign to the image of E_11",
            i + 1
        )));
    }
    let mut columns = diag_images
        .iter()
        .enumerate()
        .map(|(i, y)| column_root(&y.scale(&c.to_rat()), i))
        .collect::<Result<Vec<_>>>()?;

    let cross = |i: usize, j: usize, ri: &Vector, rj: &Vector| -> Result<bool> {
        let expected = psi(&SymMat::unit(n, i, j))?;
        let sum = &Mat::outer(ri, rj) + &Mat::outer(rj, ri);
        Ok(sum.scale(&c.to_rat()) == *expected.as_mat())
    };
    for j in 1..n {
        if !cross(0, j, &columns[0], &columns[j])? {
            let flipped = -&columns[j];
            if !cross(0, j, &columns[0], &flipped)? {
                return Err(Error::CrossTermMismatch { first: 0, second: j });
            }
            columns[j] = flipped;
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            if !cross(i, j, &columns[i], &columns[j])? {
                return Err(Error::CrossTermMismatch { first: i, second: j });
            }
        }
    }
    let r_block = Mat::from_columns(&columns);
    if linalg::rank(&r_block) != n {
        return Err(Error::Verification("recovered block does not have full column rank".into()));
    }
    Ok((c, r_block))
}

/// Recovers `(c, R)` with `Φ(A) − Φ(0) = c·R·A·Rᵀ`, reading `c` from the sign
/// of `Ψ(E₁₁)`, the columns of `R` from `c·Ψ(E_ii) = r_i r_iᵀ`, and the
/// relative column signs from `Ψ(E_ij + E_ji)`. The first column's leading
/// entry is positive.
pub fn recover_standard(o: &MapOracle) -> Result<(Sign, Mat)> {
    let n = o.n();
    let origin = o.eval(&SymMat::zeros(n))?;
    let (c, r) = recover_from_values(n, |x| Ok(&o.eval(x)? - &origin))?;
    Ok((c, r))
}

/// Recovers `Φ(A) = c·R·A·Rᵀ + S` for a map on `S_2` that has some probe
/// pair at image distance 2, and verifies it on every probe.
pub fn recover_s2_affine(o: &MapOracle) -> Result<AffineCongruence> {
    if o.n() != 2 || o.m() != 2 {
        return Err(Error::Precondition(format!(
            "recover_s2_affine needs a map S_2 → S_2, got S_{} → S_{}",
            o.n(),
            o.m()
        )));
    }
    let probes = canonical_probes(2, PROBE_SEED);
    let images = probes.iter().map(|p| o.eval(p)).collect::<Result<Vec<_>>>()?;
    let mut has_witness = false;
    'outer: for i in 0..images.len() {
        for j in i + 1..images.len() {
            if linalg::dist(&images[i], &images[j])? == 2 {
                has_witness = true;
                break 'outer;
            }
        }
    }
    if !has_witness {
        return Err(Error::NoRank2Witness);
    }
    let s = images[0].clone();
    let (c, r) = recover_standard(o)?;
    let g = AffineCongruence::new(c, r, s)?;
    for (x, y) in probes.iter().zip(&images) {
        if &g.apply(x)? != y {
            return Err(Error::Verification(format!("recovered congruence disagrees at {x}")));
        }
    }
    Ok(g)
}
