use super::MapOracle;
use crate::error::Result;
use crate::linalg::{self, SymMat};

/// A pair of inputs whose images break the property being checked.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub a: SymMat,
    pub b: SymMat,
    pub image_a: SymMat,
    pub image_b: SymMat,
    pub input_distance: usize,
    pub image_distance: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreservationReport {
    pub pairs_checked: usize,
    pub adjacent_pairs: usize,
    pub violation: Option<Witness>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonexpansiveReport {
    pub pairs_checked: usize,
    /// Pairs with `d(Φ(X), Φ(Y)) = d(X, Y)`.
    pub equalities: usize,
    pub violation: Option<Witness>,
}

impl NonexpansiveReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn witness(o: &MapOracle, a: &SymMat, b: &SymMat) -> Result<Witness> {
    let image_a = o.eval(a)?;
    let image_b = o.eval(b)?;
    Ok(Witness {
        input_distance: linalg::dist(a, b)?,
        image_distance: linalg::dist(&image_a, &image_b)?,
        a: a.clone(),
        b: b.clone(),
        image_a,
        image_b,
    })
}

/// For every adjacent input pair, the images must be adjacent. Non-adjacent
/// pairs are skipped. The first violation is kept as a witness.
pub fn check_adjacency_preserving(
    o: &MapOracle,
    pairs: &[(SymMat, SymMat)],
) -> Result<PreservationReport> {
    let mut adjacent_pairs = 0;
    for (a, b) in pairs {
        if !linalg::is_adjacent(a, b)? {
            continue;
        }
        adjacent_pairs += 1;
        let w = witness(o, a, b)?;
        if w.image_distance != 1 {
            return Ok(PreservationReport {
                pairs_checked: pairs.len(),
                adjacent_pairs,
                violation: Some(w),
            });
        }
    }
    Ok(PreservationReport { pairs_checked: pairs.len(), adjacent_pairs, violation: None })
}

/// `d(Φ(X), Φ(Y)) ≤ d(X, Y)` on every pair.
pub fn check_nonexpansive(o: &MapOracle, pairs: &[(SymMat, SymMat)]) -> Result<NonexpansiveReport> {
    let mut equalities = 0;
    for (a, b) in pairs {
        let w = witness(o, a, b)?;
        if w.image_distance > w.input_distance {
            return Ok(NonexpansiveReport {
                pairs_checked: pairs.len(),
                equalities,
                violation: Some(w),
            });
        }
        if w.image_distance == w.input_distance {
            equalities += 1;
        }
    }
    Ok(NonexpansiveReport { pairs_checked: pairs.len(), equalities, violation: None })
}
