//! Maps that are known not to preserve adjacency, used as negative controls.

use crate::linalg::{Mat, SymMat};

/// `A ↦ A²`.
pub fn square(a: &SymMat) -> SymMat {
    SymMat::new(a.as_mat() * a.as_mat()).expect("square of a symmetric matrix")
}

/// `A ↦ a₁₁·E₁₁`: keeps only the leading entry.
pub fn truncate(a: &SymMat) -> SymMat {
    let n = a.dim();
    SymMat::new(Mat::from_fn(n, n, |i, j| {
        if i == 0 && j == 0 {
            a.get(0, 0).clone()
        } else {
            num_traits::Zero::zero()
        }
    }))
    .expect("diagonal")
}
