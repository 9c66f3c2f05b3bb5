//! Rational congruence diagonalization and what it yields: Sylvester
//! inertia, rank-one decompositions, and the coordinate compression of a
//! corner `P S_n P` onto `S_k`.
//!
//! Orthogonal eigendecompositions are irrational in general, so everything
//! here is phrased through congruence `S·A·Sᵀ = D` with rational `S`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, RankOneTerm, SymMat};
use crate::rat::Rat;

/// Invertible `S` and diagonal `D` with `S·A·Sᵀ = diag(D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CongruenceDiag {
    pub s: Mat,
    pub d: Vec<Rat>,
}

impl CongruenceDiag {
    pub fn diagonal_matrix(&self) -> SymMat {
        SymMat::diagonal(&self.d)
    }

    /// Recomputes `S·A·Sᵀ` and checks it against `diag(D)`.
    pub fn verify(&self, a: &SymMat) -> bool {
        linalg::det(&self.s) != Rat::zero()
            && linalg::congruence(a, &self.s).is_ok_and(|m| m == self.diagonal_matrix())
    }
}

/// Signature counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

/// A matrix written as a sum of rank-one terms with independent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub terms: Vec<RankOneTerm>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the first `count` terms in dimension `n`.
    pub fn partial_sum(&self, n: usize, count: usize) -> SymMat {
        self.terms[..count].iter().fold(SymMat::zeros(n), |acc, t| &acc + &t.to_sym())
    }

    pub fn reassemble(&self, n: usize) -> SymMat {
        self.partial_sum(n, self.terms.len())
    }
}

struct Work {
    w: Vec<Vec<Rat>>,
    s: Vec<Vec<Rat>>,
}

impl Work {
    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap(a, b);
        for row in &mut self.w {
            row.swap(a, b);
        }
        self.s.swap(a, b);
    }

    /// Row and column `i` += row and column `j`.
    fn add_into(&mut self, i: usize, j: usize) {
        let n = self.w.len();
        for c in 0..n {
            let v = self.w[j][c].clone();
            self.w[i][c] += v;
            let v = self.s[j][c].clone();
            self.s[i][c] += v;
        }
        for r in 0..n {
            let v = self.w[r][j].clone();
            self.w[r][i] += v;
        }
    }

    /// Row and column `r` ← `w`·(row and column `k`) − `p`·(row and column `r`).
    fn eliminate(&mut self, k: usize, r: usize, w: &Rat, p: &Rat) {
        let n = self.w.len();
        for c in 0..n {
            self.w[r][c] = w * &self.w[k][c] - p * &self.w[r][c];
            self.s[r][c] = w * &self.s[k][c] - p * &self.s[r][c];
        }
        for row in &mut self.w {
            row[r] = w * &row[k] - p * &row[r];
        }
    }
}

/// Symmetric Gaussian elimination by congruence.
///
/// When every remaining diagonal entry is zero but the trailing block is not,
/// adding row/column `j` to `i` for a nonzero `a_ij` creates the diagonal
/// entry `2·a_ij`.
pub fn diagonalize(a: &SymMat) -> CongruenceDiag {
    let n = a.dim();
    let mut work = Work {
        w: a.as_mat().row_vectors().map(<[Rat]>::to_vec).collect(),
        s: Mat::identity(n).row_vectors().map(<[Rat]>::to_vec).collect(),
    };
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !work.w[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !work.w[i][j].is_zero());
                match off {
                    Some((i, j)) => {
                        work.add_into(i, j);
                        i
                    }
                    None => break,
                }
            }
        };
        work.swap(k, pivot);
        let p = work.w[k][k].clone();
        for r in k + 1..n {
            let w = work.w[r][k].clone();
            if !w.is_zero() {
                work.eliminate(k, r, &w, &p);
            }
        }
    }
    let d = (0..n).map(|i| work.w[i][i].clone()).collect();
    let s = Mat::from_rows(work.s);
    CongruenceDiag { s, d }
}

pub fn inertia(a: &SymMat) -> Inertia {
    let d = diagonalize(a).d;
    let pos = d.iter().filter(|x| x.is_positive()).count();
    let neg = d.iter().filter(|x| x.is_negative()).count();
    Inertia { pos, neg, zero: d.len() - pos - neg }
}

/// `A = Σ λ_i u_i u_iᵀ` with `u_i` the columns of `S⁻¹` at the nonzero
/// entries of `D`. The `u_i` are independent, so the first `j` terms sum to a
/// matrix of rank exactly `j`.
pub fn rank_one_decompose(a: &SymMat) -> Decomposition {
    let diag = diagonalize(a);
    if diag.d.iter().all(Zero::is_zero) {
        return Decomposition { terms: Vec::new() };
    }
    let s_inv = linalg::inverse(&diag.s).expect("congruence factor is invertible");
    let terms = diag
        .d
        .iter()
        .enumerate()
        .filter(|(_, lambda)| !lambda.is_zero())
        .map(|(i, lambda)| {
            RankOneTerm::new(lambda.clone(), s_inv.column(i)).expect("nonzero term")
        })
        .collect();
    Decomposition { terms }
}

/// `P² = P ≠ 0`.
pub fn is_projection(p: &SymMat) -> bool {
    !p.is_zero() && &(p.as_mat() * p.as_mat()) == p.as_mat()
}

/// Sign of the coefficient of a rank-one `M = λ·uuᵀ`, read off `trace M = λ·|u|²`.
pub fn sign_of_rank_one(m: &SymMat) -> Result<i32> {
    let r = linalg::rank(m);
    if r != 1 {
        return Err(Error::RankNotOne(r));
    }
    Ok(if m.trace().is_positive() { 1 } else { -1 })
}

/// The coordinate projection `Σ_{i ∈ indices} E_ii` in dimension `n`.
pub fn coordinate_projection(n: usize, indices: &[usize]) -> SymMat {
    let mut d = vec![Rat::zero(); n];
    for &i in indices {
        d[i] = crate::rat::one();
    }
    SymMat::diagonal(&d)
}

/// Compression of the corner `P S_n P`, `P = E_11 + … + E_kk`, onto `S_k`.
pub fn compress_q(a: &SymMat, k: usize) -> Result<SymMat> {
    linalg::extract_block(a, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;
    use crate::rat::{frac, int};

    #[test]
    fn diagonal_input_is_left_alone() {
        let a = SymMat::diag_i64(&[2, -3]);
        let diag = diagonalize(&a);
        assert_eq!(diag.s, Mat::identity(2));
        assert_eq!(diag.d, vec![int(2), int(-3)]);
    }

    #[test]
    fn zero_diagonal_uses_off_diagonal_pivot() {
        let a = SymMat::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let diag = diagonalize(&a);
        assert_eq!(diag.s, Mat::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(diag.d, vec![int(2), int(-2)]);
        assert!(diag.verify(&a));
        assert_eq!(inertia(&a), Inertia { pos: 1, neg: 1, zero: 0 });
    }

    #[test]
    fn zero_diagonal_deeper_in_the_matrix() {
        let a = SymMat::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, 3], &[0, 0, 0, 0], &[0, 3, 0, 0]])
            .unwrap();
        let diag = diagonalize(&a);
        assert!(diag.verify(&a));
        assert_eq!(inertia(&a), Inertia { pos: 2, neg: 1, zero: 1 });
    }

    #[test]
    fn inertia_of_identity() {
        assert_eq!(inertia(&SymMat::identity(3)), Inertia { pos: 3, neg: 0, zero: 0 });
        assert_eq!(inertia(&SymMat::zeros(2)), Inertia { pos: 0, neg: 0, zero: 2 });
    }

    #[test]
    fn decomposition_examples() {
        let d = rank_one_decompose(&SymMat::unit(2, 0, 0));
        assert_eq!(d.terms, vec![RankOneTerm::new(int(1), Vector::unit(2, 0)).unwrap()]);
        let d = rank_one_decompose(&SymMat::diag_i64(&[1, 1, 0]));
        assert_eq!(
            d.terms,
            vec![
                RankOneTerm::new(int(1), Vector::unit(3, 0)).unwrap(),
                RankOneTerm::new(int(1), Vector::unit(3, 1)).unwrap(),
            ]
        );
        assert!(rank_one_decompose(&SymMat::zeros(3)).is_empty());
    }

    #[test]
    fn projections() {
        assert!(is_projection(&SymMat::unit(2, 0, 0)));
        let half = SymMat::from_i64(&[&[1, 1], &[1, 1]]).unwrap().scale(&frac(1, 2));
        assert!(is_projection(&half));
        assert!(!is_projection(&SymMat::unit(2, 0, 0).scale(&int(2))));
        assert!(!is_projection(&SymMat::zeros(2)));
    }

    #[test]
    fn rank_one_signs() {
        assert_eq!(sign_of_rank_one(&SymMat::unit(2, 0, 0)).unwrap(), 1);
        let m = SymMat::from_i64(&[&[1, 1], &[1, 1]]).unwrap().scale(&int(-3));
        assert_eq!(sign_of_rank_one(&m).unwrap(), -1);
        assert_eq!(sign_of_rank_one(&SymMat::identity(2)), Err(Error::RankNotOne(2)));
    }

    #[test]
    fn compression_of_corner() {
        assert_eq!(
            compress_q(&SymMat::diag_i64(&[1, 2, 0]), 2).unwrap(),
            SymMat::diag_i64(&[1, 2])
        );
        assert!(matches!(
            compress_q(&SymMat::diag_i64(&[1, 2, 3]), 2),
            Err(Error::NotInBlockForm { .. })
        ));
    }
}
