use num_traits::Zero;

use super::{elim, Mat, RankOneTerm, SymMat, Vector};
use crate::error::{check_dims, Error, Result};

pub fn rank(a: &impl AsRef<Mat>) -> usize {
    elim::rank(a.as_ref())
}

pub fn det(a: &impl AsRef<Mat>) -> crate::rat::Rat {
    elim::det(a.as_ref())
}

/// Arithmetic distance `rank(A − B)`.
pub fn dist(a: &SymMat, b: &SymMat) -> Result<usize> {
    check_dims("dist", a.dim(), b.dim())?;
    Ok(rank(&(a - b)))
}

pub fn is_adjacent(a: &SymMat, b: &SymMat) -> Result<bool> {
    Ok(dist(a, b)? == 1)
}

/// `R·A·Rᵀ`. `R` need not be invertible.
pub fn congruence(a: &SymMat, r: &Mat) -> Result<SymMat> {
    if !r.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "congruence needs a square matrix, got {}x{}",
            r.rows(),
            r.cols()
        )));
    }
    check_dims("congruence", r.cols(), a.dim())?;
    Ok(SymMat::new_unchecked(&(r * a.as_mat()) * &r.transpose()))
}

/// `R·A·Rᵀ` for a rectangular `R` (m×n) acting on `A` in `S_n`.
pub fn congruence_rect(a: &SymMat, r: &Mat) -> Result<SymMat> {
    check_dims("congruence", r.cols(), a.dim())?;
    Ok(SymMat::new_unchecked(&(r * a.as_mat()) * &r.transpose()))
}

pub fn sym_outer(term: &RankOneTerm, n: usize) -> Result<SymMat> {
    check_dims("sym_outer", term.dim(), n)?;
    Ok(term.to_sym())
}

pub fn image_basis(a: &impl AsRef<Mat>) -> Vec<Vector> {
    elim::image_basis(a.as_ref())
}

/// Some `w` with `A·w = v`, or `None` when `v ∉ Im A`.
pub fn solve(a: &impl AsRef<Mat>, v: &Vector) -> Result<Option<Vector>> {
    let a = a.as_ref();
    check_dims("solve", a.rows(), v.dim())?;
    Ok(elim::solve(a, v))
}

/// Given `X = Y + Z`, reports whether `rank X = rank Y + rank Z`, which holds
/// exactly when `Im X = Im Y ⊕ Im Z`.
pub fn direct_sum_check(x: &SymMat, y: &SymMat, z: &SymMat) -> Result<bool> {
    check_dims("direct_sum_check", x.dim(), y.dim())?;
    check_dims("direct_sum_check", x.dim(), z.dim())?;
    if &(y + z) != x {
        return Err(Error::Precondition("direct_sum_check requires X = Y + Z".into()));
    }
    Ok(rank(x) == rank(y) + rank(z))
}

/// `B ↦ [B 0; 0 0]` in dimension `m`.
pub fn embed_h(b: &SymMat, m: usize) -> Result<SymMat> {
    let n = b.dim();
    if m < n {
        return Err(Error::Precondition(format!("cannot embed dimension {n} into {m}")));
    }
    Ok(SymMat::new_unchecked(Mat::from_fn(m, m, |i, j| {
        if i < n && j < n {
            b.get(i, j).clone()
        } else {
            Zero::zero()
        }
    })))
}

/// The leading `n×n` block of `A`, provided every other entry is zero.
pub fn extract_block(a: &SymMat, n: usize) -> Result<SymMat> {
    let m = a.dim();
    if n > m {
        return Err(Error::Precondition(format!("block size {n} exceeds dimension {m}")));
    }
    if let Some(((row, col), _)) =
        a.upper_entries().find(|&((i, j), x)| (i >= n || j >= n) && !x.is_zero())
    {
        return Err(Error::NotInBlockForm { row, col, block: n });
    }
    Ok(SymMat::new_unchecked(a.as_mat().block(0, 0, n, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn e(n: usize, i: usize, j: usize) -> SymMat {
        SymMat::unit(n, i, j)
    }

    #[test]
    fn distance_examples() {
        let a = SymMat::from_i64(&[&[1, 2], &[2, 7]]).unwrap();
        assert_eq!(dist(&a, &a).unwrap(), 0);
        assert_eq!(dist(&e(2, 0, 0), &e(2, 0, 0).scale(&int(2))).unwrap(), 1);
        assert_eq!(dist(&SymMat::identity(3), &SymMat::zeros(3)).unwrap(), 3);
        assert!(dist(&SymMat::zeros(2), &SymMat::zeros(3)).is_err());
    }

    #[test]
    fn adjacency_examples() {
        assert!(is_adjacent(&e(2, 0, 0), &SymMat::zeros(2)).unwrap());
        assert!(!is_adjacent(&e(2, 0, 0), &e(2, 1, 1)).unwrap());
    }

    #[test]
    fn congruence_examples() {
        let a = SymMat::from_i64(&[&[3, 1], &[1, -2]]).unwrap();
        assert_eq!(congruence(&a, &Mat::identity(2)).unwrap(), a);
        let r = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(congruence(&e(2, 0, 0), &r).unwrap(), e(2, 0, 0));
        assert!(congruence(&a, &Mat::identity(3)).is_err());
    }

    #[test]
    fn sym_outer_examples() {
        let t = RankOneTerm::new(int(1), Vector::unit(2, 0)).unwrap();
        assert_eq!(sym_outer(&t, 2).unwrap(), e(2, 0, 0));
        let t = RankOneTerm::new(int(2), Vector::from_i64(&[1, 1])).unwrap();
        assert_eq!(sym_outer(&t, 2).unwrap(), SymMat::from_i64(&[&[2, 2], &[2, 2]]).unwrap());
        let t = RankOneTerm::new(int(-1), Vector::unit(3, 1)).unwrap();
        assert_eq!(sym_outer(&t, 3).unwrap(), e(3, 1, 1).scale(&int(-1)));
        assert!(sym_outer(&t, 2).is_err());
    }

    #[test]
    fn rank_one_term_rejects_zero_parts() {
        assert!(RankOneTerm::new(int(0), Vector::unit(2, 0)).is_err());
        assert!(RankOneTerm::new(int(1), Vector::zeros(2)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let x = SymMat::diag_i64(&[1, 1, 0]);
        assert!(direct_sum_check(&x, &e(3, 0, 0), &e(3, 1, 1)).unwrap());
        let y = e(3, 0, 0).scale(&int(2));
        let z = e(3, 0, 0).scale(&int(-1));
        assert!(!direct_sum_check(&e(3, 0, 0), &y, &z).unwrap());
        assert!(matches!(
            direct_sum_check(&x, &y, &z),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn solve_examples() {
        let v = Vector::from_i64(&[3, -1]);
        assert_eq!(solve(&SymMat::identity(2), &v).unwrap(), Some(v));
        assert_eq!(solve(&e(2, 0, 0), &Vector::unit(2, 1)).unwrap(), None);
    }

    #[test]
    fn embedding_and_extraction() {
        assert_eq!(embed_h(&SymMat::identity(2), 3).unwrap(), SymMat::diag_i64(&[1, 1, 0]));
        assert_eq!(embed_h(&SymMat::zeros(2), 4).unwrap(), SymMat::zeros(4));
        assert!(embed_h(&SymMat::identity(3), 2).is_err());
        assert_eq!(extract_block(&SymMat::diag_i64(&[1, 1, 0]), 2).unwrap(), SymMat::identity(2));
        assert_eq!(
            extract_block(&e(3, 2, 2), 2),
            Err(Error::NotInBlockForm { row: 2, col: 2, block: 2 })
        );
    }
}
