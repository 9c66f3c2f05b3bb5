use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::Zero;

use super::{Mat, Vector};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// A symmetric rational matrix: a point of the geometry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMat(Mat);

impl SymMat {
    pub fn new(mat: Mat) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "symmetric matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        match mat.asymmetry() {
            Some((row, col)) => Err(Error::NotSymmetric { row, col }),
            None => Ok(SymMat(mat)),
        }
    }

    /// Wraps a matrix already known to be symmetric.
    pub(crate) fn new_unchecked(mat: Mat) -> Self {
        debug_assert!(mat.is_symmetric());
        SymMat(mat)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        SymMat::new(Mat::from_i64(rows))
    }

    pub fn zeros(n: usize) -> Self {
        SymMat(Mat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        SymMat(Mat::identity(n))
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        SymMat(Mat::diagonal(entries))
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        SymMat::diagonal(&entries.iter().map(|&x| rat::int(x)).collect::<Vec<_>>())
    }

    /// The matrix unit `E_ij` (zero based), symmetrized as `E_ij + E_ji` when `i != j`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let one = rat::one();
        SymMat(Mat::zeros(n, n).with_entry(i, j, one.clone()).with_entry(j, i, one))
    }

    /// `coeff · u uᵀ`.
    pub fn outer(coeff: &Rat, u: &Vector) -> Self {
        SymMat(Mat::from_fn(u.dim(), u.dim(), |i, j| coeff * &u[i] * &u[j]))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    pub fn into_mat(self) -> Mat {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        self.0.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn trace(&self) -> Rat {
        self.0.trace()
    }

    pub fn scale(&self, factor: &Rat) -> SymMat {
        SymMat(self.0.scale(factor))
    }

    /// Index of the first nonzero entry in row-major order.
    pub fn leading_entry(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        self.0.data().iter().position(|x| !x.is_zero()).map(|k| (k / n, k % n))
    }

    /// Entries of the upper triangle, row by row.
    pub fn upper_entries(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> {
        let n = self.dim();
        (0..n).flat_map(move |i| (i..n).map(move |j| ((i, j), self.get(i, j))))
    }
}

impl Index<(usize, usize)> for SymMat {
    type Output = Rat;

    fn index(&self, idx: (usize, usize)) -> &Rat {
        &self.0[idx]
    }
}

impl Add for &SymMat {
    type Output = SymMat;

    fn add(self, rhs: &SymMat) -> SymMat {
        SymMat(&self.0 + &rhs.0)
    }
}

impl Sub for &SymMat {
    type Output = SymMat;

    fn sub(self, rhs: &SymMat) -> SymMat {
        SymMat(&self.0 - &rhs.0)
    }
}

impl Neg for &SymMat {
    type Output = SymMat;

    fn neg(self) -> SymMat {
        SymMat(-&self.0)
    }
}

impl From<SymMat> for Mat {
    fn from(s: SymMat) -> Mat {
        s.0
    }
}

impl AsRef<Mat> for SymMat {
    fn as_ref(&self) -> &Mat {
        &self.0
    }
}

impl AsRef<Mat> for Mat {
    fn as_ref(&self) -> &Mat {
        self
    }
}

impl fmt::Display for SymMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `coeff · vector vectorᵀ` with both factors nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOneTerm {
    coeff: Rat,
    vector: Vector,
}

impl RankOneTerm {
    pub fn new(coeff: Rat, vector: Vector) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::Precondition("rank-one term with zero coefficient".into()));
        }
        if vector.is_zero() {
            return Err(Error::Precondition("rank-one term with zero vector".into()));
        }
        Ok(RankOneTerm { coeff, vector })
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn vector(&self) -> &Vector {
        &self.vector
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    /// The same matrix written with the vector's leading entry equal to one.
    ///
    /// `λ·uuᵀ = (λ·u_k²)·(u/u_k)(u/u_k)ᵀ`, which makes the pair unique.
    pub fn normalized(&self) -> RankOneTerm {
        let k = self.vector.leading_index().expect("nonzero vector");
        let lead = self.vector[k].clone();
        RankOneTerm {
            coeff: &self.coeff * &lead * &lead,
            vector: self.vector.scale(&(rat::one() / lead)),
        }
    }

    pub fn to_sym(&self) -> SymMat {
        SymMat::outer(&self.coeff, &self.vector)
    }
}

impl fmt::Display for RankOneTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", self.coeff, self.vector)
    }
}
