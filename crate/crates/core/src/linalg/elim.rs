//! Fraction-free (Bareiss) row reduction and what is built on it.
//!
//! Each rational row is first cleared of denominators by its own lcm, which
//! leaves the row space unchanged. Elimination then runs over the integers;
//! after `k` pivots every trailing entry is a `(k+1)`-minor of the scaled
//! input, so each division by the previous pivot is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Mat, Vector};
use crate::error::{Error, Result};
use crate::rat::Rat;

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

fn integer_row(row: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
    (ints, scale)
}

fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let n_rows = rows.len();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon { rows, pivots, swaps }
}

fn echelon_of(m: &Mat) -> (Echelon, Vec<BigInt>) {
    let (rows, scales): (Vec<_>, Vec<_>) = m.row_vectors().map(integer_row).unzip();
    (echelon(rows, m.cols()), scales)
}

/// Exact rank over the rationals.
pub fn rank(m: &Mat) -> usize {
    echelon_of(m).0.pivots.len()
}

/// Exact determinant of a square matrix.
pub fn det(m: &Mat) -> Rat {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rat::one();
    }
    let (ech, scales) = echelon_of(m);
    if ech.pivots.len() < n {
        return Rat::zero();
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let value = Rat::new(ech.rows[n - 1][n - 1].clone(), scale);
    if ech.swaps % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Columns of `m` forming a basis of its column space.
pub fn image_basis(m: &Mat) -> Vec<Vector> {
    let (ech, _) = echelon_of(m);
    ech.pivots.iter().map(|&(_, c)| m.column(c)).collect()
}

/// Some `w` with `m·w = v`, or `None` when `v` is not in the image of `m`.
/// Free variables are set to zero.
pub fn solve(m: &Mat, v: &Vector) -> Option<Vector> {
    assert_eq!(m.rows(), v.dim(), "right-hand side has the wrong dimension");
    let cols = m.cols();
    let rows = m
        .row_vectors()
        .zip(v.entries())
        .map(|(row, rhs)| {
            let mut aug = row.to_vec();
            aug.push(rhs.clone());
            integer_row(&aug).0
        })
        .collect();
    let ech = echelon(rows, cols + 1);
    if ech.pivots.iter().any(|&(_, c)| c == cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let mut acc = Rat::from_integer(row[cols].clone());
        for (j, xj) in x.iter().enumerate().skip(c + 1) {
            if !xj.is_zero() {
                acc -= Rat::from_integer(row[j].clone()) * xj;
            }
        }
        x[c] = acc / Rat::from_integer(row[c].clone());
    }
    Some(Vector::new(x))
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let columns = (0..n)
        .map(|j| solve(m, &Vector::unit(n, j)).ok_or(Error::Singular))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(&columns))
}
