use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::Zero;

use crate::rat::{self, Rat};

/// A column vector of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<Rat>,
}

impl Vector {
    pub fn new(entries: Vec<Rat>) -> Self {
        Vector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Vector::new(entries.iter().map(|&x| rat::int(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![Rat::zero(); dim])
    }

    /// The standard basis vector with a one at `index` (zero based).
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.entries[index] = rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.iter().position(|x| !x.is_zero())
    }

    pub fn dot(&self, other: &Vector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched vectors");
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Rat) -> Vector {
        Vector::new(self.entries.iter().map(|x| x * factor).collect())
    }
}

impl Index<usize> for Vector {
    type Output = Rat;

    fn index(&self, i: usize) -> &Rat {
        &self.entries[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        Vector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        Vector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector::new(self.entries.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
