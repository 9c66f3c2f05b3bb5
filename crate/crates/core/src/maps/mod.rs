//! Maps `S_n → S_m`: standard maps `A ↦ c·R·A·Rᵀ (+ S)`, degenerate maps
//! `A ↦ f(A)·B`, oracles that answer queries about an arbitrary map, and the
//! tools that check and classify them.

mod check;
mod classify;
pub mod controls;
mod generate;

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{check_dims, Error, Result};
use crate::linalg::{self, Mat, SymMat, Vector};
use crate::rat::{self, Rat, Sign};

pub use check::{
    check_adjacency_preserving, check_nonexpansive, NonexpansiveReport, PreservationReport,
    Witness,
};
pub use classify::{
    canonical_probes, classify, classify_with_probes, recover_s2_affine, recover_standard,
    ClassifyResult, PROBE_SEED,
};
pub use generate::{gen_random_degenerate, gen_random_standard, random_adjacent_pairs};

/// `A ↦ c·R·A·Rᵀ + translation` with `R` an `m×n` block of rank `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardMapSpec {
    c: Sign,
    r_block: Mat,
    translation: SymMat,
}

impl StandardMapSpec {
    pub fn new(c: Sign, r_block: Mat, translation: Option<SymMat>) -> Result<Self> {
        let (m, n) = (r_block.rows(), r_block.cols());
        let r = linalg::rank(&r_block);
        if r != n {
            return Err(Error::Precondition(format!(
                "standard map block is {m}x{n} but has rank {r}"
            )));
        }
        let translation = translation.unwrap_or_else(|| SymMat::zeros(m));
        check_dims("standard map translation", translation.dim(), m)?;
        Ok(StandardMapSpec { c, r_block, translation })
    }

    pub fn c(&self) -> Sign {
        self.c
    }

    pub fn r_block(&self) -> &Mat {
        &self.r_block
    }

    pub fn translation(&self) -> &SymMat {
        &self.translation
    }

    pub fn n(&self) -> usize {
        self.r_block.cols()
    }

    pub fn m(&self) -> usize {
        self.r_block.rows()
    }

    pub fn apply(&self, a: &SymMat) -> Result<SymMat> {
        let image = linalg::congruence_rect(a, &self.r_block)?.scale(&self.c.to_rat());
        Ok(&image + &self.translation)
    }

    /// The same map with `R` replaced by `±R` so that the first nonzero entry
    /// of its first column is positive.
    pub fn normalized(&self) -> StandardMapSpec {
        StandardMapSpec {
            c: self.c,
            r_block: normalize_first_column(&self.r_block),
            translation: self.translation.clone(),
        }
    }

    /// An invertible `m×m` matrix whose first `n` columns are the block.
    pub fn full_r(&self) -> Mat {
        complete_to_invertible(&self.r_block)
    }
}

/// `±R` with the first nonzero entry of the first column positive.
pub fn normalize_first_column(r: &Mat) -> Mat {
    let negative = r
        .column(0)
        .entries()
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    if negative {
        -r
    } else {
        r.clone()
    }
}

/// Appends standard basis vectors outside the current span until the block
/// is square and invertible.
pub fn complete_to_invertible(block: &Mat) -> Mat {
    let m = block.rows();
    let mut columns = block.columns();
    for j in 0..m {
        if columns.len() == m {
            break;
        }
        columns.push(Vector::unit(m, j));
        if linalg::rank(&Mat::from_columns(&columns)) < columns.len() {
            columns.pop();
        }
    }
    Mat::from_columns(&columns)
}

/// The scalar factor `f` of a degenerate map.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    Trace,
    ScaledTrace(Rat),
    /// Exact-match lookup.
    Table(Vec<(SymMat, Rat)>),
}

impl Functional {
    pub fn eval(&self, a: &SymMat) -> Result<Rat> {
        match self {
            Functional::Trace => Ok(a.trace()),
            Functional::ScaledTrace(k) => Ok(k * a.trace()),
            Functional::Table(rows) => rows
                .iter()
                .find(|(x, _)| x == a)
                .map(|(_, v)| v.clone())
                .ok_or(Error::MissingTableEntry),
        }
    }

    fn scaled(self, factor: &Rat) -> Functional {
        match self {
            Functional::Trace => Functional::ScaledTrace(factor.clone()),
            Functional::ScaledTrace(k) => Functional::ScaledTrace(k * factor),
            Functional::Table(rows) => {
                Functional::Table(rows.into_iter().map(|(x, v)| (x, v * factor)).collect())
            }
        }
    }
}

/// `A ↦ f(A)·B` with `B` rank one and normalized so its first nonzero
/// entry is one.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateMapSpec {
    n: usize,
    b: SymMat,
    f: Functional,
}

impl DegenerateMapSpec {
    /// Builds the map, moving any scale in `b` into `f`.
    ///
    /// A tabulated `f` must separate every adjacent pair of its inputs.
    /// Trace-based functionals always do: a symmetric rank-one `λ·uuᵀ` has
    /// trace `λ·|u|² ≠ 0`.
    pub fn new(n: usize, b: SymMat, f: Functional) -> Result<Self> {
        let r = linalg::rank(&b);
        if r != 1 {
            return Err(Error::RankNotOne(r));
        }
        let (i, j) = b.leading_entry().expect("rank one");
        let lead = b.get(i, j).clone();
        let b = b.scale(&(rat::one() / &lead));
        let f = if lead == rat::one() { f } else { f.scaled(&lead) };
        if let Functional::Table(rows) = &f {
            if let Some((x, _)) = rows.iter().find(|(x, _)| x.dim() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "table input has dimension {}, expected {n}",
                    x.dim()
                )));
            }
            for (k, (x, fx)) in rows.iter().enumerate() {
                for (y, fy) in &rows[k + 1..] {
                    if linalg::is_adjacent(x, y)? && fx == fy {
                        return Err(Error::Precondition(format!(
                            "functional takes the value {fx} on adjacent inputs {x} and {y}"
                        )));
                    }
                }
            }
        }
        Ok(DegenerateMapSpec { n, b, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.b.dim()
    }

    pub fn b(&self) -> &SymMat {
        &self.b
    }

    pub fn functional(&self) -> &Functional {
        &self.f
    }

    pub fn apply(&self, a: &SymMat) -> Result<SymMat> {
        check_dims("degenerate map input", a.dim(), self.n)?;
        Ok(self.b.scale(&self.f.eval(a)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    Standard(StandardMapSpec),
    Degenerate(DegenerateMapSpec),
}

impl MapSpec {
    pub fn n(&self) -> usize {
        match self {
            MapSpec::Standard(s) => s.n(),
            MapSpec::Degenerate(d) => d.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            MapSpec::Standard(s) => s.m(),
            MapSpec::Degenerate(d) => d.m(),
        }
    }
}

/// Evaluates either form of map.
pub fn apply(spec: &MapSpec, a: &SymMat) -> Result<SymMat> {
    check_dims("map input", a.dim(), spec.n())?;
    match spec {
        MapSpec::Standard(s) => s.apply(a),
        MapSpec::Degenerate(d) => d.apply(a),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Evaluation {
    Spec(MapSpec),
    Table { pairs: Vec<(SymMat, SymMat)>, index: HashMap<SymMat, usize> },
}

/// A queryable map `S_n → S_m`, given by a formula or a finite tabulation.
#[derive(Debug, Clone, PartialEq)]
pub struct MapOracle {
    n: usize,
    m: usize,
    eval: Evaluation,
}

impl MapOracle {
    pub fn from_spec(spec: MapSpec) -> Self {
        MapOracle { n: spec.n(), m: spec.m(), eval: Evaluation::Spec(spec) }
    }

    pub fn tabulated(n: usize, m: usize, pairs: Vec<(SymMat, SymMat)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(pairs.len());
        for (k, (x, y)) in pairs.iter().enumerate() {
            check_dims("tabulated input", x.dim(), n)?;
            check_dims("tabulated output", y.dim(), m)?;
            if index.insert(x.clone(), k).is_some() {
                return Err(Error::Precondition(format!("input {x} is tabulated twice")));
            }
        }
        Ok(MapOracle { n, m, eval: Evaluation::Table { pairs, index } })
    }

    /// Tabulates `f` on the given inputs, skipping repeats.
    pub fn tabulate(
        n: usize,
        m: usize,
        inputs: impl IntoIterator<Item = SymMat>,
        f: impl Fn(&SymMat) -> SymMat,
    ) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let pairs = inputs
            .into_iter()
            .filter(|x| seen.insert(x.clone()))
            .map(|x| {
                let y = f(&x);
                (x, y)
            })
            .collect();
        MapOracle::tabulated(n, m, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn spec(&self) -> Option<&MapSpec> {
        match &self.eval {
            Evaluation::Spec(s) => Some(s),
            Evaluation::Table { .. } => None,
        }
    }

    /// The tabulated pairs, in insertion order; empty for formula oracles.
    pub fn table(&self) -> &[(SymMat, SymMat)] {
        match &self.eval {
            Evaluation::Spec(_) => &[],
            Evaluation::Table { pairs, .. } => pairs,
        }
    }

    pub fn eval(&self, a: &SymMat) -> Result<SymMat> {
        check_dims("oracle input", a.dim(), self.n)?;
        match &self.eval {
            Evaluation::Spec(spec) => apply(spec, a),
            Evaluation::Table { pairs, index } => {
                index.get(a).map(|&k| pairs[k].1.clone()).ok_or(Error::MissingTableEntry)
            }
        }
    }
}
