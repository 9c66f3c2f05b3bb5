//! Three-dimensional Minkowski space as a model of `S_2`.
//!
//! The linear bijection `T(x) = [x₃+x₁, x₂; x₂, x₃−x₁]` satisfies
//! `det(Tx − Ty) = Q(x − y)` with `Q(x) = x₃² − x₁² − x₂²`, so adjacency in
//! `S_2` is exactly nonzero null separation. Congruences `A ↦ c·P·A·Pᵀ + S`
//! of `S_2` correspond to Weyl maps `x ↦ α·Lx + b` with `L` Lorentz.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dims, Error, Result};
use crate::linalg::{self, Mat, SymMat, Vector};
use crate::quadform;
use crate::rat::{self, Rat, Sign};

/// `Q(x) = x_n² − x_1² − … − x_{n−1}²`.
pub fn q_form(x: &Vector, n: usize) -> Result<Rat> {
    check_dims("q_form", x.dim(), n)?;
    let Some((last, rest)) = x.entries().split_last() else {
        return Ok(Rat::zero());
    };
    Ok(rest.iter().fold(last * last, |acc, xi| acc - xi * xi))
}

/// The signature matrix `J = diag(−1, …, −1, +1)` of `Q`.
pub fn signature(n: usize) -> Mat {
    let mut d = vec![-rat::one(); n];
    if let Some(last) = d.last_mut() {
        *last = rat::one();
    }
    Mat::diagonal(&d)
}

pub fn t_map(x: &Vector) -> Result<SymMat> {
    check_dims("t_map", x.dim(), 3)?;
    let m = Mat::from_rows(vec![
        vec![&x[2] + &x[0], x[1].clone()],
        vec![x[1].clone(), &x[2] - &x[0]],
    ]);
    Ok(SymMat::new(m).expect("symmetric by construction"))
}

pub fn t_inv(m: &SymMat) -> Result<Vector> {
    check_dims("t_inv", m.dim(), 2)?;
    let half = rat::frac(1, 2);
    Ok(Vector::new(vec![
        (m.get(0, 0) - m.get(1, 1)) * &half,
        m.get(0, 1).clone(),
        (m.get(0, 0) + m.get(1, 1)) * &half,
    ]))
}

/// Both sides of "`Tx` adjacent to `Ty` iff `x ≠ y` and `Q(x − y) = 0`".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullAdjacency {
    /// `x ≠ y ∧ Q(x − y) = 0`.
    pub null_separated: bool,
    pub adjacent: bool,
    /// `det(Tx − Ty) = Q(x − y)`.
    pub det_identity: bool,
}

impl NullAdjacency {
    pub fn consistent(&self) -> bool {
        self.det_identity && self.null_separated == self.adjacent
    }
}

pub fn null_separation_adjacency_check(x: &Vector, y: &Vector) -> Result<NullAdjacency> {
    check_dims("null_separation_adjacency_check", x.dim(), 3)?;
    check_dims("null_separation_adjacency_check", y.dim(), 3)?;
    let q = q_form(&(x - y), 3)?;
    let (tx, ty) = (t_map(x)?, t_map(y)?);
    Ok(NullAdjacency {
        null_separated: x != y && q.is_zero(),
        adjacent: linalg::is_adjacent(&tx, &ty)?,
        det_identity: linalg::det(&(&tx - &ty)) == q,
    })
}

/// `Lᵀ·J·L = J`.
pub fn is_lorentz(l: &Mat) -> bool {
    if l.rows() != l.cols() || l.rows() == 0 {
        return false;
    }
    let j = signature(l.rows());
    &(&l.transpose() * &j) * l == j
}

/// A verified `3×3` Lorentz matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LorentzMat(Mat);

impl LorentzMat {
    pub fn new(l: Mat) -> Result<Self> {
        if l.rows() != 3 || l.cols() != 3 {
            return Err(Error::DimensionMismatch(format!(
                "Lorentz matrix must be 3x3, got {}x{}",
                l.rows(),
                l.cols()
            )));
        }
        if !is_lorentz(&l) {
            return Err(Error::Precondition(format!("{l} does not preserve Q")));
        }
        if linalg::det(&l).abs() != Rat::one() || l.get(2, 2).abs() < Rat::one() {
            return Err(Error::Verification(format!("Lorentz matrix {l} has |det| ≠ 1 or |l33| < 1")));
        }
        Ok(LorentzMat(l))
    }

    pub fn identity() -> Self {
        LorentzMat(Mat::identity(3))
    }

    /// `K = −E₁₁ + E₂₂ + E₃₃`, the reflection `x₁ ↦ −x₁`.
    pub fn reflection() -> Self {
        LorentzMat(Mat::diagonal(&[-rat::one(), rat::one(), rat::one()]))
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    /// `L⁻¹ = J·Lᵀ·J`.
    pub fn inverse(&self) -> LorentzMat {
        let j = signature(3);
        LorentzMat(&(&j * &self.0.transpose()) * &j)
    }

    pub fn compose(&self, other: &LorentzMat) -> LorentzMat {
        LorentzMat(&self.0 * &other.0)
    }
}

/// `det L = 1` and `l₃₃ ≥ 1`.
///
/// The identity has `l₃₃ = 1` and belongs to the restricted group, so the
/// bound is taken as non-strict.
pub fn is_restricted_lorentz(l: &LorentzMat) -> bool {
    linalg::det(&l.0) == Rat::one() && *l.0.get(2, 2) >= Rat::one()
}

/// `f(x) = α·Lx + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylMap {
    alpha: Rat,
    l: LorentzMat,
    b: Vector,
}

impl WeylMap {
    pub fn new(alpha: Rat, l: LorentzMat, b: Vector) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Precondition("Weyl map with α = 0".into()));
        }
        check_dims("Weyl translation", b.dim(), 3)?;
        Ok(WeylMap { alpha, l, b })
    }

    pub fn identity() -> Self {
        WeylMap { alpha: Rat::one(), l: LorentzMat::identity(), b: Vector::zeros(3) }
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn lorentz(&self) -> &LorentzMat {
        &self.l
    }

    pub fn translation(&self) -> &Vector {
        &self.b
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.l.0.mul_vec(x).scale(&self.alpha) + &self.b
    }

    /// `self ∘ other`: `α_f α_g · L_f L_g x + (α_f L_f b_g + b_f)`.
    pub fn compose(&self, other: &WeylMap) -> WeylMap {
        WeylMap {
            alpha: &self.alpha * &other.alpha,
            l: self.l.compose(&other.l),
            b: &self.l.0.mul_vec(&other.b).scale(&self.alpha) + &self.b,
        }
    }

    /// `x ↦ α⁻¹·L⁻¹x − α⁻¹·L⁻¹b`.
    pub fn inverse(&self) -> WeylMap {
        let alpha = Rat::one() / &self.alpha;
        let l = self.l.inverse();
        let b = -&l.0.mul_vec(&self.b).scale(&alpha);
        WeylMap { alpha, l, b }
    }
}

pub fn weyl_apply(f: &WeylMap, x: &Vector) -> Vector {
    f.apply(x)
}

pub fn weyl_compose(f: &WeylMap, g: &WeylMap) -> WeylMap {
    f.compose(g)
}

/// `A ↦ c·P·A·Pᵀ + S` on `S_2` with invertible `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineCongruence {
    pub c: Sign,
    p: Mat,
    pub s: SymMat,
}

impl AffineCongruence {
    pub fn new(c: Sign, p: Mat, s: SymMat) -> Result<Self> {
        if p.rows() != 2 || p.cols() != 2 {
            return Err(Error::DimensionMismatch("P must be 2x2".into()));
        }
        check_dims("translation", s.dim(), 2)?;
        if linalg::det(&p).is_zero() {
            return Err(Error::Singular);
        }
        Ok(AffineCongruence { c, p, s })
    }

    pub fn p(&self) -> &Mat {
        &self.p
    }

    pub fn apply(&self, a: &SymMat) -> Result<SymMat> {
        Ok(&linalg::congruence(a, &self.p)?.scale(&self.c.to_rat()) + &self.s)
    }
}

/// The Weyl map `x ↦ T⁻¹(g(Tx))`, with `α = |det P|`.
///
/// `det(P·A·Pᵀ) = det(P)²·det A`, so the linear part scales `Q` by
/// `det(P)²` and dividing it by `|det P|` leaves a Lorentz matrix.
pub fn congruence_to_weyl(g: &AffineCongruence) -> Result<WeylMap> {
    let columns = (0..3)
        .map(|i| {
            let image = linalg::congruence(&t_map(&Vector::unit(3, i))?, &g.p)?;
            t_inv(&image.scale(&g.c.to_rat()))
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = linalg::det(&g.p).abs();
    let l = Mat::from_columns(&columns).scale(&(Rat::one() / &alpha));
    let l = LorentzMat::new(l).map_err(|e| {
        Error::Verification(format!("congruence did not induce a Lorentz matrix: {e}"))
    })?;
    WeylMap::new(alpha, l, t_inv(&g.s)?)
}

/// A vector `r` with `r·rᵀ = m` for a positive semidefinite rank-one `m`,
/// with its leading entry positive.
fn rank_one_root(m: &SymMat) -> std::result::Result<Vector, Rat> {
    let n = m.dim();
    let k = (0..n).find(|&i| !m.get(i, i).is_zero()).expect("nonzero rank-one matrix");
    let root = rat::sqrt(m.get(k, k)).ok_or_else(|| m.get(k, k).clone())?;
    Ok(Vector::new((0..n).map(|j| m.get(j, k) / &root).collect()))
}

/// Negates `p` unless its first nonzero entry (row-major) is positive.
pub fn normalize_global_sign(p: &Mat) -> Mat {
    match p.data().iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -p,
        _ => p.clone(),
    }
}

/// Recovers `(c₁, P)` with `T(Lx) = c₁·P·(Tx)·Pᵀ` for all `x`.
///
/// The images of `E₁₁`, `E₂₂` and `E₁₂ + E₂₁` under `A ↦ T(L·T⁻¹A)` are
/// `c₁·p₁p₁ᵀ`, `c₁·p₂p₂ᵀ` and `c₁·(p₁p₂ᵀ + p₂p₁ᵀ)`. `P` is determined up to
/// a global sign, normalized so its first nonzero entry is positive. Fails
/// with [`Error::NonRationalLift`] when a column needs an irrational square
/// root.
pub fn lorentz_to_congruence(l: &LorentzMat) -> Result<(Sign, Mat)> {
    let induced = |a: &SymMat| -> Result<SymMat> { t_map(&l.0.mul_vec(&t_inv(a)?)) };
    let m1 = induced(&SymMat::unit(2, 0, 0))?;
    let m2 = induced(&SymMat::unit(2, 1, 1))?;
    let m12 = induced(&SymMat::unit(2, 0, 1))?;

    let c = match quadform::sign_of_rank_one(&m1)? {
        1 => Sign::Plus,
        _ => Sign::Minus,
    };
    let root = |m: &SymMat| {
        rank_one_root(&m.scale(&c.to_rat())).map_err(|value| Error::NonRationalLift { value })
    };
    let p1 = root(&m1)?;
    let p2 = root(&m2)?;
    let cross = |q2: &Vector| {
        let sum = &Mat::outer(&p1, q2) + &Mat::outer(q2, &p1);
        sum.scale(&c.to_rat()) == *m12.as_mat()
    };
    let p2 = if cross(&p2) {
        p2
    } else if cross(&-&p2) {
        -&p2
    } else {
        return Err(Error::Verification("Lorentz matrix is not induced by a congruence".into()));
    };
    let p = normalize_global_sign(&Mat::from_columns(&[p1, p2]));

    for i in 0..3 {
        let x = Vector::unit(3, i);
        let lhs = t_map(&l.0.mul_vec(&x))?;
        let rhs = linalg::congruence(&t_map(&x)?, &p)?.scale(&c.to_rat());
        if lhs != rhs {
            return Err(Error::Verification(format!("recovered P fails on basis vector {i}")));
        }
    }
    Ok((c, p))
}
