//! Lines, the distance profile of a point along a line, and adjacency chains.

use num_traits::{One, Zero};

use crate::error::{check_dims, Error, Result};
use crate::linalg::{self, RankOneTerm, SymMat};
use crate::quadform;
use crate::random;
use crate::rat::Rat;

/// `{ base + λ·direction : λ ∈ ℚ }` for a rank-one `direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    base: SymMat,
    direction: RankOneTerm,
}

impl Line {
    pub fn new(base: SymMat, direction: RankOneTerm) -> Result<Self> {
        check_dims("line", base.dim(), direction.dim())?;
        Ok(Line { base, direction })
    }

    pub fn base(&self) -> &SymMat {
        &self.base
    }

    pub fn direction(&self) -> &RankOneTerm {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn point(&self, lambda: &Rat) -> SymMat {
        &self.base + &self.direction.to_sym().scale(lambda)
    }
}

/// The line through two adjacent points, parametrized so that `λ = 0` gives
/// `a` and `λ = 1` gives `b`. The direction is normalized to a vector with
/// leading entry one.
pub fn line(a: &SymMat, b: &SymMat) -> Result<Line> {
    let d = linalg::dist(a, b)?;
    if d != 1 {
        return Err(Error::NotAdjacent(d));
    }
    let terms = quadform::rank_one_decompose(&(b - a)).terms;
    debug_assert_eq!(terms.len(), 1);
    Line::new(a.clone(), terms[0].normalized())
}

pub fn line_point(l: &Line, lambda: &Rat) -> SymMat {
    l.point(lambda)
}

/// The parameter of `x` on `l`, if `x` lies on it.
pub fn on_line(l: &Line, x: &SymMat) -> Result<Option<Rat>> {
    check_dims("on_line", l.dim(), x.dim())?;
    let diff = x - &l.base;
    let v = l.direction.vector();
    let k = v.leading_index().expect("direction vector is nonzero");
    let lambda = diff.get(k, k) / (l.direction.coeff() * &v[k] * &v[k]);
    Ok((l.direction.to_sym().scale(&lambda) == diff).then_some(lambda))
}

/// How `λ ↦ d(G, line_point(l, λ))` behaves: constant, or one less at a
/// single exceptional point than everywhere else.
#[derive(Debug, Clone, PartialEq)]
pub enum LineProfile {
    Constant { k: usize },
    Exceptional { lambda0: Rat, point: SymMat, k_at_point: usize },
}

impl LineProfile {
    /// The distance this profile predicts at parameter `lambda`.
    pub fn distance_at(&self, lambda: &Rat) -> usize {
        match self {
            LineProfile::Constant { k } => *k,
            LineProfile::Exceptional { lambda0, k_at_point, .. } => {
                if lambda == lambda0 {
                    *k_at_point
                } else {
                    k_at_point + 1
                }
            }
        }
    }
}

/// Classifies the distance from `g` along `l`.
///
/// With `M₀ = G − base` and direction `δ·vvᵀ`, the distance at `λ` is
/// `rank(M₀ − λδ·vvᵀ)`. If `v ∉ Im M₀` that rank is `rank M₀ + 1` except at
/// `λ = 0`. Otherwise, for `M₀w = v`, the rank drops to `rank M₀ − 1`
/// exactly at `λδ·vᵀw = 1` and stays `rank M₀` elsewhere; when `vᵀw = 0` it
/// never drops.
pub fn line_distance_profile(g: &SymMat, l: &Line) -> Result<LineProfile> {
    check_dims("line_distance_profile", g.dim(), l.dim())?;
    let m0 = g - &l.base;
    let r0 = linalg::rank(&m0);
    let v = l.direction.vector();
    let profile = match linalg::solve(&m0, v)? {
        None => LineProfile::Exceptional {
            lambda0: Rat::zero(),
            point: l.base.clone(),
            k_at_point: r0,
        },
        Some(w) => {
            let vtw = v.dot(&w);
            if vtw.is_zero() {
                LineProfile::Constant { k: r0 }
            } else {
                let lambda0 = Rat::one() / (l.direction.coeff() * vtw);
                LineProfile::Exceptional {
                    point: l.point(&lambda0),
                    lambda0,
                    k_at_point: r0 - 1,
                }
            }
        }
    };
    verify_profile(g, l, &profile)?;
    Ok(profile)
}

fn verify_profile(g: &SymMat, l: &Line, profile: &LineProfile) -> Result<()> {
    let probes: Vec<Rat> = match profile {
        LineProfile::Constant { .. } => vec![Rat::zero(), Rat::one()],
        LineProfile::Exceptional { lambda0, .. } => vec![lambda0.clone(), lambda0 + Rat::one()],
    };
    for lambda in probes {
        let observed = linalg::dist(g, &l.point(&lambda))?;
        if observed != profile.distance_at(&lambda) {
            return Err(Error::Verification(format!(
                "line profile predicts {} at λ = {lambda}, observed {observed}",
                profile.distance_at(&lambda)
            )));
        }
    }
    Ok(())
}

/// A nonempty sequence of consecutively adjacent points.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    points: Vec<SymMat>,
}

impl Chain {
    pub fn new(points: Vec<SymMat>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("a chain needs at least one point".into()));
        }
        for (i, pair) in points.windows(2).enumerate() {
            let d = linalg::dist(&pair[0], &pair[1])?;
            if d != 1 {
                return Err(Error::Verification(format!(
                    "chain points {i} and {} are at distance {d}",
                    i + 1
                )));
            }
        }
        Ok(Chain { points })
    }

    pub fn points(&self) -> &[SymMat] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> &SymMat {
        &self.points[0]
    }

    pub fn last(&self) -> &SymMat {
        &self.points[self.points.len() - 1]
    }
}

/// A geodesic chain from `a` to `b`: the partial sums of a rank-one
/// decomposition of `b − a`, added to `a`.
pub fn adjacency_chain(a: &SymMat, b: &SymMat) -> Result<Chain> {
    check_dims("adjacency_chain", a.dim(), b.dim())?;
    let terms = quadform::rank_one_decompose(&(b - a)).terms;
    let mut points = Vec::with_capacity(terms.len() + 1);
    points.push(a.clone());
    for t in &terms {
        let next = points.last().expect("nonempty") + &t.to_sym();
        points.push(next);
    }
    debug_assert_eq!(points.last(), Some(b));
    Chain::new(points)
}

/// A point of rank `n − 1` on the line through chain points `index` and `index + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub index: usize,
    pub point: SymMat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvertibleChain {
    pub chain: Chain,
    pub crossings: Vec<Crossing>,
}

const MAX_ATTEMPTS: u64 = 16;
const DETOUR_DRAWS: usize = 64;

/// A step `x → x + λ·uuᵀ` together with its singular crossing.
///
/// `det(x + s·uuᵀ) = det(x)·(1 + s·uᵀx⁻¹u)` is affine in `s`; the step keeps
/// the endpoint invertible when `1 + λq ≠ 0` and the segment line meets the
/// singular set at `s = −1/q` when `q = uᵀx⁻¹u ≠ 0`.
fn try_step(x: &SymMat, x_inv: &linalg::Mat, term: &RankOneTerm) -> Option<(SymMat, SymMat)> {
    let u = term.vector();
    let q = u.dot(&x_inv.mul_vec(u));
    if q.is_zero() || (Rat::one() + term.coeff() * &q).is_zero() {
        return None;
    }
    let uu = SymMat::outer(&Rat::one(), u);
    let next = x + &uu.scale(term.coeff());
    let crossing = x + &uu.scale(&(-Rat::one() / q));
    Some((next, crossing))
}

/// `(Dy)(Dy)ᵀ / (yᵀDy)`, whose removal lowers the rank of `d` by one.
fn reducing_term(d: &SymMat, y: &linalg::Vector) -> Option<RankOneTerm> {
    let dy = d.as_mat().mul_vec(y);
    let t = y.dot(&dy);
    if t.is_zero() {
        return None;
    }
    RankOneTerm::new(Rat::one() / t, dy).ok()
}

/// A chain of invertible matrices from `a` to `b` in which every segment's
/// line contains a matrix of rank `n − 1`.
///
/// Greedy: step along a term of the rank-one decomposition of `b − x` that
/// keeps invertibility and has a singular crossing; when no term qualifies,
/// try random rank-reducing terms of `b − x`, then a random rank-one detour. Deterministic in `seed`; every returned
/// chain has passed [`verify_invertible_chain`].
pub fn invertible_chain(a: &SymMat, b: &SymMat, seed: u64) -> Result<InvertibleChain> {
    check_dims("invertible_chain", a.dim(), b.dim())?;
    let n = a.dim();
    if linalg::rank(a) != n || linalg::rank(b) != n {
        return Err(Error::Precondition("invertible_chain needs invertible endpoints".into()));
    }
    if a == b {
        return Err(Error::Precondition("invertible_chain needs distinct endpoints".into()));
    }
    let max_steps = 4 * n + 8;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = random::trial_rng(seed, attempt);
        let mut points = vec![a.clone()];
        let mut crossings = Vec::new();
        let mut x = a.clone();
        let det_b = linalg::det(b);
        while &x != b && points.len() <= max_steps {
            let x_inv = linalg::inverse(x.as_mat())?;
            let gap = b - &x;
            // A point adjacent to b with the same determinant has no singular
            // point on its line to b, so it can never be the last step.
            let usable = |(next, _): &(SymMat, SymMat)| {
                next == b
                    || (!points.contains(next)
                        && !(linalg::rank(&(b - next)) == 1 && linalg::det(next) == det_b))
            };
            let mut step = quadform::rank_one_decompose(&gap)
                .terms
                .iter()
                .filter_map(|t| try_step(&x, &x_inv, t))
                .find(usable);
            for _ in 0..DETOUR_DRAWS {
                if step.is_some() {
                    break;
                }
                step = reducing_term(&gap, &random::nonzero_vector(&mut rng, n))
                    .and_then(|t| try_step(&x, &x_inv, &t))
                    .filter(usable);
            }
            for _ in 0..DETOUR_DRAWS {
                if step.is_some() {
                    break;
                }
                step = try_step(&x, &x_inv, &random::rank_one(&mut rng, n)).filter(usable);
            }
            let Some((next, crossing)) = step else { break };
            crossings.push(Crossing { index: points.len() - 1, point: crossing });
            points.push(next.clone());
            x = next;
        }
        if &x != b {
            continue;
        }
        let result = InvertibleChain { chain: Chain::new(points)?, crossings };
        verify_invertible_chain(&result)?;
        return Ok(result);
    }
    Err(Error::RetryExhausted(MAX_ATTEMPTS as usize))
}

/// Checks every postcondition of an invertible chain independently of how it
/// was built.
pub fn verify_invertible_chain(ic: &InvertibleChain) -> Result<()> {
    let points = ic.chain.points();
    let n = points[0].dim();
    if let Some(i) = points.iter().position(|p| linalg::rank(p) != n) {
        return Err(Error::Verification(format!("chain point {i} is singular")));
    }
    if ic.crossings.len() + 1 != points.len() {
        return Err(Error::Verification("one crossing per segment expected".into()));
    }
    for (j, c) in ic.crossings.iter().enumerate() {
        if c.index != j {
            return Err(Error::Verification(format!("crossing {j} has index {}", c.index)));
        }
        let r = linalg::rank(&c.point);
        if r + 1 != n {
            return Err(Error::Verification(format!("crossing {j} has rank {r}")));
        }
        let l = line(&points[j], &points[j + 1])?;
        if on_line(&l, &c.point)?.is_none() {
            return Err(Error::Verification(format!("crossing {j} is off its segment line")));
        }
    }
    Ok(())
}
