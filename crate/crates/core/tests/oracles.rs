//! Library results checked against independent brute-force computations.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use symadj::geometry::{self, LineProfile};
use symadj::linalg::{self, Mat, RankOneTerm, SymMat, Vector};
use symadj::minkowski;
use symadj::quadform;
use symadj::rat::{self, Rat};

/// Determinant by Laplace expansion along the first row.
fn laplace_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut total = Rat::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest order of a nonzero minor.
fn minor_rank(m: &Mat) -> usize {
    let rows = rows(m);
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<Rat>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                if !laplace_det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| rat::frac(p, q))
}

fn mat_strategy(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(rat_strategy(), r * c).prop_map(move |d| Mat::new(r, c, d).unwrap())
    })
}

fn sym_from_upper(n: usize, upper: &[Rat]) -> SymMat {
    let index = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        i * n - i * (i.saturating_sub(1)) / 2 + (j - i)
    };
    SymMat::new(Mat::from_fn(n, n, |i, j| upper[index(i, j)].clone())).unwrap()
}

/// Symmetric matrices whose rank is often deficient: a sum of a few
/// rank-one terms.
fn sym_strategy(n: usize) -> impl Strategy<Value = SymMat> {
    prop_oneof![
        prop::collection::vec(rat_strategy(), n * (n + 1) / 2).prop_map(move |u| sym_from_upper(n, &u)),
        prop::collection::vec((rat_strategy(), prop::collection::vec(rat_strategy(), n)), 0..=n).prop_map(
            move |terms| {
                terms.iter().fold(SymMat::zeros(n), |acc, (c, v)| {
                    &acc + &SymMat::outer(c, &Vector::new(v.clone()))
                })
            }
        ),
    ]
}

fn sym_pair(max: usize) -> impl Strategy<Value = (SymMat, SymMat)> {
    (1..=max).prop_flat_map(|n| (sym_strategy(n), sym_strategy(n)))
}

fn invertible_strategy(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(rat_strategy(), n * n)
        .prop_map(move |d| Mat::new(n, n, d).unwrap())
        .prop_filter("invertible", |m| !laplace_det(&rows(m)).is_zero())
}

fn rows(m: &Mat) -> Vec<Vec<Rat>> {
    m.row_vectors().map(<[Rat]>::to_vec).collect()
}

#[test]
fn rank_of_dependent_rows_matches_minor_count() {
    let m = Mat::from_i64(&[&[1, 2, 0, -1], &[3, 1, 4, 2], &[4, 3, 4, 1], &[2, 4, 0, -2]]);
    assert_eq!(minor_rank(&m), 2);
    assert_eq!(linalg::rank(&m), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_matches_minors(m in mat_strategy(4)) {
        prop_assert_eq!(linalg::rank(&m), minor_rank(&m));
    }

    #[test]
    fn det_matches_laplace(n in 1usize..=5, seed in prop::collection::vec(rat_strategy(), 25)) {
        let m = Mat::new(n, n, seed[..n * n].to_vec()).unwrap();
        prop_assert_eq!(linalg::det(&m), laplace_det(&rows(&m)));
    }

    #[test]
    fn dist_is_a_metric((a, b) in sym_pair(4), c in rat_strategy()) {
        let n = a.dim();
        let third = &a + &b.scale(&c);
        let dab = linalg::dist(&a, &b).unwrap();
        prop_assert_eq!(dab, linalg::dist(&b, &a).unwrap());
        prop_assert_eq!(dab == 0, a == b);
        prop_assert!(linalg::dist(&a, &third).unwrap() <= dab + linalg::dist(&b, &third).unwrap());
        prop_assert!(dab <= n);
    }

    #[test]
    fn dist_invariances(
        (a, b) in sym_pair(4),
        s_seed in prop::collection::vec(rat_strategy(), 10),
        r_seed in prop::collection::vec(rat_strategy(), 16),
        c in rat_strategy().prop_filter("nonzero", |c| !c.is_zero()),
    ) {
        let n = a.dim();
        let s = sym_from_upper(n, &s_seed);
        let r = Mat::new(n, n, r_seed[..n * n].to_vec()).unwrap();
        prop_assume!(!laplace_det(&rows(&r)).is_zero());
        let d = linalg::dist(&a, &b).unwrap();
        prop_assert_eq!(linalg::dist(&(&a + &s), &(&b + &s)).unwrap(), d);
        let (ra, rb) = (linalg::congruence(&a, &r).unwrap(), linalg::congruence(&b, &r).unwrap());
        prop_assert_eq!(linalg::dist(&ra, &rb).unwrap(), d);
        prop_assert_eq!(linalg::dist(&a.scale(&c), &b.scale(&c)).unwrap(), d);
    }

    #[test]
    fn diagonalization_is_exact(a in (1usize..=5).prop_flat_map(sym_strategy)) {
        let cd = quadform::diagonalize(&a);
        prop_assert!(!laplace_det(&rows(&cd.s)).is_zero());
        let sast = &(&cd.s * a.as_mat()) * &cd.s.transpose();
        prop_assert_eq!(sast, cd.diagonal_matrix().into_mat());
    }

    #[test]
    fn inertia_is_a_congruence_invariant(
        (a, r) in (1usize..=4).prop_flat_map(|n| (sym_strategy(n), invertible_strategy(n)))
    ) {
        let i = quadform::inertia(&a);
        prop_assert_eq!(i.pos + i.neg, minor_rank(a.as_mat()));
        prop_assert_eq!(i.pos + i.neg + i.zero, a.dim());
        prop_assert_eq!(quadform::inertia(&linalg::congruence(&a, &r).unwrap()), i);
    }

    #[test]
    fn decomposition_reassembles(a in (1usize..=5).prop_flat_map(sym_strategy)) {
        let n = a.dim();
        let dec = quadform::rank_one_decompose(&a);
        prop_assert_eq!(dec.reassemble(n), a.clone());
        prop_assert_eq!(dec.len(), minor_rank(a.as_mat()));
        let stacked = Mat::from_columns(&dec.terms.iter().map(|t| t.vector().clone()).collect::<Vec<_>>());
        if !dec.is_empty() {
            prop_assert_eq!(minor_rank(&stacked), dec.len());
        }
    }

    #[test]
    fn adjacency_chains_are_geodesic((a, b) in sym_pair(4)) {
        let chain = geometry::adjacency_chain(&a, &b).unwrap();
        let d = minor_rank((&a - &b).as_mat());
        prop_assert_eq!(chain.len(), d + 1);
        let p = chain.points();
        prop_assert_eq!(&p[0], &a);
        prop_assert_eq!(&p[d], &b);
        for i in 0..p.len() {
            for j in i..p.len() {
                prop_assert_eq!(minor_rank((&p[i] - &p[j]).as_mat()), j - i);
            }
        }
    }

    #[test]
    fn line_profile_matches_direct_ranks(
        (g, base, u) in (1usize..=4).prop_flat_map(|n| (
            sym_strategy(n),
            sym_strategy(n),
            prop::collection::vec(rat_strategy(), n).prop_filter("nonzero", |v| v.iter().any(|x| !x.is_zero())),
        )),
        c in rat_strategy().prop_filter("nonzero", |c| !c.is_zero()),
    ) {
        let l = geometry::Line::new(base, RankOneTerm::new(c, Vector::new(u)).unwrap()).unwrap();
        let profile = geometry::line_distance_profile(&g, &l).unwrap();
        let mut lambdas: Vec<Rat> = (-3..=3).map(rat::int).collect();
        if let LineProfile::Exceptional { lambda0, point, k_at_point } = &profile {
            prop_assert_eq!(point, &l.point(lambda0));
            prop_assert_eq!(minor_rank((&g - point).as_mat()), *k_at_point);
            lambdas.push(lambda0.clone());
        }
        for lambda in &lambdas {
            prop_assert_eq!(profile.distance_at(lambda), minor_rank((&g - &l.point(lambda)).as_mat()));
        }
    }

    #[test]
    fn invertible_chains_verify(
        (a, b) in (2usize..=3).prop_flat_map(|n| (invertible_strategy(n), invertible_strategy(n))),
        seed in any::<u64>(),
    ) {
        let sym = |m: &Mat| SymMat::new(&(m * &m.transpose()) + &Mat::identity(m.rows())).unwrap();
        let (a, b) = (sym(&a), sym(&b).scale(&rat::int(-1)));
        let ic = geometry::invertible_chain(&a, &b, seed).unwrap();
        let n = a.dim();
        for p in ic.chain.points() {
            prop_assert!(!laplace_det(&rows(p.as_mat())).is_zero());
        }
        for c in &ic.crossings {
            prop_assert_eq!(minor_rank(c.point.as_mat()), n - 1);
            let (x, y) = (&ic.chain.points()[c.index], &ic.chain.points()[c.index + 1]);
            prop_assert_eq!(minor_rank((x - y).as_mat()), 1);
            prop_assert_eq!(minor_rank((x - &c.point).as_mat()), 1);
            prop_assert_eq!(minor_rank((y - &c.point).as_mat()), 1);
        }
    }

    #[test]
    fn minkowski_det_identity(x in prop::collection::vec(rat_strategy(), 3), y in prop::collection::vec(rat_strategy(), 3)) {
        let (x, y) = (Vector::new(x), Vector::new(y));
        let diff = &x - &y;
        let q = &diff[2] * &diff[2] - &diff[0] * &diff[0] - &diff[1] * &diff[1];
        let t = &minkowski::t_map(&x).unwrap() - &minkowski::t_map(&y).unwrap();
        prop_assert_eq!(laplace_det(&rows(t.as_mat())), q.clone());
        prop_assert_eq!(minor_rank(t.as_mat()) == 1, x != y && q.is_zero());
    }

    #[test]
    fn projections_are_idempotent(u in prop::collection::vec(rat_strategy(), 1..=4)) {
        let v = Vector::new(u);
        prop_assume!(!v.is_zero());
        let p = SymMat::outer(&(Rat::one() / v.dot(&v)), &v);
        prop_assert!(quadform::is_projection(&p));
        prop_assert_eq!(quadform::sign_of_rank_one(&p).unwrap(), 1);
        let neg = p.scale(&rat::int(-2));
        prop_assert!(!quadform::is_projection(&neg));
        prop_assert_eq!(quadform::sign_of_rank_one(&neg).unwrap(), -1);
        prop_assert!(neg.trace().is_negative());
    }
}
