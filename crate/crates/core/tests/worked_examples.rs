//! Small hand-checkable instances with known answers.

use symadj::geometry::{self, LineProfile};
use symadj::linalg::{self, Mat, RankOneTerm, SymMat, Vector};
use symadj::maps::{self, controls, ClassifyResult, DegenerateMapSpec, Functional, MapOracle, MapSpec, StandardMapSpec};
use symadj::minkowski::{self, AffineCongruence, LorentzMat, WeylMap};
use symadj::quadform::{self, Inertia};
use symadj::rat::{frac, int, Sign};
use symadj::{random, Error};

fn sym(rows: &[&[i64]]) -> SymMat {
    SymMat::from_i64(rows).unwrap()
}

fn e(n: usize, i: usize, j: usize) -> SymMat {
    SymMat::unit(n, i, j)
}

#[test]
fn rank_and_distance() {
    assert_eq!(linalg::rank(&Mat::identity(3)), 3);
    assert_eq!(linalg::rank(&Mat::from_i64(&[&[0, 1], &[1, 0]])), 2);
    assert_eq!(linalg::dist(&e(2, 0, 0), &e(2, 0, 0).scale(&int(2))).unwrap(), 1);
    assert_eq!(linalg::dist(&SymMat::identity(3), &SymMat::zeros(3)).unwrap(), 3);
    assert!(linalg::is_adjacent(&e(2, 0, 0), &SymMat::zeros(2)).unwrap());
    assert!(!linalg::is_adjacent(&e(2, 0, 0), &e(2, 1, 1)).unwrap());
}

#[test]
fn congruence_outer_and_images() {
    let r = Mat::from_i64(&[&[1, 1], &[0, 1]]);
    assert_eq!(linalg::congruence(&e(2, 0, 0), &r).unwrap(), e(2, 0, 0));
    let t = RankOneTerm::new(int(2), Vector::from_i64(&[1, 1])).unwrap();
    assert_eq!(linalg::sym_outer(&t, 2).unwrap(), sym(&[&[2, 2], &[2, 2]]));
    let t = RankOneTerm::new(int(-1), Vector::unit(3, 1)).unwrap();
    assert_eq!(linalg::sym_outer(&t, 3).unwrap(), e(3, 1, 1).scale(&int(-1)));
    assert_eq!(linalg::image_basis(&e(2, 0, 0)), vec![Vector::unit(2, 0)]);
    assert!(linalg::image_basis(&SymMat::zeros(2)).is_empty());
    let ones = linalg::image_basis(&sym(&[&[1, 1], &[1, 1]]));
    assert_eq!(ones.len(), 1);
    assert_eq!(ones[0][0], ones[0][1]);
}

#[test]
fn direct_sums_and_solving() {
    let x = SymMat::diag_i64(&[1, 1, 0]);
    assert!(linalg::direct_sum_check(&x, &e(3, 0, 0), &e(3, 1, 1)).unwrap());
    let e11 = e(2, 0, 0);
    assert!(!linalg::direct_sum_check(&e11, &e11.scale(&int(2)), &e11.scale(&int(-1))).unwrap());
    let v = Vector::from_i64(&[3, -1]);
    assert_eq!(linalg::solve(&SymMat::identity(2), &v).unwrap(), Some(v));
    assert_eq!(linalg::solve(&e11, &Vector::unit(2, 1)).unwrap(), None);
    let a = sym(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 10]]);
    let w0 = Vector::from_i64(&[1, -1, 2]);
    let rhs = a.as_mat().mul_vec(&w0);
    let w = linalg::solve(&a, &rhs).unwrap().unwrap();
    assert_eq!(a.as_mat().mul_vec(&w), rhs);
}

#[test]
fn padding_and_blocks() {
    assert_eq!(linalg::embed_h(&SymMat::identity(2), 3).unwrap(), SymMat::diag_i64(&[1, 1, 0]));
    assert_eq!(linalg::embed_h(&SymMat::zeros(2), 4).unwrap(), SymMat::zeros(4));
    assert_eq!(linalg::extract_block(&SymMat::diag_i64(&[1, 1, 0]), 2).unwrap(), SymMat::identity(2));
    assert!(matches!(linalg::extract_block(&e(3, 2, 2), 2), Err(Error::NotInBlockForm { .. })));
    let b = sym(&[&[1, -2], &[-2, 5]]);
    assert_eq!(quadform::compress_q(&linalg::embed_h(&b, 4).unwrap(), 2).unwrap(), b);
    assert_eq!(quadform::compress_q(&SymMat::diag_i64(&[1, 2, 0]), 2).unwrap(), SymMat::diag_i64(&[1, 2]));
}

#[test]
fn diagonalization_examples() {
    let cd = quadform::diagonalize(&SymMat::diag_i64(&[2, -3]));
    assert_eq!(cd.s, Mat::identity(2));
    assert_eq!(cd.d, vec![int(2), int(-3)]);
    let swap = sym(&[&[0, 1], &[1, 0]]);
    let cd = quadform::diagonalize(&swap);
    assert_eq!(cd.s, Mat::from_i64(&[&[1, 1], &[1, -1]]));
    assert_eq!(cd.d, vec![int(2), int(-2)]);
    assert_eq!(quadform::inertia(&SymMat::identity(3)), Inertia { pos: 3, neg: 0, zero: 0 });
    assert_eq!(quadform::inertia(&swap), Inertia { pos: 1, neg: 1, zero: 0 });
}

#[test]
fn decompositions_projections_signs() {
    let dec = quadform::rank_one_decompose(&e(2, 0, 0));
    assert_eq!(dec.terms, vec![RankOneTerm::new(int(1), Vector::unit(2, 0)).unwrap()]);
    let dec = quadform::rank_one_decompose(&SymMat::diag_i64(&[1, 1, 0]));
    let expected: Vec<_> =
        (0..2).map(|i| RankOneTerm::new(int(1), Vector::unit(3, i)).unwrap()).collect();
    assert_eq!(dec.terms, expected);
    assert!(quadform::is_projection(&e(2, 0, 0)));
    assert!(quadform::is_projection(&sym(&[&[1, 1], &[1, 1]]).scale(&frac(1, 2))));
    assert!(!quadform::is_projection(&e(2, 0, 0).scale(&int(2))));
    assert_eq!(quadform::sign_of_rank_one(&e(2, 0, 0)).unwrap(), 1);
    assert_eq!(quadform::sign_of_rank_one(&sym(&[&[1, 1], &[1, 1]]).scale(&int(-3))).unwrap(), -1);
}

#[test]
fn lines_and_profiles() {
    let l = geometry::line(&SymMat::zeros(2), &e(2, 0, 0)).unwrap();
    assert_eq!(l.direction(), &RankOneTerm::new(int(1), Vector::unit(2, 0)).unwrap());
    let a = sym(&[&[1, 0], &[0, 3]]);
    let u = Vector::from_i64(&[1, 2]);
    let l2 = geometry::line(&a, &(&a + &SymMat::outer(&int(2), &u))).unwrap();
    assert_eq!(l2.direction(), &RankOneTerm::new(int(2), u).unwrap());
    assert_eq!(geometry::line(&e(2, 0, 0), &e(2, 1, 1)).unwrap_err(), Error::NotAdjacent(2));
    assert_eq!(geometry::line_point(&l2, &int(0)), a);
    assert_eq!(geometry::on_line(&l, &e(2, 0, 0).scale(&int(5))).unwrap(), Some(int(5)));
    assert_eq!(geometry::on_line(&l, &e(2, 1, 1)).unwrap(), None);

    let through = geometry::line(&e(2, 0, 0), &e(2, 0, 0).scale(&int(2))).unwrap();
    assert_eq!(
        geometry::line_distance_profile(&SymMat::zeros(2), &through).unwrap(),
        LineProfile::Exceptional { lambda0: int(-1), point: SymMat::zeros(2), k_at_point: 0 }
    );
    assert_eq!(geometry::line_distance_profile(&e(2, 0, 1), &l).unwrap(), LineProfile::Constant { k: 2 });
    assert_eq!(
        geometry::line_distance_profile(&e(2, 1, 1), &l).unwrap(),
        LineProfile::Exceptional { lambda0: int(0), point: SymMat::zeros(2), k_at_point: 1 }
    );
}

#[test]
fn chain_examples() {
    let chain = geometry::adjacency_chain(&SymMat::zeros(3), &SymMat::identity(3)).unwrap();
    let expected = [SymMat::zeros(3), e(3, 0, 0), SymMat::diag_i64(&[1, 1, 0]), SymMat::identity(3)];
    assert_eq!(chain.points(), expected);
    assert_eq!(geometry::adjacency_chain(&e(2, 0, 0), &e(2, 0, 0)).unwrap().len(), 1);

    let (i2, two) = (SymMat::identity(2), SymMat::identity(2).scale(&int(2)));
    let ic = geometry::invertible_chain(&i2, &two, 0).unwrap();
    assert_eq!(ic.chain.points(), [i2.clone(), SymMat::diag_i64(&[2, 1]), two]);
    let crossings: Vec<_> = ic.crossings.iter().map(|c| c.point.clone()).collect();
    assert_eq!(crossings, [SymMat::diag_i64(&[0, 1]), SymMat::diag_i64(&[2, 0])]);
    let ic = geometry::invertible_chain(&i2, &i2.scale(&int(-1)), 0).unwrap();
    geometry::verify_invertible_chain(&ic).unwrap();
    assert!(matches!(geometry::invertible_chain(&i2, &i2, 0), Err(Error::Precondition(_))));
}

#[test]
fn minkowski_examples() {
    let v = |xs: &[i64]| Vector::from_i64(xs);
    assert_eq!(minkowski::q_form(&v(&[0, 0, 1]), 3).unwrap(), int(1));
    assert_eq!(minkowski::q_form(&v(&[1, 0, 0]), 3).unwrap(), int(-1));
    assert_eq!(minkowski::q_form(&v(&[3, 4, 5]), 3).unwrap(), int(0));
    assert_eq!(minkowski::t_map(&v(&[0, 0, 1])).unwrap(), SymMat::identity(2));
    assert_eq!(minkowski::t_map(&v(&[1, 0, 0])).unwrap(), SymMat::diag_i64(&[1, -1]));
    let t345 = minkowski::t_map(&v(&[3, 4, 5])).unwrap();
    assert_eq!(t345, sym(&[&[8, 4], &[4, 2]]));
    assert!(linalg::is_adjacent(&t345, &SymMat::zeros(2)).unwrap());
    assert_eq!(minkowski::t_inv(&SymMat::identity(2)).unwrap(), v(&[0, 0, 1]));
    assert_eq!(minkowski::t_inv(&e(2, 0, 0)).unwrap(), Vector::new(vec![frac(1, 2), int(0), frac(1, 2)]));
    let c = minkowski::null_separation_adjacency_check(&v(&[3, 4, 5]), &v(&[0, 0, 0])).unwrap();
    assert!(c.null_separated && c.adjacent && c.det_identity);
    let c = minkowski::null_separation_adjacency_check(&v(&[1, 2, 3]), &v(&[1, 2, 3])).unwrap();
    assert!(!c.null_separated && !c.adjacent && c.det_identity);
}

#[test]
fn lorentz_examples() {
    assert!(minkowski::is_lorentz(&Mat::identity(3)));
    assert!(minkowski::is_lorentz(LorentzMat::reflection().as_mat()));
    assert!(!minkowski::is_lorentz(&Mat::diagonal(&[int(2), int(1), int(1)])));
    assert!(minkowski::is_restricted_lorentz(&LorentzMat::identity()));
    assert!(!minkowski::is_restricted_lorentz(&LorentzMat::reflection()));
    let boost = Mat::from_rows(vec![
        vec![frac(5, 3), int(0), frac(4, 3)],
        vec![int(0), int(1), int(0)],
        vec![frac(4, 3), int(0), frac(5, 3)],
    ]);
    assert!(minkowski::is_restricted_lorentz(&LorentzMat::new(boost).unwrap()));

    let id = AffineCongruence::new(Sign::Plus, Mat::identity(2), SymMat::zeros(2)).unwrap();
    let w = minkowski::congruence_to_weyl(&id).unwrap();
    assert_eq!(w, WeylMap::identity());
    let swap = Mat::from_i64(&[&[0, 1], &[1, 0]]);
    let g = AffineCongruence::new(Sign::Plus, swap.clone(), SymMat::zeros(2)).unwrap();
    assert_eq!(minkowski::congruence_to_weyl(&g).unwrap().lorentz(), &LorentzMat::reflection());
    assert_eq!(minkowski::lorentz_to_congruence(&LorentzMat::identity()).unwrap(), (Sign::Plus, Mat::identity(2)));
    assert_eq!(minkowski::lorentz_to_congruence(&LorentzMat::reflection()).unwrap(), (Sign::Plus, swap));
    let x = Vector::new(vec![frac(1, 3), int(-2), int(7)]);
    assert_eq!(WeylMap::identity().apply(&x), x);
}

#[test]
fn irrational_lift_is_an_error() {
    let g = AffineCongruence::new(Sign::Plus, Mat::from_i64(&[&[2, 0], &[0, 1]]), SymMat::zeros(2)).unwrap();
    let l = minkowski::congruence_to_weyl(&g);
    // |det P| = 2, so the scaled linear part needs √2 in its lift.
    let w = l.unwrap();
    assert_eq!(w.alpha(), &int(2));
    assert!(matches!(minkowski::lorentz_to_congruence(w.lorentz()), Err(Error::NonRationalLift { .. })));
}

#[test]
fn map_application() {
    let id = StandardMapSpec::new(Sign::Plus, Mat::identity(2), None).unwrap();
    let a = sym(&[&[1, 2], &[2, -1]]);
    assert_eq!(id.apply(&a).unwrap(), a);
    let r = StandardMapSpec::new(Sign::Minus, Mat::from_i64(&[&[1, 0], &[1, 1]]), None).unwrap();
    assert_eq!(r.apply(&e(2, 0, 0)).unwrap(), sym(&[&[1, 1], &[1, 1]]).scale(&int(-1)));
    let d = DegenerateMapSpec::new(2, e(2, 0, 0), Functional::Trace).unwrap();
    assert_eq!(d.apply(&SymMat::diag_i64(&[2, 3])).unwrap(), e(2, 0, 0).scale(&int(5)));
}

#[test]
fn preservation_checks() {
    let mut rng = random::trial_rng(5, 0);
    let spec = MapSpec::Standard(maps::gen_random_standard(3, 4, 9).unwrap());
    let pairs = maps::random_adjacent_pairs(&mut rng, 3, 50);
    let report = maps::check_adjacency_preserving(&MapOracle::from_spec(spec), &pairs).unwrap();
    assert!(report.passed());
    assert_eq!(report.adjacent_pairs, 50);
    let trace = MapSpec::Degenerate(DegenerateMapSpec::new(3, e(2, 0, 0), Functional::Trace).unwrap());
    assert!(maps::check_adjacency_preserving(&MapOracle::from_spec(trace), &pairs).unwrap().passed());

    let probes = vec![e(2, 1, 1), SymMat::zeros(2)];
    let trunc = MapOracle::tabulate(2, 2, probes.clone(), controls::truncate).unwrap();
    let report = maps::check_adjacency_preserving(&trunc, &[(e(2, 1, 1), SymMat::zeros(2))]).unwrap();
    let w = report.violation.expect("truncation collapses E22 and 0");
    assert_eq!((w.image_a, w.image_b, w.image_distance), (SymMat::zeros(2), SymMat::zeros(2), 0));
}

#[test]
fn classification_examples() {
    let id = MapOracle::from_spec(MapSpec::Standard(
        StandardMapSpec::new(Sign::Plus, Mat::identity(2), None).unwrap(),
    ));
    assert_eq!(
        maps::classify(&id),
        ClassifyResult::Standard { c: Sign::Plus, r_block: Mat::identity(2), translation: SymMat::zeros(2) }
    );
    let trace = DegenerateMapSpec::new(3, e(2, 0, 0), Functional::Trace).unwrap();
    let ClassifyResult::Degenerate { b, .. } = maps::classify(&MapOracle::from_spec(MapSpec::Degenerate(trace)))
    else {
        panic!("trace·E11 should be degenerate");
    };
    assert_eq!(b, e(2, 0, 0));

    let probes = maps::canonical_probes(2, maps::PROBE_SEED);
    let square = MapOracle::tabulate(2, 2, probes, controls::square).unwrap();
    let ClassifyResult::NotAdjacencyPreserving { witness } = maps::classify(&square) else {
        panic!("A ↦ A² should be rejected");
    };
    assert!(linalg::is_adjacent(&witness.a, &witness.b).unwrap());
    assert_eq!(controls::square(&witness.a), witness.image_a);
    assert_eq!(controls::square(&witness.b), witness.image_b);
    assert!(!linalg::is_adjacent(&witness.image_a, &witness.image_b).unwrap());
}

#[test]
fn standard_recovery_examples() {
    let id = MapOracle::from_spec(MapSpec::Standard(
        StandardMapSpec::new(Sign::Plus, Mat::identity(2), None).unwrap(),
    ));
    assert_eq!(maps::recover_standard(&id).unwrap(), (Sign::Plus, Mat::identity(2)));
    let shear = Mat::from_i64(&[&[1, 1], &[0, 1]]);
    let neg = MapSpec::Standard(StandardMapSpec::new(Sign::Minus, shear.clone(), None).unwrap());
    let (c, r) = maps::recover_standard(&MapOracle::from_spec(neg)).unwrap();
    assert_eq!(c, Sign::Minus);
    assert!(r == shear || r == -&shear);

    let spec = MapSpec::Standard(maps::gen_random_standard(3, 5, 21).unwrap());
    let probes = maps::canonical_probes(3, maps::PROBE_SEED);
    let table = MapOracle::tabulate(3, 5, probes, |a| maps::apply(&spec, a).unwrap()).unwrap();
    let (c, r) = maps::recover_standard(&table).unwrap();
    let recovered = StandardMapSpec::new(c, r, None).unwrap();
    let mut rng = random::trial_rng(21, 1);
    for _ in 0..20 {
        let x = random::sym_any_rank(&mut rng, 3);
        assert_eq!(recovered.apply(&x).unwrap(), maps::apply(&spec, &x).unwrap());
    }
}

#[test]
fn s2_affine_recovery_examples() {
    let probes = maps::canonical_probes(2, maps::PROBE_SEED);
    let e11 = e(2, 0, 0);
    let shifted = MapOracle::tabulate(2, 2, probes.clone(), |a| a + &e11).unwrap();
    let g = maps::recover_s2_affine(&shifted).unwrap();
    assert_eq!((g.c, g.p(), &g.s), (Sign::Plus, &Mat::identity(2), &e11));

    let p = Mat::from_i64(&[&[1, 1], &[0, 1]]);
    let target = AffineCongruence::new(Sign::Minus, p.clone(), e(2, 1, 1)).unwrap();
    let tab = MapOracle::tabulate(2, 2, probes.clone(), |a| target.apply(a).unwrap()).unwrap();
    let g = maps::recover_s2_affine(&tab).unwrap();
    assert_eq!(g.c, Sign::Minus);
    assert_eq!(g.s, e(2, 1, 1));
    assert!(g.p() == &p || g.p() == &-&p);

    let trace = MapOracle::tabulate(2, 2, probes, |a| e11.scale(&a.trace())).unwrap();
    assert_eq!(maps::recover_s2_affine(&trace).unwrap_err(), Error::NoRank2Witness);
}
