use anqg::deform::*;
use anqg::linalg::{solve_rational, RationalSolve};
use anqg::scalar::rat;
use std::collections::BTreeMap;

fn sl2(d: usize) -> TruncatedUg {
    TruncatedUg::new(LieAlgebra::sl2(), d)
}

fn planted_target(ug: &TruncatedUg, n: usize) -> (SeriesMap, SeriesMap) {
    let d = SeriesMap::inclusion(ug, n);
    let mut f = vec![ug.one(), ug.generator(2)];
    f.resize(n + 1, UgElement::zero());
    let dp = conjugate_series(ug, &SeriesElement { coeffs: f }, &d, n).unwrap();
    (d, dp)
}

#[test]
fn planted_conjugation_is_recovered() {
    let ug = sl2(6);
    let (d, dp) = planted_target(&ug, 4);
    let res = rigidity_conjugator(&ug, &d, &dp, 4, 3).unwrap();
    assert_eq!(conjugation_residual_order(&ug, &res.conjugator, &d, &dp, 4).unwrap(), None);
    assert_eq!(res.conjugator.coeffs[0], ug.one());
    // the planted 1 + E h is found in one step
    assert_eq!(res.steps[0].u, ug.generator(2));
    assert!(res.steps[1..].iter().all(|s| s.u.is_zero()));
}

#[test]
fn conjugator_orders_are_stable() {
    let ug = sl2(7);
    let (d3, dp3) = planted_target(&ug, 3);
    let (d4, dp4) = planted_target(&ug, 4);
    let a = rigidity_conjugator(&ug, &d3, &dp3, 3, 3).unwrap();
    let b = rigidity_conjugator(&ug, &d4, &dp4, 4, 3).unwrap();
    assert_eq!(a.conjugator.coeffs[..], b.conjugator.coeffs[..4]);
}

#[test]
fn trivial_inputs_give_trivial_outputs() {
    let ug = sl2(4);
    let d = SeriesMap::inclusion(&ug, 2);
    let res = rigidity_conjugator(&ug, &d, &d, 2, 2).unwrap();
    assert_eq!(res.conjugator.coeffs, vec![ug.one(), UgElement::zero(), UgElement::zero()]);
    let ug = sl2(3);
    let mu = vec![standard_multiplication(&ug).unwrap()];
    let mut mu1 = mu[0].clone();
    mu1.values_mut().for_each(|v| *v = UgElement::zero());
    let res = mult_trivialize(&ug, &[mu[0].clone(), mu1], 1).unwrap();
    assert!(res.gauge.coeffs[1].is_zero());
    assert_eq!(res.gauge.coeffs[0], LinearMap::identity(&ug.monomials_up_to(3)));
}

#[test]
fn rigidity_rejects_different_classical_limits() {
    let ug = sl2(4);
    let d = SeriesMap::inclusion(&ug, 1);
    let mut dp = d.clone();
    let key = ug.gen_mono(1);
    dp.coeffs[0].cols.insert(key, ug.generator(1).scale(&rat(2)));
    assert_eq!(rigidity_conjugator(&ug, &d, &dp, 1, 2), Err(DeformError::NotEqualModH));
}

#[test]
fn rigidity_reports_non_cocycle_order() {
    let ug = sl2(4);
    let d = SeriesMap::inclusion(&ug, 2);
    let mut dp = d.clone();
    // h·1 added to E only: not a derivation of the bracket
    dp.coeffs[1].cols.insert(ug.gen_mono(2), ug.one());
    assert_eq!(
        rigidity_conjugator(&ug, &d, &dp, 2, 2),
        Err(DeformError::ObstructedAtOrder { order: 1, reason: Obstruction::NotCocycle })
    );
}

#[test]
fn coboundary_of_inner_derivation() {
    let ug = sl2(4);
    let d0: Vec<UgElement> = (0..3).map(|i| ug.generator(i)).collect();
    let e = ug.generator(2);
    let f: Vec<UgElement> = d0.iter().map(|x| ug.commutator(x, &e).unwrap()).collect();
    let u = coboundary_solve(&ug, &d0, &f, 2).unwrap();
    for (x, fx) in d0.iter().zip(&f) {
        assert_eq!(&ug.commutator(x, &u).unwrap(), fx);
    }
    assert_eq!(u.degree(), 1);
}

#[test]
fn coboundary_solver_rejects_non_cocycle() {
    let ug = sl2(4);
    let d0: Vec<UgElement> = (0..3).map(|i| ug.generator(i)).collect();
    let f = vec![UgElement::zero(), UgElement::zero(), ug.one()];
    assert_eq!(coboundary_solve(&ug, &d0, &f, 2), Err(DeformError::NotCocycle));
}

#[test]
fn differential_squares_to_zero() {
    let ug = sl2(5);
    let d0: Vec<UgElement> = (0..3).map(|i| ug.generator(i)).collect();
    let u = ug.mul(&ug.generator(0), &ug.generator(2)).unwrap().add(&ug.generator(1));
    let mut c0 = Cochain::zero(0);
    c0.values.insert(vec![], u.clone());
    let c1 = cochain_differential(&ug, &d0, &c0).unwrap();
    for i in 0..3 {
        assert_eq!(c1.value(&[i]), ug.commutator(&d0[i], &u).unwrap());
    }
    let c2 = cochain_differential(&ug, &d0, &c1).unwrap();
    assert!(c2.values.is_empty());
    // a generic 1-cochain
    let mut g = Cochain::zero(1);
    g.values.insert(vec![0], ug.generator(2));
    g.values.insert(vec![1], ug.mul(&ug.generator(1), &ug.generator(1)).unwrap());
    let dg = cochain_differential(&ug, &d0, &g).unwrap();
    let ddg = cochain_differential(&ug, &d0, &dg).unwrap();
    assert!(ddg.values.is_empty());
    assert!(matches!(cochain_differential(&ug, &d0, &Cochain::zero(3)), Err(DeformError::CochainDegree(3))));
}

#[test]
fn antisymmetry_is_checked() {
    let ug = sl2(3);
    let mut vals = BTreeMap::new();
    vals.insert(vec![0, 1], ug.generator(2));
    vals.insert(vec![1, 0], ug.generator(2));
    assert!(matches!(Cochain::from_ordered(2, 3, &vals), Err(DeformError::NotAntisymmetric(_))));
    vals.insert(vec![1, 0], ug.generator(2).scale(&rat(-1)));
    assert!(Cochain::from_ordered(2, 3, &vals).is_ok());
}

fn planted_gauge(ug: &TruncatedUg) -> Vec<LinearMap> {
    let monos = ug.monomials_up_to(ug.max_degree());
    let mut beta = LinearMap { cols: monos.iter().map(|m| (m.clone(), UgElement::zero())).collect() };
    beta.cols.insert(ug.gen_mono(0), ug.generator(1));
    beta.cols.insert(ug.gen_mono(1), ug.generator(2).add(&ug.one()));
    vec![LinearMap::identity(&monos), beta]
}

#[test]
fn planted_multiplication_is_trivialized() {
    let ug = sl2(3);
    let mu = transported_multiplication(&ug, &planted_gauge(&ug), 1).unwrap();
    assert!(mu[1].values().any(|v| !v.is_zero()));
    let res = mult_trivialize(&ug, &mu, 1).unwrap();
    assert_eq!(trivialization_residual_order(&ug, &mu, &res.gauge.coeffs, 1).unwrap(), None);
    assert_eq!(res.steps.len(), 1);
}

#[test]
fn obstructed_multiplication_errors_at_order_one() {
    let ug = sl2(3);
    let std_mu = standard_multiplication(&ug).unwrap();
    let f = find_obstructed_perturbation(&ug).unwrap().expect("an obstructed perturbation exists");
    let (rows, rhs, n) = coboundary_system(&ug, &f).unwrap();
    assert_eq!(solve_rational(&rows, &rhs, n), RationalSolve::Inconsistent);
    let err = mult_trivialize(&ug, &[std_mu, f], 1).unwrap_err();
    assert!(matches!(err, DeformError::ObstructedAtOrder { order: 1, .. }), "{err:?}");
}

#[test]
fn sl3_window_products() {
    let a2 = anqg::cartan::load_preset("A2").unwrap();
    let ug = TruncatedUg::new(LieAlgebra::from_datum(&a2).unwrap(), 3);
    let lie = ug.lie();
    let e1 = ug.generator(lie.index_of("E1").unwrap());
    let e2 = ug.generator(lie.index_of("E2").unwrap());
    let e12 = ug.generator(lie.index_of("E12").unwrap());
    assert_eq!(ug.commutator(&e1, &e2).unwrap(), e12);
    assert_eq!(ug.monomials_up_to(2).len(), 45);
    assert!(LieAlgebra::from_datum(&anqg::cartan::load_preset("B2").unwrap()).is_err());
}
