mod common;

use common::{fixture_path, q_fixture};
use diffcalc_core::fodc::{enumerate_sub_bimodules, FirstOrderCalculus};
use diffcalc_core::io::MorphismFile;
use diffcalc_core::kahler::kahler_from_universal;
use diffcalc_core::scalars::{calc1_category_adjoints_check, calc_pullback, calc_pushforward, verify_poset_adjunction};
use diffcalc_core::{AlgMap, Mat, Rationals, UniversalCalculus};

fn y_to_x2() -> AlgMap<Rationals> {
    MorphismFile::load(&fixture_path("y_to_x2.json")).unwrap().map(&Rationals).unwrap()
}

fn source_family() -> Vec<FirstOrderCalculus<Rationals>> {
    let u = UniversalCalculus::new(&q_fixture("qx2.json")).unwrap();
    enumerate_sub_bimodules(u.calc.omega(), 2)
        .unwrap()
        .iter()
        .map(|n| u.calc.quotient(n).unwrap().calc)
        .collect()
}

fn target_family() -> Vec<FirstOrderCalculus<Rationals>> {
    let b = q_fixture("qx4.json");
    let u = UniversalCalculus::new(&b).unwrap();
    let k = kahler_from_universal(&u).unwrap().calc;
    let f = y_to_x2();
    let mut family = vec![u.calc.clone(), k, FirstOrderCalculus::zero(&b)];
    for c in source_family() {
        family.push(calc_pushforward(&f, &c).unwrap().calc);
    }
    // quotient by the sub-bimodule generated by d(x)·x − x·d(x)
    let e1 = Mat::unit_vector(&Rationals, 4, 1);
    let dx = u.calc.d().mul(&e1);
    let g = u.calc.omega().act_right_on(&dx).mul(&Mat::identity(&Rationals, 1).kron(&e1))
        .sub(&u.calc.omega().act_left_on(&dx).mul(&e1.kron(&Mat::identity(&Rationals, 1))));
    let n = u.calc.omega().generated(&g).unwrap().inclusion;
    family.push(u.calc.quotient(&n).unwrap().calc);
    family
}

#[test]
fn fixture_map_is_y_to_x_squared() {
    let f = y_to_x2();
    assert!(f.check().is_ok());
    assert_eq!(f.matrix(), &Mat::from_i64(&Rationals, 4, 2, &[1, 0, 0, 0, 0, 1, 0, 0]));
}

#[test]
fn pushforward_and_pullback_are_adjoint_on_the_fixture() {
    let r = verify_poset_adjunction(&y_to_x2(), &source_family(), &target_family()).unwrap();
    assert!(!r.pairs.is_empty());
    assert!(r.agrees(), "{:?}", r.mismatches());
}

#[test]
fn transported_calculi_are_calculi() {
    let f = y_to_x2();
    for c in source_family() {
        let t = calc_pushforward(&f, &c).unwrap();
        assert_eq!(t.calc.alg(), f.target());
    }
    for t in target_family() {
        let p = calc_pullback(&f, &t).unwrap();
        assert_eq!(p.calc.alg(), f.source());
    }
}

#[test]
fn endpoints_within_one_algebra_families() {
    let a = q_fixture("qx2.json");
    assert!(calc1_category_adjoints_check(&a, &source_family()).unwrap().is_ok());
    let b = q_fixture("qx4.json");
    assert!(calc1_category_adjoints_check(&b, &target_family()).unwrap().is_ok());
    let id = AlgMap::identity(&a);
    let r = verify_poset_adjunction(&id, &source_family(), &source_family()).unwrap();
    assert!(r.agrees());
}
