mod common;

use common::{betti, q_fixture};
use diffcalc_core::derham::{de_rham, de_rham_comparison, de_rham_of, induced_on_cohomology, Flavor};
use diffcalc_core::fodc::FirstOrderCalculus;
use diffcalc_core::kahler::kahler_from_universal;
use diffcalc_core::prolong::{maximal_prolongation_from, universal_prolongation, unique_dg_morphism};
use diffcalc_core::{AlgMap, CochainComplex, Mat, PrimeField, Rationals};

#[test]
fn universal_cohomology_is_concentrated_in_degree_zero() {
    for name in ["qx2.json", "qz2.json", "qx3.json", "qz3.json"] {
        let a = q_fixture(name);
        let r = de_rham(&a, Flavor::Universal, 4).unwrap();
        let c = &r.complex;
        let oracle: Vec<usize> = (0..4).map(|n| betti(c.diffs(), c.dims(), n)).collect();
        assert_eq!(oracle, vec![1, 0, 0, 0], "{name}");
        assert_eq!(r.cohomology.dims(), oracle, "{name}");
        // the unit spans H⁰
        assert_eq!(r.cohomology.degrees[0].representatives.column(0), a.unit().to_vec());
    }
}

#[test]
fn rank_identity_at_every_degree() {
    let a = q_fixture("qx3.json");
    for flavor in [Flavor::Universal, Flavor::Kahler] {
        let r = de_rham(&a, flavor, 3).unwrap();
        let c = &r.complex;
        for d in &r.cohomology.degrees {
            let prev = if d.n == 0 { 0 } else { c.diffs()[d.n - 1].rank() };
            assert_eq!(d.dim_omega, c.diffs()[d.n].rank() + prev + d.dim_h);
            assert_eq!(d.boundary_rank, prev);
        }
    }
}

#[test]
fn kahler_cohomology_of_dual_numbers() {
    let a = q_fixture("qx2.json");
    let r = de_rham(&a, Flavor::Kahler, 3).unwrap();
    assert_eq!(r.complex.dims(), &[2, 1, 0, 0]);
    // d_K(x) = dx ≠ 0 and Ω²_K = 0
    assert_eq!(r.cohomology.dims(), vec![1, 0, 0]);
}

#[test]
fn ground_field_is_trivial_in_both_flavors() {
    let a = q_fixture("q.json");
    for flavor in [Flavor::Universal, Flavor::Kahler] {
        assert_eq!(de_rham(&a, flavor, 3).unwrap().cohomology.dims(), vec![1, 0, 0]);
    }
    let c = de_rham_comparison(&a, 2).unwrap();
    assert_eq!(c.maps[0], Mat::identity(&Rationals, 1));
}

#[test]
fn comparison_in_characteristic_two() {
    let f = PrimeField::new(2).unwrap();
    let a = common::fixture("gf2x2.json").algebra(&f).unwrap();
    let c = de_rham_comparison(&a, 2).unwrap();
    assert!(c.chain_map[0].is_identity());
    assert!(c.chain_map[1].is_identity());
    for (m, (hu, hk)) in c.maps.iter().zip(c.universal.cohomology.dims().iter().zip(c.kahler.cohomology.dims())) {
        assert_eq!(m.shape(), (hk, *hu));
    }
}

#[test]
fn cohomology_is_functorial() {
    let a = q_fixture("qx3.json");
    let up = universal_prolongation(&a, 3).unwrap();
    let id = AlgMap::identity(&a);
    let k = kahler_from_universal(&up.universal).unwrap();
    let mk = maximal_prolongation_from(&up, &k.calc).unwrap().calc;
    let zero = maximal_prolongation_from(&up, &FirstOrderCalculus::zero(&a)).unwrap().calc;
    let f = unique_dg_morphism(&up.calc, &mk, &id).unwrap().unwrap();
    let g = unique_dg_morphism(&mk, &zero, &id).unwrap().unwrap();
    let gf: Vec<Mat<Rationals>> = g.iter().zip(&f).map(|(g, f)| g.mul(f)).collect();
    let (ru, rk, rz) = (de_rham_of(up.calc.clone()), de_rham_of(mk), de_rham_of(zero));
    let hf = induced_on_cohomology(&ru, &rk, &f).unwrap();
    let hg = induced_on_cohomology(&rk, &rz, &g).unwrap();
    let hgf = induced_on_cohomology(&ru, &rz, &gf).unwrap();
    for n in 0..hgf.len() {
        assert_eq!(hg[n].mul(&hf[n]), hgf[n], "degree {n}");
    }
}

#[test]
fn complexes_with_nonzero_square_are_rejected() {
    let d = Mat::from_i64(&Rationals, 1, 1, &[1]);
    let err = CochainComplex::new(vec![1, 1, 1], vec![d.clone(), d]).unwrap_err();
    assert!(err.to_string().contains("degree 0"));
}
