use diffcalc_core::derham::cohomology;
use diffcalc_core::fodc::{induced_map, Classification};
use diffcalc_core::hopf::{check_hopf_module, universal_coactions};
use diffcalc_core::prolong::universal_prolongation;
use diffcalc_core::{Algebra, Bimonoid, CochainComplex, Field, Mat, PrimeField, Rationals, UniversalCalculus};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn universal_calculus_over_truncated_polynomials(n in 1usize..5, p in small_prime()) {
        let f = PrimeField::new(p).unwrap();
        let a = Algebra::truncated_poly(&f, n).unwrap();
        let u = UniversalCalculus::new(&a).unwrap();
        prop_assert_eq!(u.dim(), n * n - n);
        prop_assert_eq!(u.split_identity(), Mat::identity(&f, u.dim()).neg());
        prop_assert_eq!(u.calc.check().classification, Classification::Fodc);
    }

    #[test]
    fn quotients_by_generated_relations_are_calculi(
        n in 2usize..4,
        coords in prop::collection::vec(-2i64..=2, 6),
    ) {
        let a = Algebra::truncated_poly(&Rationals, n).unwrap();
        let u = UniversalCalculus::new(&a).unwrap();
        let v: Vec<_> = coords.iter().take(u.dim()).map(|&c| Rationals.from_i64(c)).collect();
        let g = u.calc.omega().generated(&Mat::column_vector(&Rationals, v)).unwrap();
        let q = u.calc.quotient(&g.inclusion).unwrap();
        prop_assert_eq!(q.calc.check().classification, Classification::Fodc);
        let f = induced_map(&u, &q.calc).unwrap();
        prop_assert_eq!(f.map.matrix().kernel_basis(), g.inclusion);
    }

    #[test]
    fn universal_prolongation_dims(n0 in 1usize..4, top in 1usize..4, p in small_prime()) {
        let f = PrimeField::new(p).unwrap();
        let a = Algebra::truncated_poly(&f, n0).unwrap();
        let up = universal_prolongation(&a, top).unwrap();
        for k in 0..=top {
            prop_assert_eq!(up.calc.dim(k), n0 * (n0 - 1).pow(k as u32));
        }
        prop_assert!(up.calc.check().is_ok());
        prop_assert!(up.retraction_violations().is_empty());
    }

    #[test]
    fn cyclic_group_algebras_carry_hopf_modules(n in 1usize..5, p in small_prime()) {
        let f = PrimeField::new(p).unwrap();
        let h = Bimonoid::group_like(&Algebra::cyclic_group(&f, n).unwrap()).unwrap();
        let uc = universal_coactions(&h).unwrap();
        prop_assert!(check_hopf_module(&h, &uc.module).unwrap().is_ok());
        prop_assert_eq!(uc.d_is_comodule_map(), (true, true));
    }

    #[test]
    fn cohomology_rank_identity(
        d0 in prop::collection::vec(-3i64..=3, 12),
        y in prop::collection::vec(-3i64..=3, 16),
    ) {
        // C⁰ = ℚ³ → C¹ = ℚ⁴ → C² = ℚ⁴ with d¹ killing the image of d⁰
        let d0 = Mat::from_i64(&Rationals, 4, 3, &d0);
        let coker = d0.cokernel();
        let y = Mat::from_i64(&Rationals, 4, 4, &y).select_cols(&(0..coker.dim()).collect::<Vec<_>>());
        let d1 = y.mul(&coker.projection);
        let c = CochainComplex::new(vec![3, 4, 4], vec![d0.clone(), d1.clone()]).unwrap();
        let h = cohomology(&c, &Rationals);
        prop_assert_eq!(h.degrees[0].dim_h, 3 - d0.rank());
        prop_assert_eq!(h.degrees[1].dim_h + d1.rank() + d0.rank(), 4);
        for d in &h.degrees {
            prop_assert!(c.diffs()[d.n].mul(&d.representatives).is_zero());
        }
    }
}
