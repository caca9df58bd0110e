mod common;

use common::q_fixture;
use diffcalc_core::fodc::kernel_counit_comparison;
use diffcalc_core::{Bimodule, Mat, Rationals, UniversalCalculus};

#[test]
fn kernel_of_action_is_omega_tensor_module() {
    let a = q_fixture("qx2.json");
    let u = UniversalCalculus::new(&a).unwrap();
    let modules = vec![
        Bimodule::left_module(&a, 2, a.mult().clone()).unwrap(),
        // x acts by zero
        Bimodule::left_module(&a, 1, Mat::from_i64(&Rationals, 1, 2, &[1, 0])).unwrap(),
        // A ⊕ k
        Bimodule::left_module(
            &a,
            3,
            Mat::from_i64(
                &Rationals,
                3,
                6,
                &[1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0],
            ),
        )
        .unwrap(),
    ];
    for m in modules {
        let k = kernel_counit_comparison(&u, &m).unwrap();
        // μ is onto, so ker μ has dimension (n − 1)·dim M
        let oracle = a.dim() * m.dim() - m.left().rank();
        assert_eq!(k.kernel.cols(), oracle);
        assert_eq!(k.comparison.shape(), (oracle, oracle));
        assert!(k.is_isomorphism());
    }
}
