use std::f64::consts::PI;

use proptest::prelude::*;
use regge_core::leibon::{octahedron_angles, solve_holonomy, volume, volume_routes, Octahedron};
use regge_core::scissors::{decompose, halve, permute_for_regge_b, regge, verify_scissors, ReggeTransform};
use regge_core::special::{lobachevsky, lobachevsky_quadrature};
use regge_core::tetra::{classify, relabel, Relabeling, TetAngles};
use regge_core::sample::{Sampler, SampleBox};

fn finite_tet(seed: u64) -> TetAngles {
    Sampler::new(seed, SampleBox::default()).unwrap().next_finite().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lobachevsky_symmetries(theta in -10.0f64..10.0) {
        let l = lobachevsky(theta).unwrap();
        prop_assert!((l + lobachevsky(-theta).unwrap()).abs() < 1e-14);
        prop_assert!((l - lobachevsky(theta + PI).unwrap()).abs() < 1e-12);
        let dup = 2.0 * (lobachevsky(theta).unwrap() + lobachevsky(theta + PI / 2.0).unwrap());
        prop_assert!((lobachevsky(2.0 * theta).unwrap() - dup).abs() < 1e-12);
    }

    #[test]
    fn series_matches_quadrature(theta in -7.0f64..7.0) {
        let q = lobachevsky_quadrature(theta, 1e-13).unwrap();
        prop_assert!((lobachevsky(theta).unwrap() - q).abs() < 1e-11);
    }

    #[test]
    fn volume_routes_agree(seed in any::<u64>()) {
        let t = finite_tet(seed);
        let r = volume_routes(&t).unwrap();
        prop_assert!(r.max_disagreement() < 1e-10, "{:?}", r);
        prop_assert!((r.greg_plus + r.greg_minus).abs() < 1e-10);
        prop_assert!(r.greg_minus > 0.0);
    }

    #[test]
    fn volume_is_relabeling_invariant(seed in any::<u64>()) {
        let t = finite_tet(seed);
        let v = volume(&t).unwrap();
        for r in Relabeling::all() {
            prop_assert!((volume(&relabel(&t, &r)).unwrap() - v).abs() < 1e-10);
        }
    }

    #[test]
    fn regge_preserves_class_and_volume(seed in any::<u64>()) {
        let t = finite_tet(seed);
        let v = volume(&t).unwrap();
        for which in ReggeTransform::ALL {
            let image = regge(&t, which);
            prop_assert_eq!(classify(&image).kind, classify(&t).kind);
            prop_assert!((volume(&image).unwrap() - v).abs() < 1e-10);
        }
    }

    #[test]
    fn holonomy_roots_on_unit_circle(seed in any::<u64>()) {
        let t = finite_tet(seed);
        let r = solve_holonomy(&t).unwrap();
        prop_assert!(r.projection_distance < 1e-9);
        prop_assert!(r.residual(r.z_minus) < 1e-10 && r.residual(r.z_plus) < 1e-10);
        for which in [Octahedron::O, Octahedron::Dual] {
            let o = octahedron_angles(&t, which).unwrap();
            prop_assert!((o.holonomy_product() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn scissors_certificate(seed in any::<u64>()) {
        let t = finite_tet(seed);
        let d = decompose(&t).unwrap();
        let v = volume(&t).unwrap();
        prop_assert!((d.total_volume() - 2.0 * v).abs() < 1e-10);
        let h = halve(&permute_for_regge_b(&d).unwrap());
        prop_assert!((h.copy_volume(0) - v).abs() < 1e-10);
        for which in ReggeTransform::ALL {
            let report = verify_scissors(&t, which).unwrap();
            prop_assert!(report.pass, "{:?}", report);
        }
    }
}
