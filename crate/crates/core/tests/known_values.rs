use std::f64::consts::PI;

use regge_core::leibon::volume;
use regge_core::oracle::{klein_vertices, volume_numeric};
use regge_core::scissors::{regge, verify_scissors, ReggeTransform};
use regge_core::special::lobachevsky;
use regge_core::tetra::{ideal_volume, prism_pieces, prism_volume, three_quarter_volume, IdealTetAngles, TetAngles};
use regge_core::Error;

#[test]
fn lobachevsky_values() {
    assert!((lobachevsky(PI / 6.0).unwrap() - 0.507_470_803_204_826_8).abs() < 1e-15);
    assert!((lobachevsky(PI / 4.0).unwrap() - 0.457_982_797_088_609_5).abs() < 1e-15);
    assert_eq!(lobachevsky(0.0).unwrap(), 0.0);
    assert!(lobachevsky(PI / 2.0).unwrap().abs() < 1e-15);
}

#[test]
fn ideal_volumes() {
    let regular = ideal_volume(IdealTetAngles::new(PI / 3.0, PI / 3.0, PI / 3.0)).unwrap();
    assert!((regular - 1.014_941_606_409_653_6).abs() < 1e-12);
    let catalan = ideal_volume(IdealTetAngles::new(PI / 2.0, PI / 4.0, PI / 4.0)).unwrap();
    assert!((catalan - 0.915_965_594_177_219).abs() < 1e-12);
    assert!(matches!(
        ideal_volume(IdealTetAngles::new(1.0, 1.0, 1.0)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn prism_equals_three_ideal_tetrahedra() {
    for (a, b, c) in [(0.7, 0.9, 1.1), (0.3, 0.4, 0.5), (1.5, 0.2, 0.9)] {
        let pieces = prism_pieces(a, b, c);
        for p in &pieces {
            assert!(p.angle_sum_defect().abs() < 1e-15);
        }
        let sum: f64 = pieces.iter().map(|p| ideal_volume(*p).unwrap()).sum();
        assert!((prism_volume(a, b, c).unwrap() - sum).abs() < 1e-12);
        assert!(three_quarter_volume(a, b, c).is_err());
    }
}

#[test]
fn regular_finite_volume_agrees_with_klein_quadrature() {
    let t = TetAngles::equiangular(1.2);
    let formula = volume(&t).unwrap();
    let numeric = volume_numeric(&klein_vertices(&t).unwrap(), 1e-8).unwrap().value;
    assert!((formula - numeric).abs() < 1e-7);
}

#[test]
fn regge_fixed_point() {
    let t = TetAngles::new(1.0, 1.2, 1.2, 0.9, 1.2, 1.2);
    assert_eq!(regge(&t, ReggeTransform::A), t);
    let r = verify_scissors(&t, ReggeTransform::A).unwrap();
    assert!(r.pass && r.volume_gap == 0.0);
}

#[test]
fn hyperideal_volume_rejected() {
    assert!(volume(&TetAngles::equiangular(1.0)).is_err());
}
