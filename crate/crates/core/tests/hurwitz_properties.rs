use proptest::prelude::*;
use quadalg::hurwitz::*;
use std::f64::consts::PI;

fn point() -> impl Strategy<Value = Point8> {
    prop::array::uniform8(-2.0..2.0f64).prop_map(|u| Point8 { u })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn euler_identity(p in point()) {
        prop_assert!(euler_identity_residual(&p, X0Convention::Adopted) < 1e-12);
    }

    #[test]
    fn bilinear_block_is_norm_multiplicative(p in point()) {
        prop_assert!(bilinear_norm_residual(&p) < 1e-12);
    }

    #[test]
    fn image_is_quadratic(p in point(), t in -3.0..3.0f64) {
        let q = Point8 { u: p.u.map(|v| t * v) };
        let (a, b) = (hurwitz_image(&p, X0Convention::Adopted).x, hurwitz_image(&q, X0Convention::Adopted).x);
        for i in 0..5 {
            prop_assert!((b[i] - t * t * a[i]).abs() <= 1e-12 * (1.0 + b[i].abs()));
        }
    }

    #[test]
    fn angles_in_range(p in point()) {
        if let Ok(f) = hurwitz_forward(&p) {
            let a = f.angles;
            prop_assert!((0.0..2.0 * PI).contains(&a.alpha));
            prop_assert!((0.0..=PI).contains(&a.beta));
            prop_assert!((0.0..4.0 * PI).contains(&a.gamma));
        }
    }

    #[test]
    fn parameter_map_is_an_involution(e in 0.1..10.0f64, w in 0.1..5.0f64, l1 in 0.0..3.0f64, l2 in 0.0..3.0f64) {
        let osc = DualParams::Oscillator(OscillatorSide { energy: e, omega: w, lambda1: l1, lambda2: l2 });
        let back = map_parameters(map_parameters(osc).unwrap()).unwrap();
        match back {
            DualParams::Oscillator(o) => {
                prop_assert!((o.energy - e).abs() < 1e-12 * e);
                prop_assert!((o.omega - w).abs() < 1e-12 * w);
                prop_assert!((o.lambda1 - l1).abs() < 1e-12 && (o.lambda2 - l2).abs() < 1e-12);
            }
            _ => prop_assert!(false, "direction flipped twice"),
        }
    }
}

#[test]
fn sample_statistics() {
    let s = quadalg::report::EulerSample::draw(1000, 1);
    assert!(s.max_adopted < 1e-12);
    assert!(s.max_bilinear < 1e-12);
    assert_eq!(s.angle_violations, 0);
    // the sign pattern as written is off by a quadratic form; it is far from zero on most points
    assert!(s.median_literal > 1e-3);
}
