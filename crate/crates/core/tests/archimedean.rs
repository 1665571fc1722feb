use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use satake::archimedean::{
    c_of_pi, infinity_type_holomorphic, ln_gamma, spec_infinity, spec_root_number,
    stirling_ratio_check, thickened_conductor,
};
use satake::forms::FormBank;
use satake::local_factors::Normalization;
use satake::series::parse::build_spec;

#[test]
fn closed_form_matches_gamma_product() {
    for t in [0.0, 0.5, 1.0, 5.0, 9.5337] {
        let v = c_of_pi(t).unwrap();
        let closed = 1.0 / ((2.0 * PI * t).cosh() * (PI * t).cosh().powi(2));
        assert_eq!(v, closed);
    }
    assert_eq!(c_of_pi(0.0).unwrap(), 1.0);
}

#[test]
fn stirling_ratio_decreases() {
    let a = stirling_ratio_check(100.0);
    let b = stirling_ratio_check(1000.0);
    assert!(a < 0.02, "{a}");
    assert!(b < a, "{b} vs {a}");
}

#[test]
fn gamma_reference_values() {
    assert!((ln_gamma(Complex64::new(0.5, 0.0)).exp().re - PI.sqrt()).abs() < 1e-14);
    assert!((ln_gamma(Complex64::new(5.0, 0.0)).exp().re - 24.0).abs() < 1e-12);
    // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
    let t = 3.0;
    let v = 2.0 * ln_gamma(Complex64::new(0.5, t)).re;
    assert!((v - (PI / (PI * t).cosh()).ln()).abs() < 1e-12);
}

#[test]
fn spec_gamma_data() {
    let bank = FormBank::new();
    let spec = |s: &str| build_spec(s, &bank, 20, Normalization::Unitary).unwrap();
    let d = spec_infinity(&spec("delta")).unwrap();
    assert_eq!(d, infinity_type_holomorphic(12).unwrap());
    assert_eq!(thickened_conductor(1, &d), 14.0);
    assert_eq!(spec_infinity(&spec("sym2(delta)")).unwrap().degree(), 3);
    assert_eq!(spec_infinity(&spec("sym2(delta)xsym2(delta)")).unwrap().degree(), 9);
    assert_eq!(spec_root_number(&spec("delta")), Some(1.0));
    assert_eq!(spec_root_number(&spec("f18")), Some(-1.0));
    assert_eq!(spec_root_number(&spec("zeta*chi(-3)")), Some(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reflection_formula(x in 0.05f64..0.95, y in -5.0f64..5.0) {
        let z = Complex64::new(x, y);
        let lhs = ln_gamma(z) + ln_gamma(Complex64::new(1.0, 0.0) - z);
        let rhs = (Complex64::new(PI, 0.0) / (z * PI).sin()).ln();
        prop_assert!((lhs.exp() - rhs.exp()).norm() <= 1e-10 * rhs.exp().norm());
    }

    #[test]
    fn recurrence(x in 0.1f64..20.0, y in -30.0f64..30.0) {
        let z = Complex64::new(x, y);
        let d = ln_gamma(z + 1.0) - ln_gamma(z) - z.ln();
        prop_assert!(d.re.abs() < 1e-11);
        prop_assert!((d.im - (d.im / (2.0 * PI)).round() * 2.0 * PI).abs() < 1e-9);
    }
}
