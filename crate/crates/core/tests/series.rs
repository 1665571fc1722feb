use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use satake::forms::FormBank;
use satake::local_factors::Normalization;
use satake::series::identity::{lookup, run_identity_named, Expectation, Status, REGISTRY};
use satake::series::parse::{build_spec, parse_spec};
use satake::series::{expand_coeffs, log_deriv_coeffs, positivity_report, ArithMode, DirichletCoeffs};
use satake::Error;

const PI_PI: &str = "(1+sym2(delta)+sym4(delta))x(1+sym2(delta)+sym4(delta))";

fn coeffs(src: &str, x: usize, norm: Normalization, mode: ArithMode) -> DirichletCoeffs {
    let bank = FormBank::new();
    let spec = build_spec(src, &bank, x as u64, norm).unwrap();
    expand_coeffs(&spec, x, mode).unwrap()
}

#[test]
fn registry_outcomes_follow_expectations() {
    let bank = FormBank::new();
    for info in REGISTRY.iter() {
        let r = run_identity_named(info.tag, &bank, "delta", "f16", 40).unwrap();
        let expect = lookup(info.tag).unwrap().expectation;
        assert_eq!(r.all_match(), expect == Expectation::Match, "{}", r.to_text());
        assert!(!r.is_failure());
    }
}

#[test]
fn printed_typos_fail_at_the_first_prime() {
    let bank = FormBank::new();
    for tag in ["5.16", "4.19", "7.2"] {
        let r = run_identity_named(tag, &bank, "delta", "f16", 20).unwrap();
        assert_eq!(r.row("p=2").unwrap().status, Status::Mismatch, "{tag}");
    }
}

#[test]
fn bookkeeping_for_the_pair_identity() {
    let r = run_identity_named("4.15", &FormBank::new(), "delta", "f16", 20).unwrap();
    assert_eq!(r.bookkeeping(), "64 vs 64 = 1+4+4+3+3+16+9+12+12");
    assert!(r.all_match());
}

#[test]
fn parse_errors_carry_positions() {
    for bad in ["", "zeta*", "sym2(delta", "chi(-3", "zeta^x", "sym(delta)"] {
        match parse_spec(bad) {
            Err(Error::Parse { .. }) => {}
            other => panic!("{bad:?}: {other:?}"),
        }
    }
    let bank = FormBank::new();
    assert!(build_spec("sym2(nosuchform)", &bank, 10, Normalization::Unitary).is_err());
    assert_eq!(
        build_spec("chi(-12)", &bank, 10, Normalization::Unitary).unwrap_err(),
        Error::NotFundamental(-12)
    );
}

#[test]
fn ramanujan_tau_from_the_spec_language() {
    let c = coeffs("delta", 12, Normalization::Arithmetic, ArithMode::Exact);
    let tau = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
    for (n, t) in tau.iter().enumerate() {
        assert_eq!(c.display(n + 1), t.to_string());
    }
}

#[test]
fn rankin_square_is_nonnegative_with_its_log_derivative() {
    let bank = FormBank::new();
    let spec = build_spec(PI_PI, &bank, 3000, Normalization::Unitary).unwrap();
    let a = expand_coeffs(&spec, 3000, ArithMode::Exact).unwrap();
    assert_eq!(a.mode(), ArithMode::Exact);
    assert!(positivity_report("pi x pi", &a).is_positive());
    let lam = log_deriv_coeffs(&spec, 3000, ArithMode::Exact).unwrap().values();
    assert!(lam[1..].iter().all(|&v| v >= -1e-9));
}

#[test]
fn non_square_pairing_has_negative_coefficients() {
    let a = coeffs("sym2(delta)", 50, Normalization::Unitary, ArithMode::Exact);
    let r = positivity_report("sym2", &a);
    assert!(!r.is_positive());
    assert!(r.certificate().is_none());
}

fn table() -> &'static [(&'static str, DirichletCoeffs)] {
    static T: OnceLock<Vec<(&'static str, DirichletCoeffs)>> = OnceLock::new();
    T.get_or_init(|| {
        ["delta", "sym2(delta)", "zeta*chi(-4)", "(delta)x(f16)"]
            .into_iter()
            .map(|s| (s, coeffs(s, 3600, Normalization::Unitary, ArithMode::Float)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coefficients_are_multiplicative(m in 1usize..60, n in 1usize..60, which in 0usize..4) {
        prop_assume!(m.gcd(&n) == 1);
        let (src, c) = &table()[which];
        let lhs = c.get_f64(m * n);
        let rhs = c.get_f64(m) * c.get_f64(n);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()), "{src}: a_{m}{n}");
    }
}
