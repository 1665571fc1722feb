use super::*;
use crate::series::parse::build_spec;

fn lf(src: &str) -> CompletedL {
    let bank = FormBank::new();
    let spec = build_spec(src, &bank, 100, Normalization::Unitary).unwrap();
    CompletedL::new(&spec, &bank, &AnalyticConfig::default()).unwrap()
}

#[test]
fn zeta_matches_euler_maclaurin() {
    let z = lf("zeta");
    for s in [0.1, 0.3, 0.5, 0.77, 0.999, 1.0, 1.3, 2.0] {
        let v = z.pole_removed(s);
        let o = oracle::zeta_pole_removed(s);
        assert!((v - o).abs() < 1e-8, "s = {s}: {v} vs {o}");
    }
}

#[test]
fn dirichlet_matches_hurwitz() {
    for d in [-3, -4, 5, -163] {
        let l = lf(&format!("chi({d})"));
        for s in [0.2, 0.5, 1.0, 1.7] {
            let v = l.l_value(s).unwrap();
            let o = oracle::dirichlet_l(d, s).unwrap();
            assert!((v - o).abs() < 1e-8, "D = {d}, s = {s}: {v} vs {o}");
        }
    }
}

#[test]
fn functional_equation_zeta_times_chi() {
    let l = lf("zeta*chi(-3)");
    for s in [0.3, 0.7] {
        let fe = l.functional_equation(s).unwrap();
        assert!(fe.abs < 1e-7 && fe.rel < 1e-7, "{fe:?}");
    }
}

#[test]
fn residues() {
    let r = residue_at_one(&lf("zeta")).unwrap();
    assert!((r.value - 1.0).abs() < 1e-6, "{r:?}");
    let r = residue_at_one(&lf("zeta*chi(-4)")).unwrap();
    assert!((r.value - PI / 4.0).abs() < 1e-6, "{r:?}");
    assert!(residue_at_one(&lf("chi(-4)")).is_err());
}

#[test]
fn scan_config_validation() {
    assert!(ScanConfig::new(0.5, 0.999, 10).is_ok());
    assert!(ScanConfig::new(0.9, 0.5, 10).is_err());
    assert!(ScanConfig::new(0.5, 1.2, 10).is_err());
    assert!(ScanConfig::new(0.0, 0.5, 10).is_err());
    assert!(ScanConfig::new(0.5, 0.9, 1).is_err());
}

#[test]
fn guards() {
    let z = lf("zeta");
    let cfg = ScanConfig::new(0.5, 0.9, 10).unwrap();
    assert_eq!(
        zero_count_bound(&z, None, &cfg).unwrap_err(),
        Error::PositivityUnverified("zeta".into())
    );
    assert_eq!(
        siegel_lower_bound_check(&z, None, &cfg).unwrap_err(),
        Error::PrerequisiteFailed("positivity".into())
    );
}
