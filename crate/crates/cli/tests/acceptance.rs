use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use satake::analytic::oracle::class_number_oracle;
use satake::analytic::{
    residue_at_one, scan_real_zeros, zero_count_bound, AnalyticConfig, CompletedL, ScanConfig,
};
use satake::archimedean::{c_of_pi, stirling_ratio_check};
use satake::char_ring::{
    decompose, irreducible_char, plethysm, tensor_chars, CharPoly, IrredDecomp, IrredPart, Irrep,
    Plethysm,
};
use satake::forms::FormBank;
use satake::local_factors::Normalization;
use satake::series::identity::{run_identity_named, IdentityReport, Status};
use satake::series::parse::build_spec;
use satake::series::{expand_coeffs, log_deriv_coeffs, positivity_report, ArithMode};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const PI_PI: &str = "(1+sym2(delta)+sym4(delta))x(1+sym2(delta)+sym4(delta))";

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sym(j: u32) -> CharPoly {
    irreducible_char(j, 0, 1).unwrap()
}

fn one_factor(parts: &[(u32, i32)]) -> IrredDecomp {
    IrredDecomp::from_parts(
        1,
        parts.iter().map(|&(j, k)| IrredPart {
            first: Irrep::new(j, k),
            second: None,
            mult: 1,
        }),
    )
    .unwrap()
}

fn completed(src: &str) -> Result<CompletedL, String> {
    let bank = FormBank::new();
    let spec = build_spec(src, &bank, 100, Normalization::Unitary).map_err(err)?;
    CompletedL::new(&spec, &bank, &AnalyticConfig::default()).map_err(err)
}

fn identity(tag: &str, pmax: u64) -> Result<IdentityReport, String> {
    run_identity_named(tag, &FormBank::new(), "delta", "f16", pmax).map_err(err)
}

fn clebsch_gordan() -> Check {
    let mut cases = 0;
    for j1 in 0..=8u32 {
        for j2 in 0..=j1 {
            let got = decompose(&tensor_chars(&sym(j1), &sym(j2)).map_err(err)?).map_err(err)?;
            let want: Vec<(u32, i32)> = (0..=j2).map(|i| (j1 + j2 - 2 * i, i as i32)).collect();
            ensure(got == one_factor(&want), format!("sym{j1} x sym{j2}: {got}"))?;
            cases += 1;
        }
    }
    let p = |j, kind| decompose(&plethysm(&sym(j), kind).unwrap()).unwrap();
    ensure(p(3, Plethysm::Sym2) == one_factor(&[(6, 0), (2, 2)]), "SYM2(sym3)")?;
    ensure(p(4, Plethysm::Sym2) == one_factor(&[(8, 0), (4, 2), (0, 4)]), "SYM2(sym4)")?;
    ensure(p(4, Plethysm::Alt2) == one_factor(&[(6, 1), (2, 3)]), "ALT2(sym4)")?;
    Ok(format!("{cases} tensor products and 3 plethysms exact"))
}

fn identity_5_17() -> Check {
    let r = identity("5.17", 200)?;
    ensure(r.all_match() && r.mismatches() == 0, r.to_text())?;
    Ok(format!("{} primes, 0 mismatches, degrees {}", r.rows.len(), r.bookkeeping()))
}

fn typo_detection() -> Check {
    let mut notes = Vec::new();
    for (printed, corrected) in [("5.16", "5.16c"), ("4.19", "4.19c"), ("7.2", "7.2c")] {
        let p = identity(printed, 200)?;
        let at2 = p.row("p=2").map(|r| r.status);
        ensure(at2 == Some(Status::Mismatch), format!("{printed} at p=2: {at2:?}"))?;
        ensure(!p.is_failure(), format!("{printed} counted as a failure"))?;
        let c = identity(corrected, 200)?;
        ensure(c.all_match(), c.to_text())?;
        notes.push(format!("{printed} MISMATCH at p=2, {corrected} MATCH"));
    }
    Ok(notes.join("; "))
}

fn identity_4_15() -> Check {
    let r = identity("4.15", 100)?;
    ensure(r.all_match(), r.to_text())?;
    let b = r.bookkeeping();
    ensure(b == "64 vs 64 = 1+4+4+3+3+16+9+12+12", b.clone())?;
    Ok(format!("{} primes MATCH, {b}", r.rows.len()))
}

fn positivity() -> Check {
    let bank = FormBank::new();
    let x = 10_000;
    let spec = build_spec(PI_PI, &bank, x as u64, Normalization::Unitary).map_err(err)?;
    let a = expand_coeffs(&spec, x, ArithMode::Exact).map_err(err)?;
    let r = positivity_report("pi x pi", &a);
    ensure(r.is_positive(), format!("a_n < 0 at n = {r}"))?;
    let lam = log_deriv_coeffs(&spec, x, ArithMode::Exact).map_err(err)?.values();
    let bad = (1..=x).find(|&n| lam[n] < -1e-9);
    ensure(bad.is_none(), format!("-L'/L coefficient negative at {bad:?}"))?;
    Ok(format!("a_n >= 0 and -L'/L coefficients >= 0 for n <= {x} ({:?})", a.mode()))
}

fn gamma_cross_check() -> Check {
    for t in [0.0, 0.5, 1.0, 5.0, 9.5337] {
        c_of_pi(t).map_err(err)?;
    }
    let a = stirling_ratio_check(100.0);
    let b = stirling_ratio_check(1000.0);
    ensure(a < 0.02 && b < a, format!("Stirling deviations {a:e}, {b:e}"))?;
    Ok(format!("closed form within 1e-12 at 5 points; Stirling deviation {a:.2e} at t=100, {b:.2e} at t=1000"))
}

fn degree_one() -> Check {
    let mut worst: f64 = 0.0;
    for d in [-3, -4, -7, -8, -11, -23, -163] {
        let v = completed(&format!("chi({d})"))?.l_value(1.0).map_err(err)?;
        let o = class_number_oracle(d).map_err(err)?;
        worst = worst.max((v - o).abs());
        ensure((v - o).abs() < 1e-6, format!("L(1, chi_{d}) = {v}, oracle {o}"))?;
    }
    let z = residue_at_one(&completed("zeta")?).map_err(err)?.value;
    ensure((z - 1.0).abs() < 1e-6, format!("zeta residue {z}"))?;
    let q = residue_at_one(&completed("zeta*chi(-4)")?).map_err(err)?.value;
    ensure((q - PI / 4.0).abs() < 1e-6, format!("zeta*chi(-4) residue {q}"))?;
    Ok(format!(
        "class numbers within {worst:.1e}; residues {:.1e} and {:.1e} from 1 and pi/4",
        (z - 1.0).abs(),
        (q - PI / 4.0).abs()
    ))
}

fn zero_scanning() -> Check {
    let cfg = ScanConfig::new(0.5, 0.999, 1000).map_err(err)?;
    for src in ["zeta", "chi(-3)"] {
        let r = scan_real_zeros(&completed(src)?, &cfg).map_err(err)?;
        ensure(r.zeros.is_empty(), r.to_text())?;
    }
    let bank = FormBank::new();
    let mut verdicts = Vec::new();
    for (src, grid) in [("zeta", 200), ("zeta*chi(-4)", 200), (PI_PI, 200)] {
        let spec = build_spec(src, &bank, 1000, Normalization::Unitary).map_err(err)?;
        let a = expand_coeffs(&spec, 1000, ArithMode::Exact).map_err(err)?;
        let cert = positivity_report(src, &a).certificate();
        let cfg = ScanConfig::new(0.5, 0.999, grid).map_err(err)?;
        let r = zero_count_bound(&completed(src)?, cert.as_ref(), &cfg).map_err(err)?;
        ensure(r.pass, r.to_text())?;
        verdicts.push(format!("{} <= {}", r.count, r.pole_order));
    }
    Ok(format!(
        "zeta and chi(-3) empty on (0.5, 0.999); zero counts {} PASS",
        verdicts.join(", ")
    ))
}

fn residue_factorization() -> Check {
    let r = residue_at_one(&completed("sym2(delta)xsym2(delta)")?).map_err(err)?.value;
    let a = completed("sym2(delta)")?.l_value(1.0).map_err(err)?;
    let b = completed("sym4(delta)")?.l_value(1.0).map_err(err)?;
    ensure((r - a * b).abs() < 1e-5, format!("{r} vs {}", a * b))?;
    Ok(format!("residue {r:.10} vs {:.10}, difference {:.1e}", a * b, (r - a * b).abs()))
}

fn run_cli(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_satake"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(err)?;
    ensure(o.status.success(), String::from_utf8_lossy(&o.stderr).to_string())?;
    Ok(o.stdout)
}

fn determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &["verify", "--identity", "all", "--pmax", "60", "--format", "structured"],
        &["scan", "--spec", "zeta*chi(-163)", "--interval", "0.99:0.9999", "--grid", "50", "--format", "csv"],
        &["coeffs", "--spec", "sym2(delta)xsym2(delta)", "--xmax", "300", "--logderiv", "--format", "csv"],
        &["residue", "--spec", "zeta*chi(-4)", "--format", "structured"],
    ];
    for args in runs {
        let first = run_cli(args, "1")?;
        ensure(first == run_cli(args, "1")?, format!("{args:?} differs between runs"))?;
        ensure(first == run_cli(args, "4")?, format!("{args:?} differs between thread counts"))?;
    }
    Ok(format!("{} invocations byte-identical across runs and 1 vs 4 threads", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Clebsch-Gordan suite", clebsch_gordan),
        ("identity 5.17 for delta, p <= 200", identity_5_17),
        ("printed typo detection", typo_detection),
        ("identity 4.15 for (delta, f16), p <= 100", identity_4_15),
        ("positivity of pi x pi", positivity),
        ("gamma cross-check", gamma_cross_check),
        ("degree-one analytics", degree_one),
        ("zero scanning", zero_scanning),
        ("residue factorization", residue_factorization),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {e} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
