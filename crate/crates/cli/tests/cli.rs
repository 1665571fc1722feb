use std::process::{Command, Output};

fn satake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satake"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let o = satake(&["verify", "--identity", "5.17", "--form", "delta", "--pmax", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 1 identities, 0 failures, 0 informational mismatches"));

    let o = satake(&["verify", "--identity", "5.16", "--form", "delta", "--pmax", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("printed typo, informational"), "{text}");
    assert!(text.contains("1 informational mismatches"));

    let o = satake(&["verify", "--identity", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown identity tag"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["scan", "--spec", "zeta", "--interval", "0.9:0.5"],
        vec!["scan", "--spec", "zeta", "--interval", "abc"],
        vec!["coeffs", "--spec", "sym2(delta", "--xmax", "5"],
        vec!["coeffs", "--spec", "chi(-12)"],
        vec!["coeffs", "--spec", "zeta", "--format", "xml"],
        vec!["verify", "--identity", "5.17", "--pmax", "0"],
    ] {
        assert_eq!(satake(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn accuracy_failures_exit_three() {
    assert_eq!(satake(&["residue", "--spec", "sym10(delta)"]).status.code(), Some(3));
}

#[test]
fn failed_prerequisite_exits_one() {
    let o = satake(&["residue", "--spec", "sym2(delta)xsym2(delta)*chi(-4)", "--siegel", "--xmax", "50"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn csv_headers() {
    let o = satake(&["scan", "--spec", "zeta", "--grid", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("s,lambda,l_scaled,bracket"));
    assert_eq!(text.lines().count(), 21);

    let o = satake(&["coeffs", "--form", "delta", "--xmax", "5", "--norm", "arithmetic", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,a_n\n1,1\n2,-24\n3,252\n4,-1472\n5,4830\n");

    let o = satake(&["residue", "--spec", "zeta", "--format", "csv"]);
    assert!(stdout(&o).starts_with("label,residue,error,direct\nzeta,"));
}

#[test]
fn structured_output_is_toml() {
    let o = satake(&["scan", "--spec", "chi(-3)", "--grid", "10", "--format", "structured"]);
    let t: toml::Table = stdout(&o).parse().unwrap();
    assert_eq!(t["point"].as_array().unwrap().len(), 10);
    assert!(t.get("zero").is_none_or(|z| z.as_array().unwrap().is_empty()));
}

#[test]
fn gamma_and_conductor() {
    let text = stdout(&satake(&["gamma", "--form", "delta"]));
    assert!(text.contains("degree: 2\n"));
    assert!(text.contains("gamma_shifts: {5.5, 6.5}\n"));
    assert!(text.contains("root_number: +1\n"));
    let text = stdout(&satake(&["conductor", "--form", "delta"]));
    assert!(text.contains("thickened_conductor: 14\n"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("satake-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.csv");
    let args = ["coeffs", "--spec", "zeta*chi(-4)", "--xmax", "30", "--format", "csv"];
    let direct = stdout(&satake(&args));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(satake(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}
