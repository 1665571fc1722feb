use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use satake::analytic::{
    residue_at_one, scan_real_zeros, siegel_lower_bound_check, zero_count_bound, AnalyticConfig,
    CompletedL, ResidueReport, ScanConfig, ScanReport,
};
use satake::archimedean::{spec_infinity, spec_root_number, thickened_conductor};
use satake::forms::FormBank;
use satake::local_factors::Normalization;
use satake::series::identity::{run_identity_named, IdentityReport, REGISTRY};
use satake::series::parse::build_spec;
use satake::series::{
    expand_coeffs, log_deriv_coeffs, positivity_report, ArithMode, DirichletCoeffs, LSeriesSpec,
    PositivityReport,
};
use satake::Error;
use toml::{Table, Value};

const SPEC_HELP: &str = "\
Spec language:
  spec  := term ('*' term)*
  term  := atom ('^' INT)?
  atom  := 'zeta' | 'chi(' D ')' | rep ('x' rep)? | 'sym2(' inner ')' | 'alt2(' inner ')'
  rep   := 'sym' N '(' FORM ')' | FORM | '(' rep ('+' rep)* ')' | '1'
  inner := 'sym' N '(' FORM ')' | FORM
FORM is delta, f16, f18, f20, f22 or a form file. Examples: \"zeta*chi(-163)\",
\"sym2(delta)xsym2(delta)\", \"(1+sym2(delta)+sym4(delta))x(1+sym2(delta)+sym4(delta))\".

Exit codes: 0 success, 1 a check did not pass, 2 usage or input error, 3 accuracy failure.";

#[derive(Parser)]
#[command(name = "satake", version, about = "Symmetric-power L-function identities and real zeros near s = 1", after_help = SPEC_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Norm {
    Unitary,
    Arithmetic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exact,
    Float,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpecArgs {
    /// A spec in the language described below.
    #[arg(long, conflicts_with = "form")]
    spec: Option<String>,
    /// Shorthand for a spec consisting of one form.
    #[arg(long)]
    form: Option<String>,
}

impl SpecArgs {
    fn source(&self) -> Result<String, Error> {
        self.spec
            .clone()
            .or_else(|| self.form.clone())
            .ok_or_else(|| Error::Config("give --spec or --form".into()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check registry identities prime by prime.
    Verify {
        /// A registry tag, or `all`.
        #[arg(long)]
        identity: String,
        #[arg(long, default_value = "delta")]
        form: String,
        #[arg(long, default_value = "f16")]
        form2: String,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
        pmax: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Expand Dirichlet coefficients.
    Coeffs {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        xmax: u64,
        #[arg(long, value_enum, default_value_t = Norm::Unitary)]
        norm: Norm,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Also list the coefficients of -L'/L.
        #[arg(long)]
        logderiv: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Scan (s-1)^r Lambda(s) for real zeros.
    Scan {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "0.5:0.999", value_parser = parse_interval)]
        interval: (f64, f64),
        #[arg(long, default_value_t = 500)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Count zeros in (1 - c/log M, 1) instead of scanning the interval.
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = 0.1)]
        c: f64,
        /// Coefficients checked for positivity before counting.
        #[arg(long, default_value_t = 1000)]
        xmax: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Residue at s = 1, optionally with the lower-bound check.
    Residue {
        #[command(flatten)]
        spec: SpecArgs,
        /// Check residue >= c/log M after positivity and zero-freeness.
        #[arg(long)]
        siegel: bool,
        #[arg(long, default_value_t = 0.1)]
        c: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 1000)]
        xmax: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Gamma factor, degree and root number.
    Gamma {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Arithmetic and thickened conductor.
    Conductor {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0.1)]
        c: f64,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("`{s}` is not of the form a:b"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    if !(a > 0.0 && a < b && b <= 1.0) {
        return Err(format!("need 0 < a < b <= 1, got {a}:{b}"));
    }
    Ok((a, b))
}

enum Outcome {
    Done,
    CheckFailed,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AccuracyUnreachable(_) | Error::Disagreement(_) => 3,
        Error::PositivityUnverified(_) | Error::PrerequisiteFailed(_) => 1,
        _ => 2,
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn render_toml(t: Table) -> String {
    toml::to_string(&t).expect("tables of plain values serialize")
}

fn normalization(n: Norm) -> Normalization {
    match n {
        Norm::Unitary => Normalization::Unitary,
        Norm::Arithmetic => Normalization::Arithmetic,
    }
}

fn analytic(spec: &SpecArgs, bank: &FormBank) -> Result<(LSeriesSpec, CompletedL), Error> {
    let src = spec.source()?;
    let s = build_spec(&src, bank, 100, Normalization::Unitary)?;
    let lf = CompletedL::new(&s, bank, &AnalyticConfig::default())?;
    Ok((s, lf))
}

fn coefficients(spec: &LSeriesSpec, bank: &FormBank, x: usize, mode: Mode) -> Result<DirichletCoeffs, Error> {
    let spec = spec.refreshed(bank, x as u64)?;
    match mode {
        Mode::Exact => expand_coeffs(&spec, x, ArithMode::Exact),
        Mode::Float => expand_coeffs(&spec, x, ArithMode::Float),
        Mode::Auto => match expand_coeffs(&spec, x, ArithMode::Exact) {
            Err(Error::IrrationalCoefficients(_)) | Err(Error::OverflowPolicy(_)) => {
                expand_coeffs(&spec, x, ArithMode::Float)
            }
            r => r,
        },
    }
}

fn verify(
    bank: &FormBank,
    tag: &str,
    form: &str,
    form2: &str,
    pmax: u64,
    output: &Output,
) -> Result<Outcome, Error> {
    let tags: Vec<&str> = if tag == "all" {
        REGISTRY.iter().map(|i| i.tag).collect()
    } else {
        vec![tag]
    };
    let reports = tags
        .iter()
        .map(|t| run_identity_named(t, bank, form, form2, pmax))
        .collect::<Result<Vec<IdentityReport>, Error>>()?;
    let failures = reports.iter().filter(|r| r.is_failure()).count();
    let informational = reports
        .iter()
        .filter(|r| !r.all_match() && !r.is_failure())
        .count();
    let text = match output.format {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| r.to_text()).collect();
            s += &format!(
                "summary: {} identities, {} failures, {} informational mismatches\n",
                reports.len(),
                failures,
                informational
            );
            s
        }
        Format::Csv => csv_text(
            &["tag", "case", "status", "first_diff_index", "coefficients"],
            reports
                .iter()
                .flat_map(|r| r.to_csv_rows())
                .map(|r| r.to_vec()),
        ),
        Format::Structured => {
            let mut t = Table::new();
            t.insert("failures".into(), Value::Integer(failures as i64));
            t.insert("informational".into(), Value::Integer(informational as i64));
            t.insert(
                "identity".into(),
                Value::Array(reports.iter().map(|r| Value::Table(r.to_table())).collect()),
            );
            render_toml(t)
        }
    };
    emit(output, &text)?;
    Ok(if failures == 0 {
        Outcome::Done
    } else {
        Outcome::CheckFailed
    })
}

#[allow(clippy::too_many_arguments)]
fn coeffs(
    bank: &FormBank,
    spec: &SpecArgs,
    xmax: u64,
    norm: Norm,
    mode: Mode,
    logderiv: bool,
    output: &Output,
) -> Result<Outcome, Error> {
    let src = spec.source()?;
    let x = xmax as usize;
    let s = build_spec(&src, bank, xmax.max(2), normalization(norm))?;
    let a = coefficients(&s, bank, x, mode)?;
    let lam = if logderiv {
        let refreshed = s.refreshed(bank, xmax)?;
        Some(log_deriv_coeffs(&refreshed, x, a.mode())?.values())
    } else {
        None
    };
    let pos = positivity_report(&s.name, &a);
    let row = |n: usize| {
        let mut r = vec![n.to_string(), a.display(n)];
        if let Some(l) = &lam {
            r.push(format!("{:.12e}", l[n]));
        }
        r
    };
    let text = match output.format {
        Format::Text => {
            let mut t = format!("{} ({:?}, n <= {x})\n", s, a.mode());
            for n in 1..=x {
                t += &row(n).join("  ");
                t.push('\n');
            }
            t += &positivity_line(&pos);
            t
        }
        Format::Csv => {
            let mut header = vec!["n", "a_n"];
            if lam.is_some() {
                header.push("lambda_n");
            }
            csv_text(&header, (1..=x).map(row))
        }
        Format::Structured => {
            let mut t = Table::new();
            t.insert("spec".into(), Value::String(s.to_string()));
            t.insert("mode".into(), Value::String(format!("{:?}", a.mode())));
            t.insert("positive".into(), Value::Boolean(pos.is_positive()));
            let list = (1..=x)
                .map(|n| {
                    let mut c = Table::new();
                    c.insert("n".into(), Value::Integer(n as i64));
                    c.insert("a".into(), Value::String(a.display(n)));
                    if let Some(l) = &lam {
                        c.insert("lambda".into(), Value::Float(l[n]));
                    }
                    Value::Table(c)
                })
                .collect();
            t.insert("coeff".into(), Value::Array(list));
            render_toml(t)
        }
    };
    emit(output, &text)?;
    Ok(Outcome::Done)
}

fn positivity_line(pos: &PositivityReport) -> String {
    format!(
        "positivity of {} for n <= {} ({:?}): first negative coefficient {}\n",
        pos.label, pos.checked, pos.mode, pos
    )
}

fn scan_text(r: &ScanReport, format: Format) -> String {
    match format {
        Format::Text => r.to_text(),
        Format::Csv => csv_text(&ScanReport::CSV_HEADER, r.csv_rows().into_iter().map(|r| r.to_vec())),
        Format::Structured => r.to_structured(),
    }
}

#[allow(clippy::too_many_arguments)]
fn scan(
    bank: &FormBank,
    spec: &SpecArgs,
    interval: (f64, f64),
    grid: usize,
    tol: f64,
    count: bool,
    c: f64,
    xmax: u64,
    output: &Output,
) -> Result<Outcome, Error> {
    let (s, lf) = analytic(spec, bank)?;
    let mut cfg = ScanConfig::new(interval.0, interval.1, grid)?;
    cfg.tol = tol;
    cfg.c = c;
    cfg.validate()?;
    if !count {
        let r = scan_real_zeros(&lf, &cfg)?;
        emit(output, &scan_text(&r, output.format))?;
        return Ok(Outcome::Done);
    }
    let a = coefficients(&s, bank, xmax as usize, Mode::Auto)?;
    let pos = positivity_report(&s.name, &a);
    let cert = pos.certificate();
    let r = zero_count_bound(&lf, cert.as_ref(), &cfg)?;
    let text = match output.format {
        Format::Text => format!("{}{}", positivity_line(&pos), r.to_text()),
        Format::Csv => csv_text(
            &["label", "m", "lo", "count", "r", "verdict"],
            [vec![
                r.label.clone(),
                format!("{:.15e}", r.m),
                format!("{:.15e}", r.lo),
                r.count.to_string(),
                r.pole_order.to_string(),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]],
        ),
        Format::Structured => {
            let mut t = Table::new();
            t.insert("label".into(), Value::String(r.label.clone()));
            t.insert("m".into(), Value::Float(r.m));
            t.insert("c".into(), Value::Float(r.c));
            t.insert("lo".into(), Value::Float(r.lo));
            t.insert("count".into(), Value::Integer(r.count as i64));
            t.insert("pole_order".into(), Value::Integer(r.pole_order as i64));
            t.insert("pass".into(), Value::Boolean(r.pass));
            render_toml(t)
        }
    };
    emit(output, &text)?;
    Ok(if r.pass {
        Outcome::Done
    } else {
        Outcome::CheckFailed
    })
}

#[allow(clippy::too_many_arguments)]
fn residue(
    bank: &FormBank,
    spec: &SpecArgs,
    siegel: bool,
    c: f64,
    grid: usize,
    xmax: u64,
    output: &Output,
) -> Result<Outcome, Error> {
    let (s, lf) = analytic(spec, bank)?;
    if !siegel {
        let r = residue_at_one(&lf)?;
        let text = match output.format {
            Format::Text => r.to_text(),
            Format::Csv => csv_text(&ResidueReport::CSV_HEADER, [r.csv_row().to_vec()]),
            Format::Structured => r.to_structured(),
        };
        emit(output, &text)?;
        return Ok(Outcome::Done);
    }
    let a = coefficients(&s, bank, xmax as usize, Mode::Auto)?;
    let cert = positivity_report(&s.name, &a).certificate();
    let mut cfg = ScanConfig::new(0.5, 1.0, grid)?;
    cfg.c = c;
    let r = siegel_lower_bound_check(&lf, cert.as_ref(), &cfg)?;
    let text = match output.format {
        Format::Text => r.to_text(),
        Format::Csv => csv_text(
            &["label", "residue", "c", "threshold", "max_c", "verdict"],
            [vec![
                r.label.clone(),
                format!("{:.15e}", r.residue),
                r.c.to_string(),
                format!("{:.15e}", r.threshold),
                format!("{:.15e}", r.max_c),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]],
        ),
        Format::Structured => {
            let mut t = Table::new();
            t.insert("label".into(), Value::String(r.label.clone()));
            t.insert("residue".into(), Value::Float(r.residue));
            t.insert("c".into(), Value::Float(r.c));
            t.insert("threshold".into(), Value::Float(r.threshold));
            t.insert("max_c".into(), Value::Float(r.max_c));
            t.insert("pass".into(), Value::Boolean(r.pass));
            render_toml(t)
        }
    };
    emit(output, &text)?;
    Ok(if r.pass {
        Outcome::Done
    } else {
        Outcome::CheckFailed
    })
}

fn key_values(pairs: Vec<(&str, String)>, format: Format) -> String {
    match format {
        Format::Text => pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        Format::Csv => csv_text(&["key", "value"], pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()])),
        Format::Structured => {
            let mut t = Table::new();
            for (k, v) in pairs {
                t.insert(k.to_string(), Value::String(v));
            }
            render_toml(t)
        }
    }
}

fn gamma(bank: &FormBank, spec: &SpecArgs, output: &Output) -> Result<Outcome, Error> {
    let s = build_spec(&spec.source()?, bank, 100, Normalization::Unitary)?;
    let inf = spec_infinity(&s)?;
    let w = s.root_number.or_else(|| spec_root_number(&s));
    let pairs = vec![
        ("spec", s.to_string()),
        ("degree", s.degree().to_string()),
        ("gamma_shifts", inf.to_string()),
        ("lambda", format!("{}", inf.lambda())),
        ("self_dual", inf.is_self_dual().to_string()),
        (
            "root_number",
            w.map(|w| format!("{w:+}")).unwrap_or_else(|| "unknown".into()),
        ),
        ("pole_order", s.pole_order.to_string()),
    ];
    emit(output, &key_values(pairs, output.format))?;
    Ok(Outcome::Done)
}

fn conductor(bank: &FormBank, spec: &SpecArgs, c: f64, output: &Output) -> Result<Outcome, Error> {
    let s = build_spec(&spec.source()?, bank, 100, Normalization::Unitary)?;
    let inf = spec_infinity(&s)?;
    let m = thickened_conductor(s.conductor, &inf);
    let pairs = vec![
        ("spec", s.to_string()),
        ("conductor", s.conductor.to_string()),
        ("lambda", format!("{}", inf.lambda())),
        ("thickened_conductor", format!("{m}")),
        ("log_m", format!("{}", m.ln())),
        ("c", format!("{c}")),
        ("interval_lo", format!("{}", 1.0 - c / m.ln())),
    ];
    emit(output, &key_values(pairs, output.format))?;
    Ok(Outcome::Done)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let bank = FormBank::new();
    match cli.command {
        Command::Verify {
            identity,
            form,
            form2,
            pmax,
            output,
        } => verify(&bank, &identity, &form, &form2, pmax, &output),
        Command::Coeffs {
            spec,
            xmax,
            norm,
            mode,
            logderiv,
            output,
        } => coeffs(&bank, &spec, xmax, norm, mode, logderiv, &output),
        Command::Scan {
            spec,
            interval,
            grid,
            tol,
            count,
            c,
            xmax,
            output,
        } => scan(&bank, &spec, interval, grid, tol, count, c, xmax, &output),
        Command::Residue {
            spec,
            siegel,
            c,
            grid,
            xmax,
            output,
        } => residue(&bank, &spec, siegel, c, grid, xmax, &output),
        Command::Gamma { spec, output } => gamma(&bank, &spec, &output),
        Command::Conductor { spec, c, output } => conductor(&bank, &spec, c, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
