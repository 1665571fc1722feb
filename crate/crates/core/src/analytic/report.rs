use std::fmt::Write as _;

use toml::{Table, Value};

use super::{RealZero, ZeroStatus};

fn num(x: f64) -> String {
    format!("{x:.15e}")
}

fn zero_table(z: &RealZero) -> Table {
    let mut t = Table::new();
    t.insert("lo".into(), Value::Float(z.lo));
    t.insert("hi".into(), Value::Float(z.hi));
    t.insert("status".into(), Value::String(z.status.to_string()));
    t
}

fn zero_line(z: &RealZero) -> String {
    format!("  zero in [{}, {}] {}", num(z.lo), num(z.hi), z.status)
}

impl std::fmt::Display for ZeroStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZeroStatus::Resolved => "RESOLVED",
            ZeroStatus::Unresolved => "UNRESOLVED",
        })
    }
}

fn render(t: Table) -> String {
    toml::to_string(&t).expect("tables of plain values serialize")
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeCheck {
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs: f64,
    /// `|Lambda(s) / (W Lambda(1-s)) - 1|`.
    pub rel: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub label: String,
    pub pole_order: u32,
    pub a: f64,
    pub b: f64,
    pub grid: Vec<f64>,
    /// `(s - 1)^r L(s)`.
    pub values: Vec<f64>,
    /// `(s - 1)^r Lambda(s)`.
    pub completed: Vec<f64>,
    /// Whether a zero is bracketed between a grid point and the next.
    pub brackets: Vec<bool>,
    pub zeros: Vec<RealZero>,
}

impl ScanReport {
    pub const CSV_HEADER: [&'static str; 4] = ["s", "lambda", "l_scaled", "bracket"];

    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        (0..self.grid.len())
            .map(|i| {
                [
                    format!("{:.12}", self.grid[i]),
                    num(self.completed[i]),
                    num(self.values[i]),
                    (self.brackets[i] as u8).to_string(),
                ]
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "scan {} on ({}, {}) with {} points, (s-1)^{} Lambda(s)\n",
            self.label,
            self.a,
            self.b,
            self.grid.len(),
            self.pole_order
        );
        if self.zeros.is_empty() {
            out.push_str("  no sign changes\n");
        }
        for z in &self.zeros {
            let _ = writeln!(out, "{}", zero_line(z));
        }
        out
    }

    pub fn to_structured(&self) -> String {
        let mut t = Table::new();
        t.insert("label".into(), Value::String(self.label.clone()));
        t.insert("pole_order".into(), Value::Integer(self.pole_order as i64));
        t.insert("a".into(), Value::Float(self.a));
        t.insert("b".into(), Value::Float(self.b));
        t.insert("grid".into(), Value::Integer(self.grid.len() as i64));
        t.insert(
            "zero".into(),
            Value::Array(self.zeros.iter().map(|z| Value::Table(zero_table(z))).collect()),
        );
        let points = (0..self.grid.len())
            .map(|i| {
                let mut p = Table::new();
                p.insert("s".into(), Value::Float(self.grid[i]));
                p.insert("lambda".into(), Value::Float(self.completed[i]));
                p.insert("l_scaled".into(), Value::Float(self.values[i]));
                p.insert("bracket".into(), Value::Boolean(self.brackets[i]));
                Value::Table(p)
            })
            .collect();
        t.insert("point".into(), Value::Array(points));
        render(t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroCountReport {
    pub label: String,
    pub m: f64,
    pub c: f64,
    pub lo: f64,
    pub count: usize,
    pub pole_order: u32,
    pub pass: bool,
    pub zeros: Vec<RealZero>,
}

impl ZeroCountReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: M = {}, interval ({}, 1), {} real zeros, r = {}: {}\n",
            self.label,
            num(self.m),
            num(self.lo),
            self.count,
            self.pole_order,
            verdict(self.pass)
        );
        for z in &self.zeros {
            let _ = writeln!(out, "{}", zero_line(z));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueReport {
    pub label: String,
    pub value: f64,
    /// Difference of the last two Richardson diagonals.
    pub error: f64,
    /// The pole-removed function evaluated at `s = 1` itself.
    pub direct: f64,
}

impl ResidueReport {
    pub const CSV_HEADER: [&'static str; 4] = ["label", "residue", "error", "direct"];

    pub fn csv_row(&self) -> [String; 4] {
        [
            self.label.clone(),
            num(self.value),
            num(self.error),
            num(self.direct),
        ]
    }

    pub fn to_text(&self) -> String {
        format!(
            "residue of {} at s = 1: {} (extrapolation error {:.1e}, direct {})\n",
            self.label,
            num(self.value),
            self.error,
            num(self.direct)
        )
    }

    pub fn to_structured(&self) -> String {
        let mut t = Table::new();
        t.insert("label".into(), Value::String(self.label.clone()));
        t.insert("residue".into(), Value::Float(self.value));
        t.insert("error".into(), Value::Float(self.error));
        t.insert("direct".into(), Value::Float(self.direct));
        render(t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SiegelReport {
    pub label: String,
    pub m: f64,
    pub residue: f64,
    pub c: f64,
    /// `c / log M`.
    pub threshold: f64,
    /// `residue * log M`.
    pub max_c: f64,
    pub pass: bool,
}

impl SiegelReport {
    pub fn to_text(&self) -> String {
        format!(
            "{}: residue {} vs c/log M = {} (c = {}): {}; largest passing c {}\n",
            self.label,
            num(self.residue),
            num(self.threshold),
            self.c,
            verdict(self.pass),
            num(self.max_c)
        )
    }
}
