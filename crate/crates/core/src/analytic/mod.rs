//! Completed L-functions on the real axis.
//!
//! `Lambda(s) = Q^s gamma(s) L(s)` with `Q = sqrt(N)` is evaluated by the
//! smoothed approximate functional equation
//!
//! `Lambda(s) = a^-s sum a_n Phi(s, n/(aQ)) + W a^(1-s) sum a_n Phi(1-s, na/Q)
//!              - R (a^(1-s)/(1-s) + W a^-s/s)`
//!
//! where `Phi(w, x)` is the inverse Mellin transform of `gamma(w + z)/z`,
//! taken by the trapezoidal rule on a vertical line, and `R` is the residue
//! of `Lambda` at `s = 1`, solved from two values of `a`. Values are kept on
//! the scale of `L` itself (divided by `Q^s gamma(s)`), which is positive on
//! the real axis and keeps high-degree data in range.
//!
//! Series of degree above nine, or with a pole of order above one, are
//! evaluated as products of their irreducible constituents.

pub mod oracle;
mod report;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

pub use oracle::class_number_oracle;
pub use report::{FeCheck, ResidueReport, ScanReport, SiegelReport, ZeroCountReport};

use crate::archimedean::{spec_infinity, spec_root_number, thickened_conductor, InfinityType};
use crate::error::{Error, Result};
use crate::forms::FormBank;
use crate::local_factors::Normalization;
use crate::series::{expand_coeffs, ArithMode, LSeriesSpec, PositivityCertificate};

const DIRECT_MAX_DEGREE: usize = 9;
/// Second smoothing parameter, used to solve for the residue.
const A_ALT: f64 = 2.0;
/// Point at which the residue is solved for.
const RESIDUE_POINT: f64 = 1.5;
/// Smoothing parameter of the functional-equation check.
const A_CHECK: f64 = 1.25;
/// Real points at which the truncation bound is enforced.
const CUTOFF_POINTS: [f64; 15] = [
    0.01, 0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 1.0, 1.1, 1.25, 1.5, 1.75, 2.0,
];
/// Weights below this (on the scale of `L`) are dropped from the contour.
const WEIGHT_FLOOR: f64 = 1e-22;

#[derive(Clone, Debug)]
pub struct AnalyticConfig {
    /// Target error on the scale of `L(s)`.
    pub target: f64,
    pub max_cutoff: usize,
    /// Trapezoid step along the contour.
    pub step: f64,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        AnalyticConfig {
            target: 1e-8,
            max_cutoff: 40_000,
            step: 0.2,
        }
    }
}

/// One directly evaluated factor: degree at most nine, pole order at most
/// one.
#[derive(Clone, Debug)]
struct Piece {
    label: String,
    exponent: u32,
    inf: InfinityType,
    ln_q: f64,
    root_number: f64,
    pole: bool,
    cutoff: usize,
    coeffs: Vec<(f64, f64)>,
    step: f64,
    res_l: f64,
}

impl Piece {
    fn new(spec: &LSeriesSpec, exponent: u32, bank: &FormBank, cfg: &AnalyticConfig) -> Result<Piece> {
        if !spec.self_dual {
            return Err(Error::NotSelfDual(spec.name.clone()));
        }
        let inf = spec_infinity(spec)?;
        let root_number = spec
            .root_number
            .or_else(|| spec_root_number(spec))
            .ok_or_else(|| Error::Config(format!("root number of {} is unknown", spec.name)))?;
        let mut piece = Piece {
            label: spec.name.clone(),
            exponent,
            inf,
            ln_q: 0.5 * (spec.conductor as f64).ln(),
            root_number,
            pole: spec.pole_order == 1,
            cutoff: 0,
            coeffs: Vec::new(),
            step: cfg.step,
            res_l: 0.0,
        };
        piece.cutoff = piece.required_cutoff(spec.degree(), cfg)?;
        let spec = if spec.prime_bound() < piece.cutoff as u64 {
            spec.refreshed(bank, piece.cutoff as u64)?
        } else {
            spec.clone()
        };
        let a = expand_coeffs(&spec, piece.cutoff, ArithMode::Float)?.to_f64();
        piece.coeffs = a
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, v)| **v != 0.0)
            .map(|(n, v)| ((n as f64).ln(), *v))
            .collect();
        if piece.pole {
            let p = |a: f64| piece.pole_factor(RESIDUE_POINT, a);
            let rho = (piece.afe(RESIDUE_POINT, 1.0) - piece.afe(RESIDUE_POINT, A_ALT)) / (p(1.0) - p(A_ALT));
            piece.res_l = rho * (piece.ln_norm(RESIDUE_POINT) - piece.ln_norm(1.0)).exp();
        }
        Ok(piece)
    }

    /// `log(Q^s gamma(s))` for real `s`.
    fn ln_norm(&self, s: f64) -> f64 {
        self.inf.ln_gamma_factor(Complex64::new(s, 0.0)).re + s * self.ln_q
    }

    fn max_im_shift(&self) -> f64 {
        self.inf.shifts().iter().map(|b| b.im.abs()).fold(0.0, f64::max)
    }

    /// `log((h/2pi) sum_k |gamma(u + i k h)|)` over the full line.
    fn ln_line_mass(&self, u: f64, h: f64) -> f64 {
        let y_min = self.max_im_shift() + u.abs() + 10.0;
        let mut terms = Vec::new();
        let mut k = 0usize;
        loop {
            let y = k as f64 * h;
            let v = self.inf.ln_gamma_factor(Complex64::new(u, y)).re;
            let w = if k == 0 { v } else { v + 2f64.ln() };
            terms.push(w);
            let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if y > y_min && v < top - 60.0 {
                break;
            }
            k += 1;
        }
        let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln() + (h / (2.0 * PI)).ln()
    }

    /// Smallest cutoff for which the tail of both sums, under
    /// `|a_n| <= d_deg(n) n^(deg/4)`, stays below a tenth of the target on
    /// the scale of `L` at every checkpoint.
    fn required_cutoff(&self, deg: usize, cfg: &AnalyticConfig) -> Result<usize> {
        let d = deg as f64;
        let u_min = 1.0 + d / 4.0 + 0.05;
        let table: Vec<(f64, f64)> = (0..=120)
            .map(|k| {
                let u = u_min + k as f64;
                (u, self.ln_line_mass(u, 0.5))
            })
            .collect();
        let ln_scale = (A_ALT * self.ln_q.exp()).ln();
        let goal = (0.1 * cfg.target).ln();
        let tail = |x: f64, w: f64, s: f64| -> f64 {
            let lx = x.ln();
            table
                .iter()
                .filter(|(u, _)| *u > w)
                .map(|(u, lg)| {
                    lg - (u - w).ln() + u * ln_scale + (1.0 + d / 4.0 - u) * lx
                        + (d - 1.0) * (lx + 1.0).ln()
                        - (u - 1.0 - d / 4.0).ln()
                })
                .fold(f64::INFINITY, f64::min)
                - self.ln_norm(s)
        };
        let ok = |x: f64| {
            CUTOFF_POINTS.iter().all(|&s| {
                let t1 = tail(x, s, s);
                let t2 = tail(x, 1.0 - s, s) + A_ALT.ln();
                t1.max(t2) + 2f64.ln() < goal
            })
        };
        let mut x = 8.0f64;
        while !ok(x) {
            x = (x * 1.1).ceil();
            if x > cfg.max_cutoff as f64 {
                return Err(Error::AccuracyUnreachable(format!(
                    "{} needs more than {} coefficients",
                    self.label, cfg.max_cutoff
                )));
            }
        }
        Ok(x as usize)
    }

    /// Contour weights `gamma(w + c + i k h) / (c + i k h)`, scaled by
    /// `exp(-ln_norm)`, for `k = 0, 1, ...` until negligible.
    fn weights(&self, w: f64, c: f64, ln_norm: f64, amp: f64) -> Vec<Complex64> {
        let y_min = self.max_im_shift() + (w + c).abs() + 10.0;
        let floor = WEIGHT_FLOOR.ln() - amp;
        let mut out = Vec::new();
        let mut k = 0usize;
        loop {
            let y = k as f64 * self.step;
            let z = Complex64::new(c, y);
            let lg = self.inf.ln_gamma_factor(Complex64::new(w, 0.0) + z) - ln_norm;
            if y > y_min && lg.re < floor {
                break;
            }
            out.push(lg.exp() / z);
            k += 1;
        }
        out
    }

    /// `sum a_n Phi(w, n * scale)` divided by `exp(ln_norm)`.
    fn smoothed_sum(&self, w: f64, scale: f64, ln_norm: f64) -> f64 {
        let c = (1.5 - w).max(1.0);
        let ln_scale = scale.ln();
        let amp = ((w + c) * -ln_scale).max(0.0);
        let g = self.weights(w, c, ln_norm, amp);
        let h = self.step;
        let mut total = 0.0;
        for &(ln_n, a) in &self.coeffs {
            let lx = ln_n + ln_scale;
            let r = Complex64::from_polar(1.0, -h * lx);
            let mut rk = r;
            let mut acc = Complex64::new(0.0, 0.0);
            for gk in &g[1..] {
                acc += gk * rk;
                rk *= r;
            }
            let phi = (g[0].re + 2.0 * acc.re) * (-(w + c) * lx).exp();
            total += a * phi;
        }
        total * h / (2.0 * PI)
    }

    /// The sum part of the approximate functional equation at smoothing
    /// parameter `a`, on the scale of `L(s)`.
    fn afe(&self, s: f64, a: f64) -> f64 {
        let ln_norm = self.ln_norm(s);
        let q = self.ln_q.exp();
        a.powf(-s) * self.smoothed_sum(s, 1.0 / (a * q), ln_norm)
            + self.root_number * a.powf(1.0 - s) * self.smoothed_sum(1.0 - s, a / q, ln_norm)
    }

    fn pole_factor(&self, s: f64, a: f64) -> f64 {
        a.powf(1.0 - s) / (1.0 - s) + self.root_number * a.powf(-s) / s
    }

    /// `R / (Q^s gamma(s))`.
    fn pole_scale(&self, s: f64) -> f64 {
        self.res_l * (self.ln_norm(1.0) - self.ln_norm(s)).exp()
    }

    fn l_value_at(&self, s: f64, a: f64) -> f64 {
        let v = self.afe(s, a);
        if self.pole {
            v - self.pole_scale(s) * self.pole_factor(s, a)
        } else {
            v
        }
    }

    /// `(s - 1)^r L(s)`, finite at `s = 1`.
    fn pole_removed(&self, s: f64) -> f64 {
        if !self.pole {
            return self.afe(s, 1.0);
        }
        (s - 1.0) * self.afe(s, 1.0)
            - self.pole_scale(s) * (self.root_number * (s - 1.0) / s - 1.0)
    }
}

/// A self-dual completed L-function ready for evaluation on the real axis.
#[derive(Clone, Debug)]
pub struct CompletedL {
    pub label: String,
    pub degree: usize,
    pub conductor: u64,
    pub pole_order: u32,
    pub root_number: f64,
    pub infinity: InfinityType,
    pieces: Vec<Piece>,
}

/// Summary of one directly evaluated constituent.
#[derive(Clone, Debug, PartialEq)]
pub struct PieceInfo {
    pub label: String,
    pub exponent: u32,
    pub cutoff: usize,
    pub root_number: f64,
}

impl CompletedL {
    pub fn new(spec: &LSeriesSpec, bank: &FormBank, cfg: &AnalyticConfig) -> Result<CompletedL> {
        if !spec.self_dual {
            return Err(Error::NotSelfDual(spec.name.clone()));
        }
        let infinity = spec_infinity(spec)?;
        let pieces = if spec.degree() <= DIRECT_MAX_DEGREE && spec.pole_order <= 1 {
            vec![Piece::new(spec, 1, bank, cfg)?]
        } else {
            let forms = spec.forms();
            let mut out = Vec::new();
            for (atom, m) in spec.atoms()? {
                if atom.degree() as usize > DIRECT_MAX_DEGREE {
                    return Err(Error::AccuracyUnreachable(format!(
                        "constituent of degree {} exceeds the direct evaluation limit",
                        atom.degree()
                    )));
                }
                let f = atom.to_factor(&forms)?;
                let sub = LSeriesSpec::new(&f.to_string(), vec![(f, 1)], Normalization::Unitary)?;
                out.push(Piece::new(&sub, m, bank, cfg)?);
            }
            out
        };
        let root_number = pieces
            .iter()
            .map(|p| p.root_number.powi(p.exponent as i32))
            .product();
        Ok(CompletedL {
            label: spec.name.clone(),
            degree: spec.degree(),
            conductor: spec.conductor,
            pole_order: spec.pole_order,
            root_number,
            infinity,
            pieces,
        })
    }

    pub fn pieces(&self) -> Vec<PieceInfo> {
        self.pieces
            .iter()
            .map(|p| PieceInfo {
                label: p.label.clone(),
                exponent: p.exponent,
                cutoff: p.cutoff,
                root_number: p.root_number,
            })
            .collect()
    }

    /// `M = N (2 + sum |b_j|)`.
    pub fn thickened_conductor(&self) -> f64 {
        thickened_conductor(self.conductor, &self.infinity)
    }

    /// `log(Q^s gamma(s))`, so that `Lambda(s) = L(s) exp(..)`.
    pub fn ln_norm(&self, s: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.exponent as f64 * p.ln_norm(s))
            .sum()
    }

    pub fn l_value(&self, s: f64) -> Result<f64> {
        check_point(s)?;
        if self.pole_order > 0 && s == 1.0 {
            return Err(Error::Config("s = 1 is a pole".into()));
        }
        Ok(self
            .pieces
            .iter()
            .map(|p| p.l_value_at(s, 1.0).powi(p.exponent as i32))
            .product())
    }

    /// `Lambda(s)`.
    pub fn completed(&self, s: f64) -> Result<f64> {
        Ok(self.l_value(s)? * self.ln_norm(s).exp())
    }

    /// `(s - 1)^r L(s)` with `r` the pole order.
    pub fn pole_removed(&self, s: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.pole_removed(s).powi(p.exponent as i32))
            .product()
    }

    /// `(s - 1)^r Lambda(s)`.
    pub fn completed_pole_removed(&self, s: f64) -> f64 {
        self.pole_removed(s) * self.ln_norm(s).exp()
    }

    /// Compares `Lambda(s)` with `W Lambda(1 - s)`, the latter computed with a
    /// different smoothing parameter so the comparison is not automatic.
    pub fn functional_equation(&self, s: f64) -> Result<FeCheck> {
        check_point(s)?;
        check_point(1.0 - s)?;
        let mut ln_ratio = self.ln_norm(s) - self.ln_norm(1.0 - s);
        let mut sign = self.root_number;
        for p in &self.pieces {
            let x = p.l_value_at(s, 1.0);
            let y = p.l_value_at(1.0 - s, A_CHECK);
            let e = p.exponent as f64;
            ln_ratio += e * (x.abs().ln() - y.abs().ln());
            if (x * y < 0.0) && p.exponent % 2 == 1 {
                sign = -sign;
            }
        }
        let lhs = self.completed(s)?;
        let rhs = self.root_number * self.completed(1.0 - s)?;
        let rel = if sign > 0.0 {
            ln_ratio.exp_m1().abs()
        } else {
            2.0
        };
        Ok(FeCheck {
            s,
            lhs,
            rhs,
            abs: (lhs - rhs).abs(),
            rel,
        })
    }
}

fn check_point(s: f64) -> Result<()> {
    if s > 0.0 && s <= 2.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("s = {s} is outside (0, 2]")))
    }
}

/// `Lambda(s)` for a self-dual spec.
pub fn evaluate_completed(lf: &CompletedL, s: f64) -> Result<f64> {
    lf.completed(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub a: f64,
    pub b: f64,
    pub grid: usize,
    pub tol: f64,
    pub target: f64,
    pub c: f64,
}

impl ScanConfig {
    pub fn new(a: f64, b: f64, grid: usize) -> Result<ScanConfig> {
        let cfg = ScanConfig {
            a,
            b,
            grid,
            tol: 1e-9,
            target: 1e-8,
            c: 0.1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a < self.b && self.b <= 1.0) {
            return Err(Error::Config(format!(
                "interval ({}, {}) is not inside (0, 1]",
                self.a, self.b
            )));
        }
        if self.grid < 2 {
            return Err(Error::Config("grid needs at least two points".into()));
        }
        if !(self.tol > 0.0 && self.target > 0.0 && self.c > 0.0) {
            return Err(Error::Config("tolerances and c must be positive".into()));
        }
        Ok(())
    }

    fn with_interval(&self, a: f64, b: f64) -> Result<ScanConfig> {
        let cfg = ScanConfig { a, b, ..self.clone() };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    Resolved,
    /// Too close to `s = 1`, or the function is below the evaluation
    /// error at the bracket ends.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealZero {
    pub lo: f64,
    pub hi: f64,
    pub status: ZeroStatus,
}

impl RealZero {
    pub fn s(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Sign changes of `(s - 1)^r Lambda(s)` on the grid, refined by bisection.
pub fn scan_real_zeros(lf: &CompletedL, cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let n = cfg.grid;
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                cfg.b
            } else {
                cfg.a + (cfg.b - cfg.a) * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let values: Vec<f64> = xs.par_iter().map(|&s| lf.pole_removed(s)).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::AccuracyUnreachable(format!(
            "non-finite value at s = {}",
            xs[i]
        )));
    }
    let mut zeros = Vec::new();
    let mut brackets = vec![false; n];
    for i in 0..n - 1 {
        let (f0, f1) = (values[i], values[i + 1]);
        let zero = if f0 == 0.0 {
            Some((xs[i], xs[i]))
        } else if f0 * f1 < 0.0 {
            Some(bisect(lf, xs[i], xs[i + 1], f0, cfg.tol))
        } else {
            None
        };
        if let Some((lo, hi)) = zero {
            brackets[i] = true;
            let unresolved = 1.0 - hi <= 10.0 * cfg.tol
                || (f0.abs().max(f1.abs()) < 10.0 * cfg.target);
            zeros.push(RealZero {
                lo,
                hi,
                status: if unresolved {
                    ZeroStatus::Unresolved
                } else {
                    ZeroStatus::Resolved
                },
            });
        }
    }
    if values[n - 1] == 0.0 {
        brackets[n - 1] = true;
        zeros.push(RealZero {
            lo: xs[n - 1],
            hi: xs[n - 1],
            status: ZeroStatus::Unresolved,
        });
    }
    let completed = xs
        .iter()
        .zip(&values)
        .map(|(s, v)| v * lf.ln_norm(*s).exp())
        .collect();
    Ok(ScanReport {
        label: lf.label.clone(),
        pole_order: lf.pole_order,
        a: cfg.a,
        b: cfg.b,
        grid: xs,
        values,
        completed,
        brackets,
        zeros,
    })
}

fn bisect(lf: &CompletedL, mut lo: f64, mut hi: f64, mut flo: f64, tol: f64) -> (f64, f64) {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = lf.pole_removed(mid);
        if fm == 0.0 {
            return (mid, mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Counts scan-located real zeros in `(1 - c/log M, 1)`; the verdict passes
/// when there are at most as many as the pole order.
pub fn zero_count_bound(
    lf: &CompletedL,
    cert: Option<&PositivityCertificate>,
    cfg: &ScanConfig,
) -> Result<ZeroCountReport> {
    if cert.is_none() {
        return Err(Error::PositivityUnverified(lf.label.clone()));
    }
    let m = lf.thickened_conductor();
    let lo = (1.0 - cfg.c / m.ln()).max(cfg.a.min(0.01));
    let scan = scan_real_zeros(lf, &cfg.with_interval(lo, 1.0)?)?;
    let count = scan.zeros.len();
    Ok(ZeroCountReport {
        label: lf.label.clone(),
        m,
        c: cfg.c,
        lo,
        count,
        pole_order: lf.pole_order,
        pass: count <= lf.pole_order as usize,
        zeros: scan.zeros,
    })
}

/// `lim (s - 1) L(s)` by Richardson extrapolation over `s = 1 + h 2^-j`,
/// cross-checked against the value of the pole-removed function at 1.
pub fn residue_at_one(lf: &CompletedL) -> Result<ResidueReport> {
    if lf.pole_order != 1 {
        return Err(Error::Config(format!(
            "{} has a pole of order {}, not a simple pole",
            lf.label, lf.pole_order
        )));
    }
    const H: f64 = 0.25;
    const LEVELS: usize = 6;
    let f: Vec<f64> = (0..=LEVELS)
        .into_par_iter()
        .map(|j| lf.pole_removed(1.0 + H / 2f64.powi(j as i32)))
        .collect();
    let mut table: Vec<Vec<f64>> = Vec::new();
    for (j, v) in f.iter().enumerate() {
        let mut row = vec![*v];
        for k in 1..=j {
            let p = 2f64.powi(k as i32);
            let prev = &table[j - 1];
            row.push(row[k - 1] + (row[k - 1] - prev[k - 1]) / (p - 1.0));
        }
        table.push(row);
    }
    let value = table[LEVELS][LEVELS];
    let error = (value - table[LEVELS - 1][LEVELS - 1]).abs();
    if error > 1e-6 * value.abs().max(1.0) {
        return Err(Error::AccuracyUnreachable(format!(
            "residue extrapolation of {} settles only to {error:e}",
            lf.label
        )));
    }
    let direct = lf.pole_removed(1.0);
    if (value - direct).abs() > 1e-6 * value.abs().max(1.0) {
        return Err(Error::Disagreement(format!(
            "residue of {}: extrapolated {value}, solved {direct}",
            lf.label
        )));
    }
    Ok(ResidueReport {
        label: lf.label.clone(),
        value,
        error,
        direct,
    })
}

/// Checks `Res_{s=1} L >= c / log M` once positivity is certified and the
/// scan finds no zero in `(1 - 1/log M, 1)`.
pub fn siegel_lower_bound_check(
    lf: &CompletedL,
    cert: Option<&PositivityCertificate>,
    cfg: &ScanConfig,
) -> Result<SiegelReport> {
    if cert.is_none() {
        return Err(Error::PrerequisiteFailed("positivity".into()));
    }
    let m = lf.thickened_conductor();
    let log_m = m.ln();
    let lo = (1.0 - 1.0 / log_m).max(0.01);
    let scan = scan_real_zeros(lf, &cfg.with_interval(lo, 1.0)?)?;
    if let Some(z) = scan.zeros.first() {
        return Err(Error::PrerequisiteFailed(format!(
            "zero-freeness: real zero near s = {}",
            z.s()
        )));
    }
    let residue = residue_at_one(lf)?.value;
    let threshold = cfg.c / log_m;
    Ok(SiegelReport {
        label: lf.label.clone(),
        m,
        residue,
        c: cfg.c,
        threshold,
        max_c: residue * log_m,
        pass: residue >= threshold,
    })
}

#[cfg(test)]
mod tests;
