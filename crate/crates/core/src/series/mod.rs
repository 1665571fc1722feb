//! Global incomplete L-series: formal products of factors over named forms,
//! assembled prime by prime from unramified local data.

mod graded;
pub mod identity;
pub mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{max_power, primes_up_to, spf_table};
use crate::char_ring::{decompose, plethysm, IrredDecomp, Irrep, Plethysm};
use crate::error::{Error, Result};
use crate::forms::{Form, FormBank, HeckeSource, QuadraticCharacter};
use crate::local_factors::{decomp_power_sums, LocalFactorPoly, Normalization};
use crate::scalar::{Ring, Surd};

/// One factor of a formal product of L-series.
#[derive(Clone, Debug)]
pub enum Factor {
    Zeta,
    Dirichlet(QuadraticCharacter),
    /// The representation `decomp` of the Satake parameters of `forms`
    /// (one form per torus factor).
    Rep {
        forms: Vec<Arc<Form>>,
        decomp: IrredDecomp,
    },
    /// `sym^2` or `Lambda^2` of `inner(form)`, twisted by `det^twist`,
    /// computed from the power sums of `inner` alone.
    Plethysm {
        form: Arc<Form>,
        inner: IrredDecomp,
        kind: Plethysm,
        twist: i32,
    },
    /// Tensor product of two factors: power sums multiply.
    Pairing(Box<Factor>, Box<Factor>),
}

impl Factor {
    pub fn rep(form: &Arc<Form>, decomp: IrredDecomp) -> Factor {
        Factor::Rep {
            forms: vec![form.clone()],
            decomp,
        }
    }

    pub fn sym(form: &Arc<Form>, j: u32) -> Factor {
        if j == 0 {
            return Factor::Zeta;
        }
        Self::rep(form, IrredDecomp::single(j, 0))
    }

    pub fn pairing(a: Factor, b: Factor) -> Factor {
        Factor::Pairing(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Factor::Zeta | Factor::Dirichlet(_) => 1,
            Factor::Rep { decomp, .. } => decomp.dim() as usize,
            Factor::Plethysm { inner, kind, .. } => {
                let d = inner.dim() as usize;
                match kind {
                    Plethysm::Sym2 => d * (d + 1) / 2,
                    Plethysm::Alt2 => d * d.saturating_sub(1) / 2,
                }
            }
            Factor::Pairing(a, b) => a.degree() * b.degree(),
        }
    }

    pub fn forms(&self) -> Vec<Arc<Form>> {
        match self {
            Factor::Zeta | Factor::Dirichlet(_) => Vec::new(),
            Factor::Rep { forms, .. } => forms.clone(),
            Factor::Plethysm { form, .. } => vec![form.clone()],
            Factor::Pairing(a, b) => {
                let mut v = a.forms();
                v.extend(b.forms());
                v
            }
        }
    }

    /// The same factor with every form replaced through `f`.
    pub fn map_forms(&self, f: &impl Fn(&Arc<Form>) -> Result<Arc<Form>>) -> Result<Factor> {
        Ok(match self {
            Factor::Zeta | Factor::Dirichlet(_) => self.clone(),
            Factor::Rep { forms, decomp } => Factor::Rep {
                forms: forms.iter().map(f).collect::<Result<_>>()?,
                decomp: decomp.clone(),
            },
            Factor::Plethysm {
                form,
                inner,
                kind,
                twist,
            } => Factor::Plethysm {
                form: f(form)?,
                inner: inner.clone(),
                kind: *kind,
                twist: *twist,
            },
            Factor::Pairing(a, b) => Factor::pairing(a.map_forms(f)?, b.map_forms(f)?),
        })
    }

    /// Power sums `p_1..p_n` of the Satake parameters of this factor at `p`.
    pub fn power_sums<C: HeckeSource>(&self, p: u64, n: usize, norm: Normalization) -> Result<Vec<C>> {
        match self {
            Factor::Zeta => Ok(vec![C::one(); n]),
            Factor::Dirichlet(chi) => {
                let v = C::from_i64(chi.value(p) as i64);
                let mut out = Vec::with_capacity(n);
                let mut acc = C::one();
                for _ in 0..n {
                    acc = acc * v.clone();
                    out.push(acc.clone());
                }
                Ok(out)
            }
            Factor::Rep { forms, decomp } => {
                let hs = forms
                    .iter()
                    .map(|f| f.hecke::<C>(p)?.normalized(norm))
                    .collect::<Result<Vec<_>>>()?;
                decomp_power_sums(&hs, decomp, n)
            }
            Factor::Plethysm {
                form,
                inner,
                kind,
                twist,
            } => {
                let h = form.hecke::<C>(p)?.normalized(norm)?;
                let q = decomp_power_sums(std::slice::from_ref(&h), inner, 2 * n)?;
                let det_twist = h
                    .scale
                    .powi(*twist as i64)
                    .ok_or_else(|| Error::InvalidHecke("zero scale".into()))?;
                let mut tw = C::one();
                let mut out = Vec::with_capacity(n);
                for m in 1..=n {
                    tw = tw * det_twist.clone();
                    let sq = q[m - 1].clone() * q[m - 1].clone();
                    let v = match kind {
                        Plethysm::Sym2 => sq + q[2 * m - 1].clone(),
                        Plethysm::Alt2 => sq - q[2 * m - 1].clone(),
                    };
                    out.push(v.div_int(2) * tw.clone());
                }
                Ok(out)
            }
            Factor::Pairing(a, b) => {
                let x = a.power_sums::<C>(p, n, norm)?;
                let y = b.power_sums::<C>(p, n, norm)?;
                Ok(x.into_iter().zip(y).map(|(u, v)| u * v).collect())
            }
        }
    }

    /// Irreducible constituents under the unitary normalization, assuming
    /// distinct forms are not twist-equivalent and have no complex
    /// multiplication. Determinant twists are trivial there (level one).
    pub fn atoms(&self) -> Result<BTreeMap<Atom, u32>> {
        let mut out = BTreeMap::new();
        match self {
            Factor::Zeta => {
                out.insert(Atom::trivial(), 1);
            }
            Factor::Dirichlet(chi) => {
                out.insert(Atom::chi(chi.discriminant()), 1);
            }
            Factor::Rep { forms, decomp } => {
                for part in decomp.parts() {
                    let mut syms = vec![(forms[0].name.clone(), part.first.j)];
                    if let Some(s) = part.second {
                        syms.push((forms[1].name.clone(), s.j));
                    }
                    *out.entry(Atom::from_syms(syms)).or_insert(0) += part.mult;
                }
            }
            Factor::Plethysm {
                form, inner, kind, ..
            } => {
                let d = decompose(&plethysm(&inner.to_char(), *kind)?)?;
                return Factor::rep(form, d).atoms();
            }
            Factor::Pairing(a, b) => {
                let x = a.atoms()?;
                let y = b.atoms()?;
                for (ax, mx) in &x {
                    for (ay, my) in &y {
                        for (atom, m) in ax.tensor(ay) {
                            *out.entry(atom).or_insert(0) += m * mx * my;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Order of the pole at `s = 1` (multiplicity of the trivial constituent).
    pub fn pole_order(&self) -> Result<u32> {
        Ok(self.atoms()?.get(&Atom::trivial()).copied().unwrap_or(0))
    }
}

fn sym_label(form: &str, r: Irrep) -> String {
    let base = match r.j {
        0 => "1".to_string(),
        1 => form.to_string(),
        j => format!("sym{j}({form})"),
    };
    if r.k == 0 {
        base
    } else if r.j == 0 {
        format!("det^{}({form})", r.k)
    } else {
        format!("{base}.det^{}", r.k)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Zeta => write!(f, "zeta"),
            Factor::Dirichlet(chi) => write!(f, "chi({})", chi.discriminant()),
            Factor::Rep { forms, decomp } => {
                let parts: Vec<String> = decomp
                    .parts()
                    .iter()
                    .map(|part| {
                        let mut s = sym_label(&forms[0].name, part.first);
                        if let Some(r) = part.second {
                            s = format!("{s} x {}", sym_label(&forms[1].name, r));
                        }
                        if part.mult == 1 {
                            s
                        } else {
                            format!("{}*{s}", part.mult)
                        }
                    })
                    .collect();
                if parts.len() == 1 && decomp.parts()[0].second.is_none() {
                    write!(f, "{}", parts[0])
                } else {
                    write!(f, "({})", parts.join(" + "))
                }
            }
            Factor::Plethysm {
                form,
                inner,
                kind,
                twist,
            } => {
                let op = match kind {
                    Plethysm::Sym2 => "sym2",
                    Plethysm::Alt2 => "alt2",
                };
                let inner = Factor::rep(form, inner.clone());
                write!(f, "{op}({inner})")?;
                if *twist != 0 {
                    write!(f, ".det^{twist}")?;
                }
                Ok(())
            }
            Factor::Pairing(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

/// An irreducible constituent: a product of a quadratic character (given by
/// its discriminant, 1 when trivial) and `sym^j` of distinct forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub chi: i64,
    pub syms: Vec<(String, u32)>,
}

impl Atom {
    pub fn trivial() -> Atom {
        Atom {
            chi: 1,
            syms: Vec::new(),
        }
    }

    pub fn chi(d: i64) -> Atom {
        Atom {
            chi: d,
            syms: Vec::new(),
        }
    }

    fn from_syms(syms: Vec<(String, u32)>) -> Atom {
        let mut syms: Vec<(String, u32)> = syms.into_iter().filter(|(_, j)| *j > 0).collect();
        syms.sort();
        Atom { chi: 1, syms }
    }

    pub fn is_trivial(&self) -> bool {
        self.chi == 1 && self.syms.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.syms.iter().map(|(_, j)| *j as u64 + 1).product()
    }

    /// Tensor product, expanded by Clebsch-Gordan on shared forms.
    fn tensor(&self, o: &Atom) -> Vec<(Atom, u32)> {
        let chi = match (self.chi, o.chi) {
            (1, c) | (c, 1) => c,
            (a, b) if a == b => 1,
            // a product of two distinct quadratic characters is not tracked
            (a, b) => a * b,
        };
        let mut acc: Vec<(Vec<(String, u32)>, u32)> = vec![(self.syms.clone(), 1)];
        for (name, j) in &o.syms {
            let mut next = Vec::new();
            for (syms, m) in acc {
                match syms.iter().position(|(n, _)| n == name) {
                    None => {
                        let mut s = syms.clone();
                        s.push((name.clone(), *j));
                        next.push((s, m));
                    }
                    Some(i) => {
                        let (a, b) = (syms[i].1.max(*j), syms[i].1.min(*j));
                        for t in 0..=b {
                            let mut s = syms.clone();
                            s[i].1 = a + b - 2 * t;
                            next.push((s, m));
                        }
                    }
                }
            }
            acc = next;
        }
        let mut merged: BTreeMap<Atom, u32> = BTreeMap::new();
        for (syms, m) in acc {
            let mut a = Atom::from_syms(syms);
            a.chi = chi;
            *merged.entry(a).or_insert(0) += m;
        }
        merged.into_iter().collect()
    }

    /// The factor computing this constituent's L-series.
    pub fn to_factor(&self, forms: &[Arc<Form>]) -> Result<Factor> {
        let find = |name: &str| {
            forms
                .iter()
                .find(|f| f.name == name)
                .cloned()
                .ok_or_else(|| Error::Config(format!("unknown form {name}")))
        };
        match (self.chi, self.syms.as_slice()) {
            (1, []) => Ok(Factor::Zeta),
            (d, []) => Ok(Factor::Dirichlet(QuadraticCharacter::new(d)?)),
            (1, [(f, j)]) => Ok(Factor::sym(&find(f)?, *j)),
            (1, [(f, j), (g, k)]) => Ok(Factor::Rep {
                forms: vec![find(f)?, find(g)?],
                decomp: IrredDecomp::pair(Irrep::new(*j, 0), Irrep::new(*k, 0)),
            }),
            _ => Err(Error::Config(format!(
                "constituent {self:?} has no direct evaluation"
            ))),
        }
    }
}

/// A formal product of L-series over good primes.
#[derive(Clone, Debug)]
pub struct LSeriesSpec {
    pub name: String,
    pub factors: Vec<(Factor, u32)>,
    pub normalization: Normalization,
    /// Primes whose Euler factor is dropped.
    pub excluded: BTreeSet<u64>,
    pub conductor: u64,
    pub root_number: Option<f64>,
    pub self_dual: bool,
    /// Declared order of the pole at `s = 1`.
    pub pole_order: u32,
}

impl LSeriesSpec {
    /// Builds a spec, deriving excluded primes (divisors of form levels),
    /// conductor, self-duality and pole order. Level-one forms have
    /// conductor 1; a quadratic character contributes `|D|`.
    pub fn new(name: &str, factors: Vec<(Factor, u32)>, normalization: Normalization) -> Result<Self> {
        let mut excluded = BTreeSet::new();
        let mut conductor: u64 = 1;
        for (f, e) in &factors {
            for form in f.forms() {
                for (p, _) in crate::arith::factorize(form.level) {
                    excluded.insert(p);
                }
                if form.level > 1 {
                    conductor = conductor.saturating_mul(form.level.saturating_pow(f.degree() as u32));
                }
            }
            if let Factor::Dirichlet(chi) = f {
                conductor = conductor.saturating_mul(chi.conductor().saturating_pow(*e));
            }
        }
        let mut spec = LSeriesSpec {
            name: name.to_string(),
            factors,
            normalization,
            excluded,
            conductor,
            root_number: None,
            self_dual: normalization == Normalization::Unitary,
            pole_order: 0,
        };
        spec.pole_order = spec.derived_pole_order()?;
        Ok(spec)
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, e)| f.degree() * *e as usize).sum()
    }

    /// Degrees of the factors, repeated by exponent, in order.
    pub fn degree_list(&self) -> Vec<usize> {
        self.factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.degree(), *e as usize))
            .collect()
    }

    pub fn forms(&self) -> Vec<Arc<Form>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (f, _) in &self.factors {
            for form in f.forms() {
                if seen.insert(form.name.clone()) {
                    out.push(form);
                }
            }
        }
        out
    }

    /// The same spec with its forms fetched again from `bank` with data up
    /// to `pmax`.
    pub fn refreshed(&self, bank: &FormBank, pmax: u64) -> Result<LSeriesSpec> {
        let get = |g: &Arc<Form>| bank.get(&g.name, pmax);
        let factors = self
            .factors
            .iter()
            .map(|(f, e)| Ok((f.map_forms(&get)?, *e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LSeriesSpec {
            factors,
            ..self.clone()
        })
    }

    /// Whether every form has exact Hecke data.
    pub fn is_exact(&self) -> bool {
        self.forms().iter().all(|f| f.is_exact())
    }

    pub fn derived_pole_order(&self) -> Result<u32> {
        let mut r = 0;
        for (f, e) in &self.factors {
            r += f.pole_order()? * e;
        }
        Ok(r)
    }

    /// Constituents of the whole product with multiplicities.
    pub fn atoms(&self) -> Result<BTreeMap<Atom, u32>> {
        let mut out = BTreeMap::new();
        for (f, e) in &self.factors {
            for (a, m) in f.atoms()? {
                *out.entry(a).or_insert(0) += m * e;
            }
        }
        Ok(out)
    }

    /// Largest prime up to which every form has data.
    pub fn prime_bound(&self) -> u64 {
        self.forms()
            .iter()
            .map(|f| f.prime_bound())
            .min()
            .unwrap_or(u64::MAX)
    }

    /// Total power sums `p_1..p_n` at `p` (zero at excluded primes).
    pub fn power_sums<C: HeckeSource>(&self, p: u64, n: usize) -> Result<Vec<C>> {
        let mut acc = vec![C::zero(); n];
        if self.excluded.contains(&p) {
            return Ok(acc);
        }
        if C::from_surd(Surd::one()).is_some() && self.is_exact() {
            return Ok(self
                .graded_power_sums(p, n)?
                .iter()
                .enumerate()
                .map(|(i, g)| C::from_surd(g.to_surd(p, i + 1)).expect("exact type"))
                .collect());
        }
        for (f, e) in &self.factors {
            let mult = C::from_i64(*e as i64);
            for (a, v) in acc.iter_mut().zip(f.power_sums::<C>(p, n, self.normalization)?) {
                *a = a.clone() + v * mult.clone();
            }
        }
        Ok(acc)
    }

    /// Exact power sums kept as graded integers (exact forms only).
    pub(crate) fn graded_power_sums(&self, p: u64, n: usize) -> Result<Vec<graded::Graded>> {
        let mut total = vec![graded::Graded::default(); n];
        if self.excluded.contains(&p) {
            return Ok(total);
        }
        for (f, e) in &self.factors {
            let sums = graded::factor_sums(f, p, n, self.normalization)?;
            for (t, v) in total.iter_mut().zip(&sums) {
                t.add_scaled(v, *e as i64);
            }
        }
        Ok(total)
    }

    /// The inverse local factor at `p`, of full degree (the constant 1 at
    /// excluded primes).
    pub fn local_factor<C: HeckeSource>(&self, p: u64) -> Result<LocalFactorPoly<C>> {
        if self.excluded.contains(&p) {
            return Ok(LocalFactorPoly::one(p));
        }
        let d = self.degree();
        let sums = self.power_sums::<C>(p, d)?;
        Ok(LocalFactorPoly::from_power_sums(p, &sums, d))
    }

    /// `h_0..h_e` with `sum h_k X^k` the local Euler factor itself.
    fn euler_series<C: HeckeSource>(&self, p: u64, e: usize) -> Result<Vec<C>> {
        let ps = self.power_sums::<C>(p, e)?;
        let mut h = vec![C::one()];
        for k in 1..=e {
            let mut acc = C::zero();
            for i in 1..=k {
                acc = acc + ps[i - 1].clone() * h[k - i].clone();
            }
            h.push(acc.div_int(k as i64));
        }
        Ok(h)
    }
}

impl fmt::Display for LSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(fac, e)| {
                let s = format!("L({fac})");
                if *e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Arithmetic used when expanding coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithMode {
    Exact,
    Float,
}

/// Dirichlet coefficients `a_1..a_X`; index 0 is unused.
#[derive(Clone, Debug, PartialEq)]
pub enum DirichletCoeffs {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl DirichletCoeffs {
    pub fn cutoff(&self) -> usize {
        match self {
            DirichletCoeffs::Exact(v) => v.len() - 1,
            DirichletCoeffs::Float(v) => v.len() - 1,
        }
    }

    pub fn mode(&self) -> ArithMode {
        match self {
            DirichletCoeffs::Exact(_) => ArithMode::Exact,
            DirichletCoeffs::Float(_) => ArithMode::Float,
        }
    }

    pub fn get_f64(&self, n: usize) -> f64 {
        match self {
            DirichletCoeffs::Exact(v) => v[n].to_f64().unwrap_or(f64::NAN),
            DirichletCoeffs::Float(v) => v[n],
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..=self.cutoff()).map(|n| if n == 0 { 0.0 } else { self.get_f64(n) }).collect()
    }

    /// Text form of `a_n` (exact rationals stay exact).
    pub fn display(&self, n: usize) -> String {
        match self {
            DirichletCoeffs::Exact(v) => v[n].to_string(),
            DirichletCoeffs::Float(v) => format!("{:.12e}", v[n]),
        }
    }
}

fn combine_multiplicative<T: Clone + Send + Sync>(
    x: usize,
    one: T,
    zero: T,
    prime_power: &BTreeMap<u64, Vec<T>>,
    mul: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let mut a = vec![zero; x + 1];
    if x >= 1 {
        a[1] = one;
    }
    for (p, h) in prime_power {
        let mut q = *p as usize;
        for hk in h.iter().skip(1) {
            a[q] = hk.clone();
            match q.checked_mul(*p as usize) {
                Some(n) if n <= x => q = n,
                _ => break,
            }
        }
    }
    let spf = spf_table(x);
    for n in 2..=x {
        let p = spf[n] as usize;
        let mut q = p;
        while n % (q * p) == 0 {
            q *= p;
        }
        if q != n {
            a[n] = mul(&a[q], &a[n / q]);
        }
    }
    a
}

fn check_prime_data(spec: &LSeriesSpec, x: usize) -> Result<()> {
    let bound = spec.prime_bound();
    if (x as u64) > bound {
        let missing: Vec<u64> = primes_up_to(x)
            .into_iter()
            .filter(|p| *p > bound && !spec.excluded.contains(p))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingPrime(missing));
        }
    }
    Ok(())
}

/// Dirichlet coefficients of the spec up to `x`, multiplying the local Euler
/// series prime by prime. Exact mode needs every local coefficient to be
/// rational.
pub fn expand_coeffs(spec: &LSeriesSpec, x: usize, mode: ArithMode) -> Result<DirichletCoeffs> {
    let x = x.max(1);
    check_prime_data(spec, x)?;
    let primes = primes_up_to(x);
    match mode {
        ArithMode::Exact => {
            if !spec.is_exact() {
                return Err(Error::OverflowPolicy(format!(
                    "{} has floating-point Hecke data",
                    spec.name
                )));
            }
            let local: Vec<(u64, Vec<BigRational>)> = primes
                .par_iter()
                .map(|&p| {
                    let e = max_power(p, x as u64) as usize;
                    let h = spec.euler_series::<Surd>(p, e)?;
                    let q = h
                        .into_iter()
                        .map(|v| v.as_rational().cloned().ok_or(Error::IrrationalCoefficients(p)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((p, q))
                })
                .collect::<Result<Vec<_>>>()?;
            let map: BTreeMap<u64, Vec<BigRational>> = local.into_iter().collect();
            let one = BigRational::from_integer(1.into());
            Ok(DirichletCoeffs::Exact(combine_multiplicative(
                x,
                one,
                BigRational::zero(),
                &map,
                |a, b| a * b,
            )))
        }
        ArithMode::Float => {
            let local: Vec<(u64, Vec<f64>)> = primes
                .par_iter()
                .map(|&p| {
                    let e = max_power(p, x as u64) as usize;
                    Ok((p, spec.euler_series::<f64>(p, e)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let map: BTreeMap<u64, Vec<f64>> = local.into_iter().collect();
            Ok(DirichletCoeffs::Float(combine_multiplicative(
                x,
                1.0,
                0.0,
                &map,
                |a, b| a * b,
            )))
        }
    }
}

/// Coefficients of `-L'/L`: at `n = p^m` the weight is `p_m log p`, where
/// `p_m` is the `m`-th power sum of the Satake parameters at `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogDerivCoeffs {
    /// `p_m` at `n = p^m`, zero elsewhere (exact where possible).
    pub power_sums: DirichletCoeffs,
}

impl LogDerivCoeffs {
    /// The weights `Lambda_L(n)` themselves.
    pub fn values(&self) -> Vec<f64> {
        let x = self.power_sums.cutoff();
        let spf = spf_table(x);
        (0..=x)
            .map(|n| {
                if n < 2 {
                    return 0.0;
                }
                let v = self.power_sums.get_f64(n);
                if v == 0.0 {
                    0.0
                } else {
                    v * (spf[n] as f64).ln()
                }
            })
            .collect()
    }
}

pub fn log_deriv_coeffs(spec: &LSeriesSpec, x: usize, mode: ArithMode) -> Result<LogDerivCoeffs> {
    let x = x.max(1);
    check_prime_data(spec, x)?;
    let primes = primes_up_to(x);
    let power_sums = match mode {
        ArithMode::Exact => {
            let local: Vec<(u64, Vec<BigRational>)> = primes
                .par_iter()
                .map(|&p| {
                    let e = max_power(p, x as u64) as usize;
                    let ps = spec.power_sums::<Surd>(p, e)?;
                    let q = ps
                        .into_iter()
                        .map(|v| v.as_rational().cloned().ok_or(Error::IrrationalCoefficients(p)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((p, q))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut v = vec![BigRational::zero(); x + 1];
            for (p, ps) in local {
                let mut q = p as usize;
                for s in ps {
                    v[q] = s;
                    q = q.saturating_mul(p as usize);
                }
            }
            DirichletCoeffs::Exact(v)
        }
        ArithMode::Float => {
            let local: Vec<(u64, Vec<f64>)> = primes
                .par_iter()
                .map(|&p| {
                    let e = max_power(p, x as u64) as usize;
                    Ok((p, spec.power_sums::<f64>(p, e)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut v = vec![0.0; x + 1];
            for (p, ps) in local {
                let mut q = p as usize;
                for s in ps {
                    v[q] = s;
                    q = q.saturating_mul(p as usize);
                }
            }
            DirichletCoeffs::Float(v)
        }
    };
    Ok(LogDerivCoeffs { power_sums })
}

/// Outcome of a coefficient sign scan.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub label: String,
    pub checked: usize,
    pub mode: ArithMode,
    pub first_violation: Option<usize>,
}

/// Proof that a named series passed the positivity scan; required by the
/// zero-counting and residue lemmas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub label: String,
    pub checked: usize,
}

impl PositivityReport {
    pub fn is_positive(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn certificate(&self) -> Option<PositivityCertificate> {
        self.is_positive().then(|| PositivityCertificate {
            label: self.label.clone(),
            checked: self.checked,
        })
    }
}

impl fmt::Display for PositivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_violation {
            None => write!(f, "NONE"),
            Some(n) => write!(f, "{n}"),
        }
    }
}

/// First index `n >= 1` with `a_n < 0` (exactly, or below `-1e-9` for
/// floats).
pub fn positivity_report(label: &str, c: &DirichletCoeffs) -> PositivityReport {
    let first_violation = match c {
        DirichletCoeffs::Exact(v) => (1..v.len()).find(|&n| v[n].is_negative()),
        DirichletCoeffs::Float(v) => (1..v.len()).find(|&n| v[n] < -crate::scalar::FLOAT_COEFF_TOL),
    };
    PositivityReport {
        label: label.to_string(),
        checked: c.cutoff(),
        mode: c.mode(),
        first_violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormBank;

    fn delta() -> Arc<Form> {
        FormBank::new().get("delta", 200).unwrap()
    }

    #[test]
    fn zeta_coefficients_are_one() {
        let s = LSeriesSpec::new("zeta", vec![(Factor::Zeta, 1)], Normalization::Unitary).unwrap();
        let c = expand_coeffs(&s, 50, ArithMode::Exact).unwrap();
        assert!((1..=50).all(|n| c.get_f64(n) == 1.0));
        assert_eq!(s.pole_order, 1);
    }

    #[test]
    fn delta_itself_is_not_positive() {
        let s = LSeriesSpec::new(
            "delta",
            vec![(Factor::sym(&delta(), 1), 1)],
            Normalization::Arithmetic,
        )
        .unwrap();
        let c = expand_coeffs(&s, 30, ArithMode::Exact).unwrap();
        assert_eq!(c.display(2), "-24");
        assert_eq!(c.display(6), "-6048");
        assert_eq!(positivity_report("delta", &c).first_violation, Some(2));
    }

    #[test]
    fn pole_orders_from_constituents() {
        let d = delta();
        let pi = Factor::rep(
            &d,
            IrredDecomp::from_parts(
                1,
                [0, 2, 4].map(|j| crate::char_ring::IrredPart {
                    first: Irrep::new(j, 0),
                    second: None,
                    mult: 1,
                }),
            )
            .unwrap(),
        );
        let pp = Factor::pairing(pi.clone(), pi);
        assert_eq!(pp.pole_order().unwrap(), 3);
        assert_eq!(pp.degree(), 81);
        let s22 = Factor::pairing(Factor::sym(&d, 2), Factor::sym(&d, 2));
        assert_eq!(s22.pole_order().unwrap(), 1);
        let s42 = Factor::pairing(Factor::sym(&d, 4), Factor::sym(&d, 2));
        assert_eq!(s42.pole_order().unwrap(), 0);
    }
}
