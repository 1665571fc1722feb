//! Gamma factors, conductors and the archimedean constants.
//!
//! Shifts `b` always mean factors `Gamma_R(s + b)` with
//! `Gamma_R(s) = pi^(-s/2) Gamma(s/2)`. A factor written `Gamma((s + a)/2)`
//! is `Gamma_R(s + a)` up to `pi^(-(s+a)/2)`, and `Gamma_C(s + mu)` is
//! `Gamma_R(s + mu) Gamma_R(s + mu + 1)` up to a constant.

pub mod gamma;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::char_ring::{decompose, plethysm, IrredDecomp, Irrep};
use crate::error::{Error, Result};
use crate::forms::{Form, FormKind};
use crate::series::{Factor, LSeriesSpec};

pub use gamma::{ln_gamma, ln_gamma_r};

const CONJ_TOL: f64 = 1e-12;

/// Parameters `b_j` of `prod Gamma_R(s + b_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityType {
    shifts: Vec<Complex64>,
    self_dual: bool,
}

fn conj_closed(shifts: &[Complex64]) -> bool {
    let mut left: Vec<Complex64> = shifts.to_vec();
    for b in shifts {
        let c = b.conj();
        match left.iter().position(|x| (x - c).norm() <= CONJ_TOL * (1.0 + c.norm())) {
            Some(i) => {
                left.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

impl InfinityType {
    /// With `self_dual` set, the shifts must be closed under conjugation.
    pub fn new(mut shifts: Vec<Complex64>, self_dual: bool) -> Result<Self> {
        if self_dual && !conj_closed(&shifts) {
            return Err(Error::InvariantError(
                "self-dual infinity type is not closed under conjugation".into(),
            ));
        }
        shifts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(InfinityType { shifts, self_dual })
    }

    pub fn shifts(&self) -> &[Complex64] {
        &self.shifts
    }

    pub fn degree(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    /// `sum |b_j|`.
    pub fn lambda(&self) -> f64 {
        self.shifts.iter().map(|b| b.norm()).sum()
    }

    pub fn union(&self, o: &InfinityType) -> InfinityType {
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&o.shifts);
        InfinityType::new(shifts, self.self_dual && o.self_dual).expect("unions stay closed")
    }

    /// `log prod Gamma_R(s + b_j)`.
    pub fn ln_gamma_factor(&self, s: Complex64) -> Complex64 {
        self.shifts.iter().map(|b| ln_gamma_r(s + b)).sum()
    }
}

impl std::fmt::Display for InfinityType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .shifts
            .iter()
            .map(|b| match (b.re, b.im) {
                (r, i) if i == 0.0 => format!("{r}"),
                (r, i) if r == 0.0 => format!("{i}i"),
                (r, i) if i < 0.0 => format!("{r}-{}i", -i),
                (r, i) => format!("{r}+{i}i"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn infinity_type_holomorphic(k: u32) -> Result<InfinityType> {
    if k == 0 {
        return Err(Error::Config("weight must be at least 1".into()));
    }
    let mu = (k as f64 - 1.0) / 2.0;
    InfinityType::new(vec![Complex64::new(mu, 0.0), Complex64::new(mu + 1.0, 0.0)], true)
}

pub fn infinity_type_maass(t: f64, delta: u8) -> InfinityType {
    let d = f64::from(delta);
    InfinityType::new(vec![Complex64::new(d, t), Complex64::new(d, -t)], true)
        .expect("conjugate pair")
}

/// Irreducible pieces of archimedean Langlands parameters: the
/// two-dimensional `D_mu` (`twice_mu > 0`) giving `Gamma_C(s + mu)`, and the
/// characters `sgn^eps`. Each carries a twist `|.|^(i t)` with `t` an
/// integer combination of the spectral parameters of the base forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Piece {
    Discrete { twice_mu: u32, t: Vec<i32> },
    Char { eps: u8, t: Vec<i32> },
}

fn add_t(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A virtual representation of the Weil group of the reals.
#[derive(Clone, Debug, PartialEq)]
struct WeilRep {
    pieces: BTreeMap<Piece, i64>,
    slots: usize,
}

impl WeilRep {
    fn zero(slots: usize) -> Self {
        WeilRep {
            pieces: BTreeMap::new(),
            slots,
        }
    }

    fn trivial(slots: usize) -> Self {
        Self::char(0, vec![0; slots])
    }

    fn char(eps: u8, t: Vec<i32>) -> Self {
        let slots = t.len();
        let mut r = Self::zero(slots);
        r.add_piece(Piece::Char { eps: eps % 2, t }, 1);
        r
    }

    fn add_piece(&mut self, p: Piece, m: i64) {
        let p = match p {
            Piece::Discrete { twice_mu: 0, t } => {
                self.add_piece(Piece::Char { eps: 0, t: t.clone() }, m);
                Piece::Char { eps: 1, t }
            }
            p => p,
        };
        let slot = self.pieces.entry(p.clone()).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.pieces.remove(&p);
        }
    }

    fn plus(&self, o: &WeilRep, k: i64) -> WeilRep {
        let mut r = self.clone();
        for (p, m) in &o.pieces {
            r.add_piece(p.clone(), m * k);
        }
        r
    }

    fn tensor(&self, o: &WeilRep) -> WeilRep {
        let mut r = WeilRep::zero(self.slots);
        for (a, ma) in &self.pieces {
            for (b, mb) in &o.pieces {
                let m = ma * mb;
                match (a, b) {
                    (Piece::Char { eps: e, t: s }, Piece::Char { eps: f, t: u }) => {
                        r.add_piece(Piece::Char { eps: (e + f) % 2, t: add_t(s, u) }, m)
                    }
                    (Piece::Char { t: s, .. }, Piece::Discrete { twice_mu, t: u })
                    | (Piece::Discrete { twice_mu, t: u }, Piece::Char { t: s, .. }) => r.add_piece(
                        Piece::Discrete {
                            twice_mu: *twice_mu,
                            t: add_t(s, u),
                        },
                        m,
                    ),
                    (Piece::Discrete { twice_mu: x, t: s }, Piece::Discrete { twice_mu: y, t: u }) => {
                        let t = add_t(s, u);
                        r.add_piece(Piece::Discrete { twice_mu: x + y, t: t.clone() }, m);
                        r.add_piece(Piece::Discrete { twice_mu: x.abs_diff(*y), t }, m);
                    }
                }
            }
        }
        r
    }

    fn det(&self) -> Result<WeilRep> {
        let mut eps = 0u32;
        let mut t = vec![0; self.slots];
        for (p, m) in &self.pieces {
            if *m < 0 {
                return Err(Error::InvariantError("determinant of a virtual parameter".into()));
            }
            let (e, s, k) = match p {
                Piece::Char { eps, t } => (*eps as u32, t, 1),
                Piece::Discrete { twice_mu, t } => (twice_mu + 1, t, 2),
            };
            for _ in 0..*m {
                eps += e;
                for (a, b) in t.iter_mut().zip(s) {
                    *a += k * b;
                }
            }
        }
        Ok(WeilRep::char((eps % 2) as u8, t))
    }

    fn dual(&self) -> WeilRep {
        let mut r = WeilRep::zero(self.slots);
        for (p, m) in &self.pieces {
            let p = match p {
                Piece::Char { eps, t } => Piece::Char {
                    eps: *eps,
                    t: t.iter().map(|x| -x).collect(),
                },
                Piece::Discrete { twice_mu, t } => Piece::Discrete {
                    twice_mu: *twice_mu,
                    t: t.iter().map(|x| -x).collect(),
                },
            };
            r.add_piece(p, *m);
        }
        r
    }

    fn power(&self, k: i32) -> WeilRep {
        let base = if k < 0 { self.dual() } else { self.clone() };
        (0..k.unsigned_abs()).fold(WeilRep::trivial(self.slots), |acc, _| acc.tensor(&base))
    }

    /// `sym^j(V) (x) det^k` for a two-dimensional `V`.
    fn irrep(&self, r: Irrep) -> Result<WeilRep> {
        let det = self.det()?;
        let mut prev = WeilRep::trivial(self.slots);
        let mut cur = if r.j == 0 { prev.clone() } else { self.clone() };
        for _ in 1..r.j {
            let next = self.tensor(&cur).plus(&det.tensor(&prev), -1);
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(cur.tensor(&det.power(r.k)))
    }

    fn dim(&self) -> i64 {
        self.pieces
            .iter()
            .map(|(p, m)| match p {
                Piece::Char { .. } => *m,
                Piece::Discrete { .. } => 2 * m,
            })
            .sum()
    }

    fn infinity_type(&self, ts: &[f64], self_dual: bool) -> Result<InfinityType> {
        let mut shifts = Vec::new();
        let tval = |t: &[i32]| t.iter().zip(ts).map(|(k, x)| *k as f64 * x).sum::<f64>();
        for (p, m) in &self.pieces {
            if *m < 0 {
                return Err(Error::InvariantError("virtual archimedean parameter".into()));
            }
            for _ in 0..*m {
                match p {
                    Piece::Char { eps, t } => shifts.push(Complex64::new(*eps as f64, tval(t))),
                    Piece::Discrete { twice_mu, t } => {
                        let mu = *twice_mu as f64 / 2.0;
                        shifts.push(Complex64::new(mu, tval(t)));
                        shifts.push(Complex64::new(mu + 1.0, tval(t)));
                    }
                }
            }
        }
        InfinityType::new(shifts, self_dual)
    }

    /// `prod eps_inf` as a power of `i`.
    fn epsilon_exponent(&self) -> i64 {
        self.pieces
            .iter()
            .map(|(p, m)| {
                m * match p {
                    Piece::Char { eps, .. } => *eps as i64,
                    Piece::Discrete { twice_mu, .. } => *twice_mu as i64 + 1,
                }
            })
            .sum()
    }
}

/// The archimedean data of a GL(2) form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArchBase {
    Holomorphic { weight: u32 },
    Maass { t: f64, parity: u8 },
}

impl ArchBase {
    pub fn of(form: &Form) -> ArchBase {
        match form.kind {
            FormKind::Holomorphic { weight } => ArchBase::Holomorphic { weight },
            FormKind::Maass { t, parity } => ArchBase::Maass { t, parity },
        }
    }

    pub fn infinity_type(&self) -> Result<InfinityType> {
        match *self {
            ArchBase::Holomorphic { weight } => infinity_type_holomorphic(weight),
            ArchBase::Maass { t, parity } => Ok(infinity_type_maass(t, parity)),
        }
    }

    fn spectral(&self) -> f64 {
        match self {
            ArchBase::Holomorphic { .. } => 0.0,
            ArchBase::Maass { t, .. } => *t,
        }
    }

    fn weil(&self, slot: usize, slots: usize) -> Result<WeilRep> {
        let mut t = vec![0; slots];
        t[slot] = 1;
        Ok(match *self {
            ArchBase::Holomorphic { weight } if weight >= 1 => {
                let mut r = WeilRep::zero(slots);
                r.add_piece(
                    Piece::Discrete {
                        twice_mu: weight - 1,
                        t,
                    },
                    1,
                );
                r
            }
            ArchBase::Holomorphic { .. } => {
                return Err(Error::Config("weight must be at least 1".into()))
            }
            ArchBase::Maass { parity, .. } => {
                let neg = t.iter().map(|x| -x).collect();
                WeilRep::char(parity, t).plus(&WeilRep::char(parity, neg), 1)
            }
        })
    }
}

fn decomp_weil(bases: &[WeilRep], d: &IrredDecomp) -> Result<WeilRep> {
    let slots = bases.first().map_or(0, |b| b.slots);
    let mut out = WeilRep::zero(slots);
    for part in d.parts() {
        let need = 1 + part.second.is_some() as usize;
        if bases.len() < need {
            return Err(Error::HeckeArity {
                expected: need,
                got: bases.len(),
            });
        }
        let mut r = bases[0].irrep(part.first)?;
        if let Some(s) = part.second {
            r = r.tensor(&bases[1].irrep(s)?);
        }
        out = out.plus(&r, part.mult as i64);
    }
    Ok(out)
}

/// Infinity type of the representation `d` of the parameters of `bases`
/// (one per torus factor), computed on archimedean Langlands parameters.
pub fn functorial_infinity(bases: &[ArchBase], d: &IrredDecomp) -> Result<InfinityType> {
    let trivial = d
        .parts()
        .iter()
        .all(|p| p.first == Irrep::UNIT && p.second.is_none_or(|s| s == Irrep::UNIT));
    if bases.is_empty() && trivial {
        return InfinityType::new(vec![Complex64::new(0.0, 0.0); d.dim() as usize], true);
    }
    if bases.len() != d.factors() as usize {
        return Err(Error::HeckeArity {
            expected: d.factors() as usize,
            got: bases.len(),
        });
    }
    let n = bases.len().max(1);
    let weil = bases
        .iter()
        .enumerate()
        .map(|(i, b)| b.weil(i, n))
        .collect::<Result<Vec<_>>>()?;
    let w = decomp_weil(&weil, d)?;
    let ts: Vec<f64> = bases.iter().map(|b| b.spectral()).collect();
    // every construction on these bases is symmetric under t -> -t
    w.infinity_type(&ts, true)
}

/// Archimedean data of a whole spec, with one spectral slot per distinct form.
struct SpecArch {
    forms: Vec<String>,
    bases: Vec<WeilRep>,
    ts: Vec<f64>,
}

impl SpecArch {
    fn new(spec: &LSeriesSpec) -> Result<Self> {
        let mut forms = Vec::new();
        let mut arch = Vec::new();
        for f in spec.forms() {
            if !forms.contains(&f.name) {
                forms.push(f.name.clone());
                arch.push(ArchBase::of(&f));
            }
        }
        let slots = forms.len().max(1);
        let bases = arch
            .iter()
            .enumerate()
            .map(|(i, b)| b.weil(i, slots))
            .collect::<Result<Vec<_>>>()?;
        let mut ts: Vec<f64> = arch.iter().map(|b| b.spectral()).collect();
        ts.resize(slots, 0.0);
        Ok(SpecArch { forms, bases, ts })
    }

    fn slots(&self) -> usize {
        self.ts.len()
    }

    fn base(&self, form: &Form) -> WeilRep {
        let i = self.forms.iter().position(|n| *n == form.name).expect("form registered");
        self.bases[i].clone()
    }

    fn factor(&self, f: &Factor) -> Result<WeilRep> {
        Ok(match f {
            Factor::Zeta => WeilRep::trivial(self.slots()),
            Factor::Dirichlet(chi) => WeilRep::char(chi.parity(), vec![0; self.slots()]),
            Factor::Rep { forms, decomp } => {
                let bases: Vec<WeilRep> = forms.iter().map(|g| self.base(g)).collect();
                decomp_weil(&bases, decomp)?
            }
            Factor::Plethysm {
                form,
                inner,
                kind,
                twist,
            } => {
                let d = decompose(&plethysm(&inner.to_char(), *kind)?)?;
                let base = self.base(form);
                decomp_weil(std::slice::from_ref(&base), &d)?.tensor(&base.det()?.power(*twist))
            }
            Factor::Pairing(a, b) => self.factor(a)?.tensor(&self.factor(b)?),
        })
    }

    fn spec(&self, spec: &LSeriesSpec) -> Result<WeilRep> {
        let mut out = WeilRep::zero(self.slots());
        for (f, e) in &spec.factors {
            out = out.plus(&self.factor(f)?, *e as i64);
        }
        Ok(out)
    }
}

/// Infinity type of a spec in the unitary normalization.
pub fn spec_infinity(spec: &LSeriesSpec) -> Result<InfinityType> {
    let sa = SpecArch::new(spec)?;
    let w = sa.spec(spec)?;
    debug_assert_eq!(w.dim() as usize, spec.degree());
    w.infinity_type(&sa.ts, spec.self_dual)
}

fn has_dirichlet(f: &Factor) -> bool {
    match f {
        Factor::Dirichlet(_) => true,
        Factor::Pairing(a, b) => has_dirichlet(a) || has_dirichlet(b),
        _ => false,
    }
}

/// Root number of a spec built from level-one forms and standalone
/// quadratic characters: the product of the archimedean epsilon factors
/// over the form pieces (every finite factor is unramified), and `+1` for
/// each quadratic Dirichlet factor. `None` when a finite epsilon factor
/// would be needed or the product is not real.
pub fn spec_root_number(spec: &LSeriesSpec) -> Option<f64> {
    if spec.forms().iter().any(|f| f.level != 1) {
        return None;
    }
    let sa = SpecArch::new(spec).ok()?;
    let mut exp = 0i64;
    for (f, e) in &spec.factors {
        match f {
            Factor::Dirichlet(_) => {}
            f if has_dirichlet(f) => return None,
            f => exp += *e as i64 * sa.factor(f).ok()?.epsilon_exponent(),
        }
    }
    match exp.rem_euclid(4) {
        0 => Some(1.0),
        2 => Some(-1.0),
        _ => None,
    }
}

/// `C(Pi) = 1 / (cosh(2 pi t) cosh^2(pi t))`, checked against the direct
/// gamma evaluation `pi^-3 |Gamma(1/2 + 2it)|^2 |Gamma(1/2 + it)|^4`.
pub fn c_of_pi(t: f64) -> Result<f64> {
    let closed = 1.0 / ((2.0 * PI * t).cosh() * (PI * t).cosh().powi(2));
    let ln_direct = -3.0 * PI.ln()
        + 2.0 * ln_gamma(Complex64::new(0.5, 2.0 * t)).re
        + 4.0 * ln_gamma(Complex64::new(0.5, t)).re;
    let rel = (ln_direct - closed.ln()).exp_m1().abs();
    if rel > 1e-12 {
        return Err(Error::Disagreement(format!(
            "C(Pi) at t = {t}: closed form {closed:e}, gamma product {:e}",
            ln_direct.exp()
        )));
    }
    Ok(closed)
}

/// `M = N (2 + sum |b_j|)`.
pub fn thickened_conductor(n: u64, inf: &InfinityType) -> f64 {
    n as f64 * (2.0 + inf.lambda())
}

/// `log(N_pair D_F^4 (2 + |t| + lambda)^(4 deg))`.
pub fn zero_region_width(n_pair: f64, d_f: f64, t: f64, lambda: f64, deg: u32) -> f64 {
    n_pair.ln() + 4.0 * d_f.ln() + 4.0 * deg as f64 * (2.0 + t.abs() + lambda).ln()
}

/// `| |Gamma(1 + it) / Gamma(-1/2 + it)| / t^(3/2) - 1 |`, meant for `t >= 10`.
pub fn stirling_ratio_check(t: f64) -> f64 {
    let ln_ratio = ln_gamma(Complex64::new(1.0, t)).re - ln_gamma(Complex64::new(-0.5, t)).re;
    (ln_ratio - 1.5 * t.ln()).exp_m1().abs()
}

/// `|a(1,1)| = <phi, phi>^(-1/2)`.
pub fn spectral_a11(norm_sq: f64) -> Result<f64> {
    if !(norm_sq > 0.0) {
        return Err(Error::NonPositiveNorm(norm_sq));
    }
    Ok(norm_sq.sqrt().recip())
}

/// `<sym2 f, sym2 f> = Res_{s=1} L(s, sym2 x sym2) / c`, where `c` is the
/// residue of the Eisenstein series used in the unfolding. `c` has no known
/// closed form and is supplied by the caller.
pub fn sym2_norm_from_residue(residue: f64, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Config(format!("Eisenstein residue must be positive, got {c}")));
    }
    if !(residue > 0.0) {
        return Err(Error::NonPositiveNorm(residue / c));
    }
    Ok(residue / c)
}

/// Analytic conductors of a pair `(M1, n1)`, `(M2, n2)` of GL(n1) x GL(n2)
/// data against the conductor `m_pair` of their Rankin-Selberg product:
/// `M1^-n2 M2^-n1 <= M_pair <= M1^n2 M2^n1`, compared in logarithms.
pub fn pairing_conductor_bound_holds(m1: f64, n1: usize, m2: f64, n2: usize, m_pair: f64) -> bool {
    if !(m1 >= 1.0 && m2 >= 1.0 && m_pair > 0.0) {
        return false;
    }
    let top = n2 as f64 * m1.ln() + n1 as f64 * m2.ln();
    let lp = m_pair.ln();
    -top <= lp + 1e-12 * top && lp <= top * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_ring::Irrep;

    #[test]
    fn pairing_conductor_bounds() {
        let d = infinity_type_holomorphic(12).unwrap();
        let m = thickened_conductor(1, &d);
        let pair = functorial_infinity(
            &[ArchBase::Holomorphic { weight: 12 }, ArchBase::Holomorphic { weight: 12 }],
            &IrredDecomp::pair(Irrep::new(1, 0), Irrep::new(1, 0)),
        )
        .unwrap();
        let mp = thickened_conductor(1, &pair);
        assert!(pairing_conductor_bound_holds(m, 2, m, 2, mp));
        assert!(!pairing_conductor_bound_holds(m, 2, m, 2, m.powi(5)));
        assert!(!pairing_conductor_bound_holds(m, 2, m, 2, m.powi(-5)));
        assert!(!pairing_conductor_bound_holds(0.5, 2, m, 2, mp));
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const MAASS: ArchBase = ArchBase::Maass {
        t: 9.5337,
        parity: 0,
    };

    #[test]
    fn base_types() {
        let d = infinity_type_holomorphic(12).unwrap();
        assert_eq!(d.shifts(), &[c(5.5, 0.0), c(6.5, 0.0)]);
        assert_eq!(d.lambda(), 12.0);
        assert_eq!(infinity_type_holomorphic(1).unwrap().shifts(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        let m = infinity_type_maass(2.0, 0);
        assert_eq!(m.lambda(), 4.0);
        assert_eq!(infinity_type_maass(0.0, 1).shifts(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(InfinityType::new(vec![c(0.0, 1.0)], true).is_err());
    }

    #[test]
    fn maass_symmetric_square_and_pairing() {
        let t = 9.5337;
        let s2 = functorial_infinity(&[MAASS], &IrredDecomp::single(2, 0)).unwrap();
        assert_eq!(s2.shifts(), &[c(0.0, -2.0 * t), c(0.0, 0.0), c(0.0, 2.0 * t)]);
        let pair = IrredDecomp::pair(Irrep::new(2, 0), Irrep::new(2, 0));
        let s22 = functorial_infinity(&[MAASS, MAASS], &pair).unwrap();
        let ims: Vec<f64> = s22.shifts().iter().map(|b| b.im / t).collect();
        let want = [-4.0, -2.0, -2.0, 0.0, 0.0, 0.0, 2.0, 2.0, 4.0];
        for (a, b) in ims.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{ims:?}");
        }
        assert_eq!(
            functorial_infinity(&[], &IrredDecomp::unit()).unwrap().shifts(),
            &[c(0.0, 0.0)]
        );
    }

    #[test]
    fn holomorphic_symmetric_square() {
        let d = ArchBase::Holomorphic { weight: 12 };
        let s2 = functorial_infinity(&[d], &IrredDecomp::single(2, 0)).unwrap();
        assert_eq!(s2.shifts(), &[c(1.0, 0.0), c(11.0, 0.0), c(12.0, 0.0)]);
    }

    #[test]
    fn c_of_pi_paths_agree() {
        assert_eq!(c_of_pi(0.0).unwrap(), 1.0);
        for t in [0.5, 1.0, 5.0, 9.5337] {
            c_of_pi(t).unwrap();
        }
        assert!((c_of_pi(1.0).unwrap() - 2.78e-5).abs() < 1e-7);
    }

    #[test]
    fn small_formulas() {
        assert_eq!(thickened_conductor(1, &infinity_type_holomorphic(12).unwrap()), 14.0);
        assert!((zero_region_width(1.0, 1.0, 0.0, 0.0, 1) - 16f64.ln()).abs() < 1e-15);
        assert!(stirling_ratio_check(100.0) < 0.02);
        assert!(stirling_ratio_check(1000.0) < stirling_ratio_check(100.0));
        assert_eq!(spectral_a11(4.0).unwrap(), 0.5);
        assert_eq!(spectral_a11(0.0), Err(Error::NonPositiveNorm(0.0)));
        assert_eq!(sym2_norm_from_residue(0.7, 2.0).unwrap(), 0.35);
        assert!(matches!(sym2_norm_from_residue(0.7, 0.0), Err(Error::Config(_))));
        assert_eq!(sym2_norm_from_residue(-1.0, 2.0), Err(Error::NonPositiveNorm(-0.5)));
    }
}
