//! Symbolic local factors for representations induced from a quadratic
//! extension `K/F`.
//!
//! At a prime `p` of `F` every representation in play is a sum of lines: a
//! Frobenius eigenvalue (a monomial in symbolic character values, times a
//! power of `i`) possibly twisted by the ramified local quadratic character
//! (`grade = 1`). Only untwisted lines contribute `(1 - e X)` to the local
//! factor. Identities are then checked as polynomial identities in the
//! symbolic values, separately for split, inert and ramified primes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::local_factors::LocalFactorPoly;
use crate::scalar::Ring;

/// Number of symbolic variables (two base characters, two values each).
pub const NVARS: usize = 4;

/// A Gaussian integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gauss {
    pub re: i64,
    pub im: i64,
}

impl Gauss {
    pub fn new(re: i64, im: i64) -> Self {
        Gauss { re, im }
    }

    /// `i^u`.
    pub fn unit(u: u8) -> Self {
        match u % 4 {
            0 => Gauss::new(1, 0),
            1 => Gauss::new(0, 1),
            2 => Gauss::new(-1, 0),
            _ => Gauss::new(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        Gauss::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, i) => write!(f, "{i}i"),
            (r, i) => write!(f, "({r}{i:+}i)"),
        }
    }
}

pub type Exps = [i32; NVARS];

/// Laurent polynomial over `Z[i]` in [`NVARS`] variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LPoly(BTreeMap<Exps, Gauss>);

impl LPoly {
    pub fn monomial(coeff: Gauss, exps: Exps) -> Self {
        let mut m = BTreeMap::new();
        if !coeff.is_zero() {
            m.insert(exps, coeff);
        }
        LPoly(m)
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Gauss> {
        &self.0
    }

    fn insert_add(&mut self, e: Exps, c: Gauss) {
        let slot = self.0.entry(e).or_default();
        *slot = *slot + c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(mut self, o: LPoly) -> LPoly {
        for (e, c) in o.0 {
            self.insert_add(e, c);
        }
        self
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(self, o: LPoly) -> LPoly {
        self + (-o)
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, o: LPoly) -> LPoly {
        let mut out = LPoly::default();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &o.0 {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.insert_add(e, *ca * *cb);
            }
        }
        out
    }
}

impl Ring for LPoly {
    fn zero() -> Self {
        LPoly::default()
    }
    fn one() -> Self {
        LPoly::monomial(Gauss::new(1, 0), [0; NVARS])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        LPoly::monomial(Gauss::new(v, 0), [0; NVARS])
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(i, x)| format!("v{i}^{x}"))
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One line of a local parameter: eigenvalue `i^unit * x^exps`, twisted by
/// the ramified quadratic character when `grade == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub unit: u8,
    pub exps: Exps,
    pub grade: u8,
}

impl Line {
    pub const ONE: Line = Line {
        unit: 0,
        exps: [0; NVARS],
        grade: 0,
    };

    pub fn mul(self, o: Line) -> Line {
        let mut exps = self.exps;
        for (x, y) in exps.iter_mut().zip(o.exps) {
            *x += y;
        }
        Line {
            unit: (self.unit + o.unit) % 4,
            exps,
            grade: (self.grade + o.grade) % 2,
        }
    }

    pub fn value(&self) -> LPoly {
        LPoly::monomial(Gauss::unit(self.unit), self.exps)
    }

    /// Square root of an untwisted monomial with even exponents and even
    /// unit power, if it has one.
    pub fn sqrt(&self) -> Option<Line> {
        if !self.unit.is_multiple_of(2) || self.exps.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let mut exps = self.exps;
        for x in exps.iter_mut() {
            *x /= 2;
        }
        Some(Line {
            unit: self.unit / 2,
            exps,
            grade: self.grade,
        })
    }

    fn negated(self) -> Line {
        Line {
            unit: (self.unit + 2) % 4,
            ..self
        }
    }
}

/// Local behaviour of a character of `K` above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingType {
    /// Values at the two primes above `p`.
    Split(Line, Line),
    /// Value at the unique prime above `p` (residue degree 2).
    Inert(Line),
    /// Value at the unique prime above `p` (ramification index 2).
    Ramified(Line),
}

/// Inverse local factor of the induced representation at `p`:
/// `(1 - chi1 X)(1 - chi2 X)`, `1 - chi(P) X^2`, or `1 - chi(P) X`.
pub fn induced_local_factor(s: &SplittingType, p: u64) -> LocalFactorPoly<LPoly> {
    let lin = |l: &Line| LocalFactorPoly {
        p,
        coeffs: vec![LPoly::one(), -l.value()],
    };
    match s {
        SplittingType::Split(a, b) => lin(a).mul(&lin(b)),
        SplittingType::Inert(c) => LocalFactorPoly {
            p,
            coeffs: vec![LPoly::one(), LPoly::zero(), -c.value()],
        },
        SplittingType::Ramified(c) => lin(c),
    }
}

/// Lines of the induced representation at `p`.
pub fn induced_lines(s: &SplittingType) -> Vec<Line> {
    match s {
        SplittingType::Split(a, b) => vec![*a, *b],
        SplittingType::Inert(c) => {
            let r = c
                .sqrt()
                .expect("inert values in the symbolic model are squares");
            vec![r, r.negated()]
        }
        SplittingType::Ramified(c) => vec![
            *c,
            Line {
                grade: (c.grade + 1) % 2,
                ..*c
            },
        ],
    }
}

/// Inverse local factor of a sum of lines: untwisted lines only.
pub fn lines_factor(lines: &[Line], p: u64) -> LocalFactorPoly<LPoly> {
    let mut acc = LocalFactorPoly::one(p);
    for l in lines.iter().filter(|l| l.grade == 0) {
        acc = acc.mul(&LocalFactorPoly {
            p,
            coeffs: vec![LPoly::one(), -l.value()],
        });
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    Split,
    Inert,
    Ramified,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Split, Case::Inert, Case::Ramified];

    pub fn name(&self) -> &'static str {
        match self {
            Case::Split => "SPLIT",
            Case::Inert => "INERT",
            Case::Ramified => "RAMIFIED",
        }
    }
}

/// A character of `K` written as `prod chi_b^(e_b) (chi_b o theta)^(f_b)`
/// over the base characters `b = 0` (`chi`) and `b = 1` (`chi'`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct KChar(pub [(i32, i32); 2]);

impl KChar {
    pub fn base(b: usize) -> Self {
        let mut e = [(0, 0); 2];
        e[b] = (1, 0);
        KChar(e)
    }

    pub fn mul(self, o: KChar) -> KChar {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0) {
            x.0 += y.0;
            x.1 += y.1;
        }
        KChar(e)
    }

    pub fn pow(self, n: i32) -> KChar {
        KChar(self.0.map(|(e, f)| (e * n, f * n)))
    }

    /// Composition with the nontrivial automorphism.
    pub fn conj(self) -> KChar {
        KChar(self.0.map(|(e, f)| (f, e)))
    }
}

/// A character of `F`: `prod (chi_b|_F)^(n_b) * delta^m`, with `delta` the
/// quadratic character of `K/F`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FChar {
    pub restriction: [i32; 2],
    pub delta: i32,
}

impl FChar {
    pub const TRIVIAL: FChar = FChar {
        restriction: [0, 0],
        delta: 0,
    };
    pub const DELTA: FChar = FChar {
        restriction: [0, 0],
        delta: 1,
    };

    /// `chi_0^n`: the `n`-th power of the restriction of `chi`.
    pub fn chi0(n: i32) -> Self {
        FChar {
            restriction: [n, 0],
            delta: 0,
        }
    }

    pub fn times_delta(self, m: i32) -> Self {
        FChar {
            delta: self.delta + m,
            ..self
        }
    }
}

/// Representation-level expressions for the dihedral identities.
#[derive(Clone, Debug, PartialEq)]
pub enum Rep {
    Ind(KChar),
    Chr(FChar),
    Tensor(Box<Rep>, Box<Rep>),
    Sym2(Box<Rep>),
}

impl Rep {
    pub fn tensor(a: Rep, b: Rep) -> Rep {
        Rep::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sym2(a: Rep) -> Rep {
        Rep::Sym2(Box::new(a))
    }
}

/// Symbolic model of one splitting case. With `trivial_central` the base
/// character `chi` is constrained by `chi|_F = delta` (central character 1
/// for `I(chi)`), which has no solution with `chi` unramified above a
/// ramified prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Model {
    pub case: Case,
    pub trivial_central: bool,
}

impl Model {
    pub fn admissible(&self) -> bool {
        !(self.trivial_central && self.case == Case::Ramified)
    }

    fn var(i: usize, e: i32) -> Line {
        let mut exps = [0; NVARS];
        exps[i] = e;
        Line {
            unit: 0,
            exps,
            grade: 0,
        }
    }

    /// `(chi_b(P), chi_b(P^theta))` at a split prime.
    fn split_values(&self, b: usize) -> (Line, Line) {
        let x = Self::var(2 * b, 1);
        let y = if self.trivial_central && b == 0 {
            Self::var(2 * b, -1)
        } else {
            Self::var(2 * b + 1, 1)
        };
        (x, y)
    }

    /// A square root of `chi_b(P)` at an inert prime.
    fn inert_root(&self, b: usize) -> Line {
        if self.trivial_central && b == 0 {
            Line {
                unit: 1,
                ..Line::ONE
            }
        } else {
            Self::var(b, 1)
        }
    }

    fn pow(l: Line, n: i32) -> Line {
        let mut exps = l.exps;
        for x in exps.iter_mut() {
            *x *= n;
        }
        Line {
            unit: (l.unit as i32 * n).rem_euclid(4) as u8,
            exps,
            grade: ((l.grade as i32 * n).rem_euclid(2)) as u8,
        }
    }

    pub fn splitting(&self, lambda: KChar) -> SplittingType {
        let mut a = Line::ONE;
        let mut b = Line::ONE;
        let mut c = Line::ONE;
        for (base, (e, f)) in lambda.0.iter().enumerate() {
            match self.case {
                Case::Split => {
                    let (x, y) = self.split_values(base);
                    a = a.mul(Self::pow(x, *e)).mul(Self::pow(y, *f));
                    b = b.mul(Self::pow(y, *e)).mul(Self::pow(x, *f));
                }
                Case::Inert => {
                    let r = self.inert_root(base);
                    c = c.mul(Self::pow(r, 2 * (e + f)));
                }
                Case::Ramified => {
                    c = c.mul(Self::pow(Self::var(base, 1), e + f));
                }
            }
        }
        match self.case {
            Case::Split => SplittingType::Split(a, b),
            Case::Inert => SplittingType::Inert(c),
            Case::Ramified => SplittingType::Ramified(c),
        }
    }

    pub fn f_line(&self, mu: FChar) -> Line {
        let mut acc = Line::ONE;
        for (base, n) in mu.restriction.iter().enumerate() {
            let v = match self.case {
                Case::Split => {
                    let (x, y) = self.split_values(base);
                    x.mul(y)
                }
                Case::Inert => Self::pow(self.inert_root(base), 2),
                Case::Ramified => Self::var(base, 2),
            };
            acc = acc.mul(Self::pow(v, *n));
        }
        let d = match self.case {
            Case::Split => Line::ONE,
            Case::Inert => Line {
                unit: 2,
                ..Line::ONE
            },
            Case::Ramified => Line {
                grade: 1,
                ..Line::ONE
            },
        };
        acc.mul(Self::pow(d, mu.delta))
    }

    pub fn lines(&self, rep: &Rep) -> Vec<Line> {
        match rep {
            Rep::Ind(l) => induced_lines(&self.splitting(*l)),
            Rep::Chr(mu) => vec![self.f_line(*mu)],
            Rep::Tensor(a, b) => {
                let la = self.lines(a);
                let lb = self.lines(b);
                la.iter()
                    .flat_map(|x| lb.iter().map(move |y| x.mul(*y)))
                    .collect()
            }
            Rep::Sym2(a) => {
                let la = self.lines(a);
                let mut out = Vec::new();
                for i in 0..la.len() {
                    for j in i..la.len() {
                        out.push(la[i].mul(la[j]));
                    }
                }
                out
            }
        }
    }

    pub fn factor(&self, rep: &Rep) -> LocalFactorPoly<LPoly> {
        lines_factor(&self.lines(rep), 0)
    }
}

/// Local data of one prime in a biquadratic extension with group
/// `(Z/2)^2 = {0, 1, 2, 3}` under xor: inertia `I`, decomposition group `D`
/// and a Frobenius element generating `D/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquadraticPrime {
    pub inertia: Vec<u8>,
    pub decomposition: Vec<u8>,
    pub frobenius: u8,
}

fn subgroups() -> Vec<Vec<u8>> {
    vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 1, 2, 3]]
}

/// All admissible `(I, D, Frob)` configurations (`I` normal in `D`,
/// `D/I` cyclic).
pub fn biquadratic_primes() -> Vec<BiquadraticPrime> {
    let mut out = Vec::new();
    for i in subgroups() {
        for d in subgroups() {
            if !i.iter().all(|g| d.contains(g)) {
                continue;
            }
            let quotient = d.len() / i.len();
            if quotient > 2 {
                continue;
            }
            let frob = d.iter().copied().find(|g| !i.contains(g)).unwrap_or(0);
            out.push(BiquadraticPrime {
                inertia: i.clone(),
                decomposition: d,
                frobenius: frob,
            });
        }
    }
    out
}

fn char_value(a: u8, g: u8) -> i64 {
    if (a & g).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl BiquadraticPrime {
    /// Local factor of the Dedekind zeta function of the compositum:
    /// `(1 - X^f)^g` with `f = |D/I|`, `g = 4/|D|`.
    pub fn dedekind_factor(&self) -> Vec<i64> {
        let f = self.decomposition.len() / self.inertia.len();
        let g = 4 / self.decomposition.len();
        let mut base = vec![0i64; f + 1];
        base[0] = 1;
        base[f] = -1;
        let mut acc = vec![1i64];
        for _ in 0..g {
            acc = int_poly_mul(&acc, &base);
        }
        acc
    }

    /// `prod_psi (1 - psi(p) X)` over the four characters of the group,
    /// `psi(p) = 0` when `psi` is ramified.
    pub fn character_factor(&self) -> Vec<i64> {
        let mut acc = vec![1i64];
        for a in 0..4u8 {
            let ramified = self.inertia.iter().any(|g| char_value(a, *g) != 1);
            let v = if ramified {
                0
            } else {
                char_value(a, self.frobenius)
            };
            acc = int_poly_mul(&acc, &[1, -v]);
        }
        while acc.len() > 1 && acc.last() == Some(&0) {
            acc.pop();
        }
        acc
    }

    pub fn label(&self) -> String {
        format!(
            "I={:?} D={:?} Frob={}",
            self.inertia, self.decomposition, self.frobenius
        )
    }
}

fn int_poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(case: Case) -> Model {
        Model {
            case,
            trivial_central: false,
        }
    }

    #[test]
    fn split_trivial_is_zeta_k() {
        let m = trivial(Case::Split);
        let f = induced_local_factor(&m.splitting(KChar::default()), 2);
        let expect = vec![LPoly::one(), -(LPoly::one() + LPoly::one()), LPoly::one()];
        assert_eq!(f.coeffs, expect);
    }

    #[test]
    fn inert_trivial() {
        let m = trivial(Case::Inert);
        let f = induced_local_factor(&m.splitting(KChar::default()), 3);
        assert_eq!(f.coeffs, vec![LPoly::one(), LPoly::zero(), -LPoly::one()]);
    }

    #[test]
    fn lines_agree_with_induced_factor() {
        for case in Case::ALL {
            let m = trivial(case);
            let s = m.splitting(KChar::base(0).pow(2).mul(KChar::base(1).conj()));
            assert_eq!(
                lines_factor(&induced_lines(&s), 5),
                induced_local_factor(&s, 5),
                "{case:?}"
            );
        }
    }

    #[test]
    fn mackey_locally() {
        let chi = KChar::base(0);
        let chi2 = KChar::base(1);
        for case in Case::ALL {
            let m = trivial(case);
            let lhs = m.factor(&Rep::tensor(Rep::Ind(chi), Rep::Ind(chi2)));
            let rhs = m
                .factor(&Rep::Ind(chi.mul(chi2)))
                .mul(&m.factor(&Rep::Ind(chi.mul(chi2.conj()))));
            assert_eq!(lhs, rhs, "{case:?}");
        }
    }

    #[test]
    fn biquadratic_factorization() {
        let cases = biquadratic_primes();
        assert!(cases.len() >= 8);
        for c in cases {
            assert_eq!(c.dedekind_factor(), c.character_factor(), "{}", c.label());
        }
    }
}
