//! Exact power sums for integral Hecke data.
//!
//! At a fixed power `m`, every constituent contributes an integer times
//! `p^(-m e / 2)` for an integer grade `e` (the weight under the unitary
//! normalization, minus twice the determinant twist under the arithmetic
//! one). Keeping the integers apart by grade avoids rational arithmetic
//! until the final conversion to [`Surd`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::char_ring::{IrredDecomp, Plethysm};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::local_factors::Normalization;
use crate::scalar::Surd;
use crate::series::Factor;

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Graded(BTreeMap<i64, BigInt>);

impl Graded {
    fn constant(c: BigInt, e: i64) -> Self {
        let mut g = Graded::default();
        if !c.is_zero() {
            g.0.insert(e, c);
        }
        g
    }

    pub(crate) fn add_scaled(&mut self, o: &Graded, k: i64) {
        for (e, c) in &o.0 {
            let slot = self.0.entry(*e).or_insert_with(BigInt::zero);
            *slot += c * k;
            if slot.is_zero() {
                self.0.remove(e);
            }
        }
    }

    fn mul(&self, o: &Graded) -> Graded {
        let mut out = Graded::default();
        for (e, c) in &self.0 {
            for (f, d) in &o.0 {
                out.add_scaled(&Graded::constant(c * d, e + f), 1);
            }
        }
        out
    }

    fn map_grades(&self, f: impl Fn(i64) -> i64) -> Graded {
        Graded(self.0.iter().map(|(e, c)| (f(*e), c.clone())).collect())
    }

    fn half(&self) -> Result<Graded> {
        let two = BigInt::from(2);
        let mut out = BTreeMap::new();
        for (e, c) in &self.0 {
            let (q, r) = c.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::InvariantError("odd plethysm power sum".into()));
            }
            out.insert(*e, q);
        }
        Ok(Graded(out))
    }

    /// Whether the value at power `m` vanishes. Multiplying through by the
    /// largest power of `p` involved leaves an integer plus an integer times
    /// `sqrt(p)`, and both must vanish.
    pub(crate) fn is_zero_at(&self, p: u64, m: usize) -> bool {
        let Some(top) = self.0.keys().next_back() else {
            return true;
        };
        let pb = BigInt::from(p);
        let (mut even, mut odd) = (BigInt::zero(), BigInt::zero());
        for (e, c) in &self.0 {
            let x = m as i64 * (top - e);
            let term = c * Pow::pow(&pb, (x / 2) as u64);
            if x % 2 == 0 {
                even += term;
            } else {
                odd += term;
            }
        }
        even.is_zero() && odd.is_zero()
    }

    pub(crate) fn to_surd(&self, p: u64, m: usize) -> Surd {
        let pb = BigInt::from(p);
        let power = |x: i64| -> BigRational {
            let q = BigRational::from_integer(Pow::pow(&pb, x.unsigned_abs()));
            if x >= 0 {
                q
            } else {
                q.recip()
            }
        };
        let mut rational = BigRational::zero();
        let mut radical = BigRational::zero();
        for (e, c) in &self.0 {
            let x = -(m as i64) * e;
            let c = BigRational::from_integer(c.clone());
            if x.rem_euclid(2) == 0 {
                rational += c * power(x / 2);
            } else {
                radical += c * power((x - 1) / 2);
            }
        }
        Surd::new(rational, radical, p)
    }
}

/// `h_j(alpha^m, beta^m)` for `m = 1..=n`, indexed `[m - 1]`.
struct FormPowers {
    w: i64,
    traces: Vec<BigInt>,
    dets: Vec<BigInt>,
    cache: BTreeMap<u32, Vec<BigInt>>,
}

impl FormPowers {
    fn new(form: &Form, p: u64, n: usize) -> Result<Self> {
        let weight = form
            .weight()
            .ok_or_else(|| Error::OverflowPolicy(format!("{} has no integral data", form.name)))?;
        let a = form
            .ap_exact(p)
            .ok_or_else(|| Error::MissingPrime(vec![p]))?
            .clone();
        let d = Pow::pow(&BigInt::from(p), weight - 1);
        let (mut traces, mut dets) = (Vec::with_capacity(n), Vec::with_capacity(n));
        let (mut prev, mut cur, mut det) = (BigInt::from(2), a.clone(), d.clone());
        for m in 1..=n {
            if m > 1 {
                let next = &a * &cur - &d * &prev;
                prev = std::mem::replace(&mut cur, next);
                det *= &d;
            }
            traces.push(cur.clone());
            dets.push(det.clone());
        }
        Ok(FormPowers {
            w: weight as i64 - 1,
            traces,
            dets,
            cache: BTreeMap::new(),
        })
    }

    fn sym(&mut self, j: u32) -> &[BigInt] {
        let (traces, dets) = (&self.traces, &self.dets);
        self.cache.entry(j).or_insert_with(|| {
            traces
                .iter()
                .zip(dets)
                .map(|(t, d)| {
                    let mut prev = BigInt::one();
                    if j == 0 {
                        return prev;
                    }
                    let mut cur = t.clone();
                    for _ in 1..j {
                        let next = t * &cur - d * &prev;
                        prev = std::mem::replace(&mut cur, next);
                    }
                    cur
                })
                .collect()
        })
    }

    fn grade(&self, j: u32, k: i32, norm: Normalization) -> i64 {
        match norm {
            Normalization::Unitary => self.w * j as i64,
            Normalization::Arithmetic => -2 * self.w * k as i64,
        }
    }
}

fn decomp_sums(
    powers: &mut [FormPowers],
    decomp: &IrredDecomp,
    n: usize,
    norm: Normalization,
) -> Result<Vec<Graded>> {
    let mut out = vec![Graded::default(); n];
    for part in decomp.parts() {
        let idx = [Some(part.first), part.second];
        let mut values = vec![BigInt::one(); n];
        let mut grade = 0;
        for (i, r) in idx.iter().enumerate() {
            let Some(r) = r else { continue };
            let fp = powers.get_mut(i).ok_or(Error::HeckeArity {
                expected: i + 1,
                got: i,
            })?;
            grade += fp.grade(r.j, r.k, norm);
            for (v, s) in values.iter_mut().zip(fp.sym(r.j)) {
                *v *= s;
            }
        }
        for (o, v) in out.iter_mut().zip(values) {
            o.add_scaled(&Graded::constant(v, grade), part.mult as i64);
        }
    }
    Ok(out)
}

/// Graded power sums `p_1..p_n` of one factor at `p`.
pub(crate) fn factor_sums(f: &Factor, p: u64, n: usize, norm: Normalization) -> Result<Vec<Graded>> {
    Ok(match f {
        Factor::Zeta => vec![Graded::constant(BigInt::one(), 0); n],
        Factor::Dirichlet(chi) => {
            let v = BigInt::from(chi.value(p));
            (1..=n)
                .map(|m| Graded::constant(Pow::pow(&v, m as u32), 0))
                .collect()
        }
        Factor::Rep { forms, decomp } => {
            let mut powers = forms
                .iter()
                .map(|g| FormPowers::new(g, p, n))
                .collect::<Result<Vec<_>>>()?;
            decomp_sums(&mut powers, decomp, n, norm)?
        }
        Factor::Plethysm {
            form,
            inner,
            kind,
            twist,
        } => {
            let mut powers = vec![FormPowers::new(form, p, 2 * n)?];
            let shift = match norm {
                Normalization::Unitary => 0,
                Normalization::Arithmetic => -2 * powers[0].w * *twist as i64,
            };
            let q = decomp_sums(&mut powers, inner, 2 * n, norm)?;
            (1..=n)
                .map(|m| {
                    let mut v = q[m - 1].mul(&q[m - 1]);
                    let sign = match kind {
                        Plethysm::Sym2 => 1,
                        Plethysm::Alt2 => -1,
                    };
                    v.add_scaled(&q[2 * m - 1].map_grades(|e| 2 * e), sign);
                    Ok(v.half()?.map_grades(|e| e + shift))
                })
                .collect::<Result<Vec<_>>>()?
        }
        Factor::Pairing(a, b) => {
            let x = factor_sums(a, p, n, norm)?;
            let y = factor_sums(b, p, n, norm)?;
            x.iter().zip(&y).map(|(u, v)| u.mul(v)).collect()
        }
    })
}
