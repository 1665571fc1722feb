//! Sources of Hecke data.

pub mod file;
pub mod kronecker;
pub mod qexp;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::local_factors::HeckeLocal;
use crate::scalar::{Coeff, Ring, Surd};

pub use file::{load_form_file, FormRecord, HolomorphicFormData, MaassFormData};
pub use kronecker::{is_fundamental, kronecker, QuadraticCharacter};
pub use qexp::{delta_q_expansion, level_one_eigenform, level_one_prime_coeffs, NewformQExpansion};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FormKind {
    Holomorphic { weight: u32 },
    Maass { t: f64, parity: u8 },
}

/// A GL(2) form known through its prime Hecke eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub name: String,
    pub kind: FormKind,
    pub level: u64,
    pub provenance: String,
    exact: BTreeMap<u64, BigInt>,
    float: BTreeMap<u64, f64>,
    complete_to: u64,
}

impl Form {
    pub fn level_one(k: u32, pmax: usize) -> Result<Form> {
        let name = if k == 12 {
            "delta".to_string()
        } else {
            format!("f{k}")
        };
        Ok(Form {
            name,
            kind: FormKind::Holomorphic { weight: k },
            level: 1,
            provenance: format!("internal q-expansion, weight {k}"),
            exact: level_one_prime_coeffs(k, pmax)?,
            float: BTreeMap::new(),
            complete_to: pmax as u64,
        })
    }

    pub fn from_record(name: &str, rec: FormRecord) -> Form {
        let mut f = match rec {
            FormRecord::Maass(m) => Form {
                name: name.to_string(),
                kind: FormKind::Maass {
                    t: m.t,
                    parity: m.parity,
                },
                level: m.level,
                provenance: m.provenance,
                exact: BTreeMap::new(),
                float: m.ap,
                complete_to: 0,
            },
            FormRecord::Holomorphic(h) => Form {
                name: name.to_string(),
                kind: FormKind::Holomorphic { weight: h.weight },
                level: h.level,
                provenance: h.provenance,
                exact: h.ap,
                float: BTreeMap::new(),
                complete_to: 0,
            },
        };
        f.complete_to = f.scan_prime_bound();
        f
    }

    /// Whether Hecke data are exact integers.
    pub fn is_exact(&self) -> bool {
        matches!(self.kind, FormKind::Holomorphic { .. })
    }

    pub fn weight(&self) -> Option<u32> {
        match self.kind {
            FormKind::Holomorphic { weight } => Some(weight),
            FormKind::Maass { .. } => None,
        }
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.level.is_multiple_of(p)
    }

    /// Largest `B` such that every good prime `p <= B` has data.
    pub fn prime_bound(&self) -> u64 {
        self.complete_to
    }

    fn scan_prime_bound(&self) -> u64 {
        let keys: Vec<u64> = if self.is_exact() {
            self.exact.keys().copied().collect()
        } else {
            self.float.keys().copied().collect()
        };
        let top = keys.last().copied().unwrap_or(1);
        let mut bound = 1;
        for p in primes_up_to(top as usize) {
            if self.is_ramified(p) {
                bound = p;
                continue;
            }
            if !keys.contains(&p) {
                return bound.max(p - 1);
            }
            bound = p;
        }
        bound
    }

    pub fn ap_exact(&self, p: u64) -> Option<&BigInt> {
        self.exact.get(&p)
    }

    pub fn prime_data_exact(&self) -> &BTreeMap<u64, BigInt> {
        &self.exact
    }

    fn missing(&self, p: u64) -> Error {
        Error::MissingPrime(vec![p])
    }

    pub fn hecke_exact(&self, p: u64) -> Result<HeckeLocal<Surd>> {
        match self.kind {
            FormKind::Holomorphic { weight } => {
                let a = self.exact.get(&p).ok_or_else(|| self.missing(p))?;
                HeckeLocal::exact(p, a, &BigInt::from(p).pow(weight - 1))
            }
            FormKind::Maass { .. } => Err(Error::OverflowPolicy(format!(
                "{} has only floating-point Hecke data",
                self.name
            ))),
        }
    }

    pub fn hecke_float(&self, p: u64) -> Result<HeckeLocal<f64>> {
        match self.kind {
            FormKind::Holomorphic { weight } => {
                let a = self.exact.get(&p).ok_or_else(|| self.missing(p))?;
                HeckeLocal::new(
                    p,
                    a.to_f64().unwrap_or(f64::NAN),
                    (p as f64).powi(weight as i32 - 1),
                )
            }
            FormKind::Maass { .. } => {
                let a = self.float.get(&p).ok_or_else(|| self.missing(p))?;
                HeckeLocal::new(p, *a, 1.0)
            }
        }
    }

    /// Hecke data in the coefficient type `C`.
    pub fn hecke<C: HeckeSource>(&self, p: u64) -> Result<HeckeLocal<C>> {
        C::hecke(self, p)
    }
}

/// Coefficient types a [`Form`] can supply Hecke data in.
pub trait HeckeSource: Coeff {
    fn hecke(form: &Form, p: u64) -> Result<HeckeLocal<Self>>;
    /// Conversion from exact values, for types that take exact data.
    fn from_surd(_: Surd) -> Option<Self> {
        None
    }
}

impl HeckeSource for Surd {
    fn hecke(form: &Form, p: u64) -> Result<HeckeLocal<Self>> {
        form.hecke_exact(p)
    }
    fn from_surd(s: Surd) -> Option<Self> {
        Some(s)
    }
}

impl HeckeSource for f64 {
    fn hecke(form: &Form, p: u64) -> Result<HeckeLocal<Self>> {
        form.hecke_float(p)
    }
}

/// Prime-power recursion parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeWeight {
    /// `alpha_p beta_p = p^(k-1)`.
    Holomorphic(u32),
    /// `alpha_p beta_p = 1`.
    Unitary,
}

/// Fills `a_1..a_x` from prime data by the Hecke recursion and
/// multiplicativity. Index 0 of the result is unused.
pub fn multiplicative_extend<C: Ring>(
    prime_data: &BTreeMap<u64, C>,
    weight: HeckeWeight,
    x: usize,
) -> Result<Vec<C>> {
    let primes = primes_up_to(x);
    let missing: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|p| !prime_data.contains_key(p))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingPrime(missing));
    }
    let mut a = vec![C::zero(); x + 1];
    if x >= 1 {
        a[1] = C::one();
    }
    for &p in &primes {
        let ap = prime_data[&p].clone();
        let scale = match weight {
            HeckeWeight::Unitary => C::one(),
            HeckeWeight::Holomorphic(k) => {
                (0..k - 1).fold(C::one(), |acc, _| acc * C::from_i64(p as i64))
            }
        };
        let (mut prev, mut cur) = (C::one(), ap);
        let mut q = p as usize;
        loop {
            a[q] = cur.clone();
            match q.checked_mul(p as usize) {
                Some(n) if n <= x => q = n,
                _ => break,
            }
            let next = a[p as usize].clone() * cur.clone() - scale.clone() * prev;
            prev = cur;
            cur = next;
        }
    }
    let spf = crate::arith::spf_table(x);
    for n in 2..=x {
        let p = spf[n] as usize;
        let mut q = p;
        while n % (q * p) == 0 {
            q *= p;
        }
        if q != n {
            a[n] = a[q].clone() * a[n / q].clone();
        }
    }
    Ok(a)
}

/// Resolves form names to [`Form`]s, caching internal computations.
///
/// Names: `delta` (or `f12`), `f16`, `f18`, `f20`, `f22`; anything else is
/// read as a path to a form file.
#[derive(Default)]
pub struct FormBank {
    cache: Mutex<HashMap<String, Arc<Form>>>,
}

impl FormBank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn internal_weight(name: &str) -> Option<u32> {
        match name {
            "delta" | "f12" => Some(12),
            "f16" => Some(16),
            "f18" => Some(18),
            "f20" => Some(20),
            "f22" => Some(22),
            _ => None,
        }
    }

    /// The named form with data for every prime up to `pmax` when it is
    /// internal; file forms carry whatever the file lists.
    pub fn get(&self, name: &str, pmax: u64) -> Result<Arc<Form>> {
        let mut cache = self.cache.lock().expect("form cache poisoned");
        if let Some(f) = cache.get(name) {
            if !f.is_exact() || Self::internal_weight(name).is_none() || f.prime_bound() >= pmax {
                return Ok(f.clone());
            }
        }
        let form = match Self::internal_weight(name) {
            Some(k) => Form::level_one(k, pmax.max(2) as usize)?,
            None => {
                let rec = load_form_file(Path::new(name))?;
                Form::from_record(name, rec)
            }
        };
        let form = Arc::new(form);
        cache.insert(name.to_string(), form.clone());
        Ok(form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_matches_q_expansion() {
        let d = delta_q_expansion(500);
        let ext = multiplicative_extend(&d.prime_coeffs(), HeckeWeight::Holomorphic(12), 500).unwrap();
        assert_eq!(ext, d.coeffs);
    }

    #[test]
    fn unitary_recursion() {
        let data: BTreeMap<u64, BigInt> = [(2, BigInt::from(0)), (3, BigInt::from(1))].into();
        let a = multiplicative_extend(&data, HeckeWeight::Unitary, 4).unwrap();
        assert_eq!(a[4], BigInt::from(-1));
    }

    #[test]
    fn missing_primes_listed() {
        let data: BTreeMap<u64, BigInt> = [(2, BigInt::from(1))].into();
        assert_eq!(
            multiplicative_extend(&data, HeckeWeight::Unitary, 7),
            Err(Error::MissingPrime(vec![3, 5, 7]))
        );
    }

    #[test]
    fn bank_grows_on_demand() {
        let bank = FormBank::new();
        let a = bank.get("delta", 50).unwrap();
        assert!(a.prime_bound() >= 47);
        let b = bank.get("delta", 200).unwrap();
        assert!(b.prime_bound() >= 199);
        assert_eq!(b.hecke_exact(2).unwrap().trace.to_string(), "-24");
    }
}
