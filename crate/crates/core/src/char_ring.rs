//! Virtual characters of one or two GL(2) dual tori.
//!
//! A weight vector lists one exponent pair per torus factor: `(i, j)` stands
//! for the monomial `a^i b^j`, and `(i, j, i', j')` for `a^i b^j a'^i' b'^j'`.
//! `det` is `ab` in its factor, so `sym^j (x) det^k` has weights
//! `(j - i + k, i + k)` for `i = 0..=j`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Weight vector, `2 * factors` entries long.
pub type Weight = Vec<i32>;

/// A Weyl-invariant virtual character with integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    factors: u8,
    terms: BTreeMap<Weight, i64>,
}

fn check_factors(factors: u8) -> Result<()> {
    match factors {
        1 | 2 => Ok(()),
        f => Err(Error::BadFactorIndex(f)),
    }
}

fn weyl_images(w: &[i32]) -> Vec<Weight> {
    let mut out = vec![w.to_vec()];
    for f in 0..w.len() / 2 {
        let mut next = Vec::with_capacity(out.len() * 2);
        for v in out {
            let mut s = v.clone();
            s.swap(2 * f, 2 * f + 1);
            next.push(v);
            next.push(s);
        }
        out = next;
    }
    out
}

impl CharPoly {
    /// Builds a character, merging repeated weights and dropping zero
    /// multiplicities. Fails if the result is not Weyl invariant.
    pub fn new(factors: u8, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        check_factors(factors)?;
        let mut map: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, m) in terms {
            if w.len() != 2 * factors as usize {
                return Err(Error::FactorMismatch(factors, (w.len() / 2) as u8));
            }
            *map.entry(w).or_insert(0) += m;
        }
        map.retain(|_, m| *m != 0);
        let c = CharPoly {
            factors,
            terms: map,
        };
        c.check_weyl()?;
        Ok(c)
    }

    fn from_map_unchecked(factors: u8, mut terms: BTreeMap<Weight, i64>) -> Self {
        terms.retain(|_, m| *m != 0);
        CharPoly { factors, terms }
    }

    fn check_weyl(&self) -> Result<()> {
        for (w, m) in &self.terms {
            for img in weyl_images(w) {
                if self.terms.get(&img).copied().unwrap_or(0) != *m {
                    return Err(Error::NotWeylInvariant(w.clone()));
                }
            }
        }
        Ok(())
    }

    /// The trivial one-dimensional character.
    pub fn unit(factors: u8) -> Result<Self> {
        check_factors(factors)?;
        Ok(Self::from_map_unchecked(
            factors,
            BTreeMap::from([(vec![0; 2 * factors as usize], 1)]),
        ))
    }

    pub fn factors(&self) -> u8 {
        self.factors
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Virtual dimension: the sum of multiplicities.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Views a one-factor character as a two-factor one, trivial on the
    /// second torus.
    pub fn promote(&self) -> CharPoly {
        if self.factors == 2 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, m)| (vec![w[0], w[1], 0, 0], *m))
            .collect();
        Self::from_map_unchecked(2, terms)
    }

    fn aligned(x: &CharPoly, y: &CharPoly) -> (CharPoly, CharPoly) {
        if x.factors == y.factors {
            (x.clone(), y.clone())
        } else {
            (x.promote(), y.promote())
        }
    }

    /// Direct sum.
    pub fn plus(&self, other: &CharPoly) -> CharPoly {
        let (mut x, y) = Self::aligned(self, other);
        for (w, m) in y.terms {
            *x.terms.entry(w).or_insert(0) += m;
        }
        Self::from_map_unchecked(x.factors, x.terms)
    }

    /// Virtual difference.
    pub fn minus(&self, other: &CharPoly) -> CharPoly {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, c: i64) -> CharPoly {
        let terms = self.terms.iter().map(|(w, m)| (w.clone(), m * c)).collect();
        Self::from_map_unchecked(self.factors, terms)
    }

    /// Contragredient: every weight negated.
    pub fn dual(&self) -> CharPoly {
        let terms = self
            .terms
            .iter()
            .map(|(w, m)| (w.iter().map(|x| -x).collect(), *m))
            .collect();
        Self::from_map_unchecked(self.factors, terms)
    }

    /// Twist by `det^k` in the given factor (1 or 2).
    pub fn twist_det(&self, k: i32, factor_index: u8) -> Result<CharPoly> {
        let d = irreducible_char(0, k, factor_index)?;
        tensor_chars(self, &d)
    }

    /// Second Adams operation: every weight doubled.
    pub fn adams2(&self) -> CharPoly {
        let terms = self
            .terms
            .iter()
            .map(|(w, m)| (w.iter().map(|x| 2 * x).collect(), *m))
            .collect();
        Self::from_map_unchecked(self.factors, terms)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, m)| format!("{m}*{w:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Character of `sym^j (x) det^k` placed in factor 1 (a one-factor
/// character) or factor 2 (a two-factor character trivial on factor 1).
pub fn irreducible_char(j: u32, k: i32, factor_index: u8) -> Result<CharPoly> {
    let j = j as i32;
    let weights = (0..=j).map(|i| (j - i + k, i + k));
    let terms: BTreeMap<Weight, i64> = match factor_index {
        1 => weights.map(|(a, b)| (vec![a, b], 1)).collect(),
        2 => weights.map(|(a, b)| (vec![0, 0, a, b], 1)).collect(),
        f => return Err(Error::BadFactorIndex(f)),
    };
    let factors = if factor_index == 1 { 1 } else { 2 };
    Ok(CharPoly::from_map_unchecked(factors, terms))
}

/// Tensor product (pointwise convolution of weight multisets). A one-factor
/// argument is promoted to act on the first torus.
pub fn tensor_chars(x: &CharPoly, y: &CharPoly) -> Result<CharPoly> {
    let (x, y) = CharPoly::aligned(x, y);
    let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
    for (wx, mx) in &x.terms {
        for (wy, my) in &y.terms {
            let w: Weight = wx.iter().zip(wy).map(|(a, b)| a + b).collect();
            *terms.entry(w).or_insert(0) += mx * my;
        }
    }
    Ok(CharPoly::from_map_unchecked(x.factors, terms))
}

/// External tensor product of two one-factor characters: `x` on the first
/// torus, `y` on the second.
pub fn external_product(x: &CharPoly, y: &CharPoly) -> Result<CharPoly> {
    if x.factors != 1 || y.factors != 1 {
        return Err(Error::FactorMismatch(x.factors, y.factors));
    }
    let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
    for (wx, mx) in &x.terms {
        for (wy, my) in &y.terms {
            *terms.entry(vec![wx[0], wx[1], wy[0], wy[1]]).or_insert(0) += mx * my;
        }
    }
    Ok(CharPoly::from_map_unchecked(2, terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plethysm {
    Sym2,
    Alt2,
}

/// `sym^2` or `Lambda^2` of a one-factor character, via
/// `(x*x +- psi^2 x) / 2`, which agrees with the pair enumeration on
/// effective characters and stays exact on virtual ones.
pub fn plethysm(x: &CharPoly, kind: Plethysm) -> Result<CharPoly> {
    if x.factors != 1 {
        return Err(Error::PlethysmOfProduct);
    }
    let square = tensor_chars(x, x)?;
    let adams = x.adams2();
    let num = match kind {
        Plethysm::Sym2 => square.plus(&adams),
        Plethysm::Alt2 => square.minus(&adams),
    };
    let terms = num
        .terms
        .into_iter()
        .map(|(w, m)| {
            debug_assert!(m % 2 == 0, "plethysm numerator must be even");
            (w, m / 2)
        })
        .collect();
    Ok(CharPoly::from_map_unchecked(1, terms))
}

/// `sym^j (x) det^k` on one torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Irrep {
    pub j: u32,
    pub k: i32,
}

impl Irrep {
    pub const UNIT: Irrep = Irrep { j: 0, k: 0 };

    pub fn new(j: u32, k: i32) -> Self {
        Irrep { j, k }
    }

    pub fn dim(&self) -> u64 {
        self.j as u64 + 1
    }

    /// Total weight `j + 2k` (degree of the eigenvalues in the Satake
    /// parameters).
    pub fn weight(&self) -> i64 {
        self.j as i64 + 2 * self.k as i64
    }

    pub fn dual(&self) -> Irrep {
        Irrep {
            j: self.j,
            k: -(self.j as i32) - self.k,
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.j, self.k) {
            (0, 0) => write!(f, "1"),
            (j, 0) => write!(f, "sym{j}"),
            (0, k) => write!(f, "det^{k}"),
            (j, k) => write!(f, "sym{j}.det^{k}"),
        }
    }
}

/// One constituent of a decomposition, with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrredPart {
    pub first: Irrep,
    pub second: Option<Irrep>,
    pub mult: u32,
}

impl IrredPart {
    pub fn dim(&self) -> u64 {
        self.first.dim() * self.second.map_or(1, |s| s.dim())
    }

    /// The character of one copy of this constituent.
    pub fn char_of(&self) -> CharPoly {
        let a = irreducible_char(self.first.j, self.first.k, 1).expect("factor 1 is valid");
        match self.second {
            None => a,
            Some(s) => {
                let b = irreducible_char(s.j, s.k, 1).expect("factor 1 is valid");
                external_product(&a, &b).expect("both single-factor")
            }
        }
    }
}

impl fmt::Display for IrredPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult != 1 {
            write!(f, "{}*", self.mult)?;
        }
        match self.second {
            None => write!(f, "{}", self.first),
            Some(s) => write!(f, "({} x {})", self.first, s),
        }
    }
}

/// A formal sum of irreducibles, sorted and without repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrredDecomp {
    factors: u8,
    parts: Vec<IrredPart>,
}

impl IrredDecomp {
    /// Builds a decomposition from parts, merging repeats.
    pub fn from_parts(factors: u8, parts: impl IntoIterator<Item = IrredPart>) -> Result<Self> {
        check_factors(factors)?;
        let mut merged: BTreeMap<(Irrep, Option<Irrep>), u32> = BTreeMap::new();
        for p in parts {
            if p.second.is_some() != (factors == 2) {
                return Err(Error::FactorMismatch(factors, if p.second.is_some() { 2 } else { 1 }));
            }
            if p.mult > 0 {
                *merged.entry((p.first, p.second)).or_insert(0) += p.mult;
            }
        }
        let parts = merged
            .into_iter()
            .map(|((first, second), mult)| IrredPart {
                first,
                second,
                mult,
            })
            .collect();
        Ok(IrredDecomp { factors, parts })
    }

    /// A single irreducible on one torus.
    pub fn single(j: u32, k: i32) -> Self {
        IrredDecomp {
            factors: 1,
            parts: vec![IrredPart {
                first: Irrep::new(j, k),
                second: None,
                mult: 1,
            }],
        }
    }

    /// A single external product on two tori.
    pub fn pair(first: Irrep, second: Irrep) -> Self {
        IrredDecomp {
            factors: 2,
            parts: vec![IrredPart {
                first,
                second: Some(second),
                mult: 1,
            }],
        }
    }

    pub fn unit() -> Self {
        Self::single(0, 0)
    }

    pub fn factors(&self) -> u8 {
        self.factors
    }

    pub fn parts(&self) -> &[IrredPart] {
        &self.parts
    }

    pub fn dim(&self) -> u64 {
        self.parts.iter().map(|p| p.mult as u64 * p.dim()).sum()
    }

    /// Reassembles the character.
    pub fn to_char(&self) -> CharPoly {
        let mut acc = CharPoly::from_map_unchecked(self.factors, BTreeMap::new());
        for p in &self.parts {
            acc = acc.plus(&p.char_of().scaled(p.mult as i64));
        }
        acc
    }
}

impl fmt::Display for IrredDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Greedy highest-weight peeling. The lexicographically largest weight of an
/// effective Weyl-invariant character is dominant in every factor and is the
/// highest weight of some constituent.
pub fn decompose(x: &CharPoly) -> Result<IrredDecomp> {
    let mut rest = x.clone();
    let mut parts = Vec::new();
    while let Some((w, &m)) = rest.terms.iter().next_back() {
        if m < 0 {
            return Err(Error::NotEffective {
                weight: w.clone(),
                mult: m,
            });
        }
        let first = Irrep::new((w[0] - w[1]) as u32, w[1]);
        let second = (x.factors == 2).then(|| Irrep::new((w[2] - w[3]) as u32, w[3]));
        let part = IrredPart {
            first,
            second,
            mult: m as u32,
        };
        rest = rest.minus(&part.char_of().scaled(m));
        parts.push(part);
    }
    IrredDecomp::from_parts(x.factors, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(j: u32) -> CharPoly {
        irreducible_char(j, 0, 1).unwrap()
    }

    fn weights(c: &CharPoly) -> Vec<(Weight, i64)> {
        c.terms().iter().map(|(w, m)| (w.clone(), *m)).collect()
    }

    #[test]
    fn irreducible_weights() {
        assert_eq!(weights(&sym(0)), vec![(vec![0, 0], 1)]);
        assert_eq!(sym(1).dim(), 2);
        let c = irreducible_char(2, 1, 1).unwrap();
        assert_eq!(
            weights(&c),
            vec![(vec![1, 3], 1), (vec![2, 2], 1), (vec![3, 1], 1)]
        );
        assert_eq!(irreducible_char(1, 0, 3), Err(Error::BadFactorIndex(3)));
    }

    #[test]
    fn tensor_of_standard() {
        let t = tensor_chars(&sym(1), &sym(1)).unwrap();
        assert_eq!(
            weights(&t),
            vec![(vec![0, 2], 1), (vec![1, 1], 2), (vec![2, 0], 1)]
        );
        assert_eq!(tensor_chars(&CharPoly::unit(1).unwrap(), &sym(3)).unwrap(), sym(3));
        let ext = tensor_chars(&sym(1), &irreducible_char(1, 0, 2).unwrap()).unwrap();
        assert_eq!(ext.factors(), 2);
        assert_eq!(ext.dim(), 4);
    }

    #[test]
    fn weyl_check_rejects_asymmetric() {
        assert!(matches!(
            CharPoly::new(1, [(vec![1, 0], 1)]),
            Err(Error::NotWeylInvariant(_))
        ));
    }

    #[test]
    fn plethysm_examples() {
        let s2 = decompose(&plethysm(&sym(1), Plethysm::Sym2).unwrap()).unwrap();
        assert_eq!(s2, IrredDecomp::single(2, 0));
        let s = decompose(&plethysm(&sym(3), Plethysm::Sym2).unwrap()).unwrap();
        assert_eq!(s.to_string(), "sym2.det^2 + sym6");
        let a = decompose(&plethysm(&sym(4), Plethysm::Alt2).unwrap()).unwrap();
        assert_eq!(a.to_string(), "sym2.det^3 + sym6.det^1");
        let two = external_product(&sym(1), &sym(1)).unwrap();
        assert_eq!(plethysm(&two, Plethysm::Sym2), Err(Error::PlethysmOfProduct));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&sym(5)).unwrap(), IrredDecomp::single(5, 0));
        let d = decompose(&tensor_chars(&sym(4), &sym(2)).unwrap()).unwrap();
        assert_eq!(d.to_string(), "sym2.det^2 + sym4.det^1 + sym6");
        let d = decompose(&tensor_chars(&sym(1), &sym(2)).unwrap()).unwrap();
        assert_eq!(d.to_string(), "sym1.det^1 + sym3");
    }

    #[test]
    fn virtual_character_is_not_effective() {
        let v = sym(1).minus(&sym(3));
        assert!(matches!(decompose(&v), Err(Error::NotEffective { .. })));
    }

    #[test]
    fn dual_of_irrep_matches_character() {
        let r = Irrep::new(3, 2);
        let c = irreducible_char(3, 2, 1).unwrap().dual();
        assert_eq!(decompose(&c).unwrap(), IrredDecomp::single(r.dual().j, r.dual().k));
    }
}
