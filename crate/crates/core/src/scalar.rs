//! Coefficient rings for local factor computations.
//!
//! Exact work happens in [`Surd`], the field `Q(sqrt(p))` for a single prime
//! `p`, which is closed under the unitary normalization of level-one
//! holomorphic Satake data (`alpha_p / p^{(k-1)/2}`). Floating work uses `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient tolerance used when comparing floating-point local data.
pub const FLOAT_COEFF_TOL: f64 = 1e-9;

/// Commutative ring with unit; enough for polynomial products.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
}

/// Field operations needed by the companion-matrix functor and the power
/// series machinery.
pub trait Coeff: Ring + fmt::Display {
    fn from_bigint(v: &BigInt) -> Self;
    /// Division by a nonzero integer. Exact types assume the quotient is
    /// representable (it always is over a field).
    fn div_int(&self, k: i64) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Square root inside the coefficient field, if it exists. `prime` names
    /// the only radical exact types may adjoin.
    fn sqrt_in(&self, prime: u64) -> Option<Self>;
    /// Exact equality for exact types; relative/absolute tolerance
    /// [`FLOAT_COEFF_TOL`] for floats.
    fn approx_eq(&self, other: &Self) -> bool;
    /// Sign, with floats within `FLOAT_COEFF_TOL` of zero counted as zero.
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
    /// Integer power allowing negative exponents.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|v| v.pow((-e) as u32))
        }
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Coeff for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn div_int(&self, k: i64) -> Self {
        self / k as f64
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn sqrt_in(&self, _prime: u64) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= FLOAT_COEFF_TOL * scale
    }
    fn sign(&self) -> Ordering {
        if *self < -FLOAT_COEFF_TOL {
            Ordering::Less
        } else if *self > FLOAT_COEFF_TOL {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// An element `rational + radical * sqrt(base)` of `Q(sqrt(base))`.
///
/// `base` is zero exactly when `radical` is zero, so equal values compare
/// equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: BigRational,
    radical: BigRational,
    base: u64,
}

impl Surd {
    pub fn from_rational(r: BigRational) -> Self {
        Surd {
            rational: r,
            radical: BigRational::zero(),
            base: 0,
        }
    }

    pub fn new(rational: BigRational, radical: BigRational, base: u64) -> Self {
        if radical.is_zero() || base == 0 {
            return Self::from_rational(rational);
        }
        Surd {
            rational,
            radical,
            base,
        }
        .normalized()
    }

    /// `sqrt(base)` itself; `base` must be squarefree (a prime in practice).
    pub fn sqrt_of(base: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), base)
    }

    fn normalized(self) -> Self {
        if self.base == 1 {
            return Self::from_rational(self.rational + self.radical);
        }
        if self.radical.is_zero() {
            return Self::from_rational(self.rational);
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    /// The value as a rational, if it has no radical part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    fn join_base(a: &Surd, b: &Surd) -> u64 {
        match (a.base, b.base) {
            (0, x) | (x, 0) => x,
            (x, y) if x == y => x,
            (x, y) => panic!("cannot combine elements of Q(sqrt({x})) and Q(sqrt({y}))"),
        }
    }

    fn conjugate(&self) -> Surd {
        Surd {
            rational: self.rational.clone(),
            radical: -self.radical.clone(),
            base: self.base,
        }
    }

    /// Field norm `a^2 - b^2 base`.
    fn norm(&self) -> BigRational {
        let b2 = &self.radical * &self.radical;
        &self.rational * &self.rational - b2 * BigRational::from_integer(BigInt::from(self.base))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            write!(f, "{}", self.rational)
        } else if self.rational.is_zero() {
            write!(f, "{}*sqrt({})", self.radical, self.base)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational, self.radical, self.base)
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let base = Surd::join_base(&self, &o);
        Surd::new(self.rational + o.rational, self.radical + o.radical, base)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let base = Surd::join_base(&self, &o);
        Surd::new(self.rational - o.rational, self.radical - o.radical, base)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let base = Surd::join_base(&self, &o);
        let d = BigRational::from_integer(BigInt::from(base));
        let rational = &self.rational * &o.rational + &self.radical * &o.radical * d;
        let radical = &self.rational * &o.radical + &self.radical * &o.rational;
        Surd::new(rational, radical, base)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            rational: -self.rational,
            radical: -self.radical,
            base: self.base,
        }
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_negative() {
        Ordering::Less
    } else if r.is_zero() {
        Ordering::Equal
    } else {
        Ordering::Greater
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt_exact(r: &BigRational) -> Option<BigRational> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

impl Ring for Surd {
    fn zero() -> Self {
        Surd::from_rational(BigRational::zero())
    }
    fn one() -> Self {
        Surd::from_rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Surd::from_rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Coeff for Surd {
    fn from_bigint(v: &BigInt) -> Self {
        Surd::from_rational(BigRational::from_integer(v.clone()))
    }
    fn div_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        Surd::new(&self.rational / &k, &self.radical / &k, self.base)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Surd::new(&c.rational / &n, &c.radical / &n, c.base))
    }
    fn sqrt_in(&self, prime: u64) -> Option<Self> {
        let r = self.as_rational()?;
        if r.is_negative() {
            return None;
        }
        if let Some(s) = rational_sqrt_exact(r) {
            return Some(Surd::from_rational(s));
        }
        // r = q^2 * prime  =>  sqrt(r) = q * sqrt(prime)
        let reduced = r / BigRational::from_integer(BigInt::from(prime));
        let q = rational_sqrt_exact(&reduced)?;
        Some(Surd::new(BigRational::zero(), q, prime))
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn sign(&self) -> Ordering {
        let a = rational_sign(&self.rational);
        let b = rational_sign(&self.radical);
        match (a, b) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // opposite signs: compare a^2 with b^2 * base
                let a2 = &self.rational * &self.rational;
                let b2 = &self.radical * &self.radical
                    * BigRational::from_integer(BigInt::from(self.base));
                match a2.cmp(&b2) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
    fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radical.is_zero() {
            return a;
        }
        a + self.radical.to_f64().unwrap_or(f64::NAN) * (self.base as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn surd_arithmetic_closes() {
        let r2 = Surd::sqrt_of(2);
        assert_eq!(r2.clone() * r2.clone(), Surd::from_i64(2));
        let x = Surd::new(q(1, 1), q(1, 1), 2);
        let inv = x.inv().unwrap();
        assert_eq!(x * inv, Surd::one());
    }

    #[test]
    fn surd_sign_of_mixed_terms() {
        // 3 - 2 sqrt(2) > 0, 1 - sqrt(2) < 0
        assert_eq!(Surd::new(q(3, 1), q(-2, 1), 2).sign(), Ordering::Greater);
        assert_eq!(Surd::new(q(1, 1), q(-1, 1), 2).sign(), Ordering::Less);
    }

    #[test]
    fn sqrt_of_odd_prime_power() {
        let s = Surd::from_i64(2048); // 2^11
        let r = s.sqrt_in(2).unwrap();
        assert_eq!(r.clone() * r, Surd::from_i64(2048));
        assert!(!Surd::from_i64(6).sqrt_in(2).is_some());
    }
}
