//! Exact q-expansions of level-one eigenforms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes_up_to;
use crate::error::{Error, Result};

/// Weights with a one-dimensional level-one cusp space.
pub const EIGEN_WEIGHTS: [u32; 5] = [12, 16, 18, 20, 22];

/// `sum a_n q^n` for `1 <= n <= cutoff`; `coeffs[0]` is unused and zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformQExpansion {
    pub weight: u32,
    pub coeffs: Vec<BigInt>,
}

impl NewformQExpansion {
    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn a(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn prime_coeffs(&self) -> BTreeMap<u64, BigInt> {
        primes_up_to(self.cutoff())
            .into_iter()
            .map(|p| (p, self.coeffs[p as usize].clone()))
            .collect()
    }

    /// Checks `a_1 = 1`, multiplicativity on coprime pairs and the prime
    /// power recursion, for every index up to the cutoff.
    pub fn check_hecke(&self) -> Result<()> {
        let x = self.cutoff();
        if !self.coeffs[1].is_one() {
            return Err(Error::InvariantError("a_1 != 1".into()));
        }
        let spf = crate::arith::spf_table(x);
        for n in 2..=x {
            let p = spf[n] as usize;
            let mut q = p;
            while n % (q * p) == 0 {
                q *= p;
            }
            if q != n {
                let prod = &self.coeffs[q] * &self.coeffs[n / q];
                if prod != self.coeffs[n] {
                    return Err(Error::InvariantError(format!("a_{n} != a_{q} a_{}", n / q)));
                }
            } else if n != p {
                let s = BigInt::from(p).pow(self.weight - 1);
                let expect = &self.coeffs[p] * &self.coeffs[n / p] - s * &self.coeffs[n / p / p];
                if expect != self.coeffs[n] {
                    return Err(Error::InvariantError(format!(
                        "prime power recursion fails at {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `prod_(n>=1) (1 - q^n)^3 = sum_m (-1)^m (2m+1) q^(m(m+1)/2)`, up to `q^len-1`.
fn jacobi_cube(len: usize) -> Vec<(usize, i128)> {
    let mut out = Vec::new();
    let mut m = 0usize;
    loop {
        let e = m * (m + 1) / 2;
        if e >= len {
            break;
        }
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        out.push((e, sign * (2 * m as i128 + 1)));
        m += 1;
    }
    out
}

/// `g^k` for a sparse series `g` with `g_0 = 1`, through
/// `n f_n = sum_j ((k + 1) j - n) g_j f_(n-j)`.
fn sparse_power(g: &[(usize, i128)], k: i128, len: usize) -> Vec<i128> {
    let mut f = vec![0i128; len];
    if len == 0 {
        return f;
    }
    f[0] = 1;
    for n in 1..len {
        let mut acc = 0i128;
        for &(j, gj) in g.iter().skip(1) {
            if j > n {
                break;
            }
            let w = (k + 1) * j as i128 - n as i128;
            let term = gj
                .checked_mul(w)
                .and_then(|x| x.checked_mul(f[n - j]))
                .expect("coefficient overflow");
            acc = acc.checked_add(term).expect("coefficient overflow");
        }
        f[n] = acc / n as i128;
    }
    f
}

/// `Delta = q prod (1 - q^n)^24` as the eighth power of the sparse Jacobi
/// series for `prod (1 - q^n)^3`.
pub fn delta_q_expansion(cutoff: usize) -> NewformQExpansion {
    let len = cutoff.max(1); // series in q^0..q^(cutoff-1)
    let c24 = sparse_power(&jacobi_cube(len), 8, len);
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(c24.iter().map(|v| BigInt::from(*v)));
    NewformQExpansion { weight: 12, coeffs }
}

/// Bernoulli numbers `B_0..B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `sigma_(k)(n)` for `n = 0..len-1` (entry 0 unused).
fn sigma_table(k: u32, len: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); len];
    for d in 1..len {
        let dk = BigInt::from(d).pow(k);
        let mut m = d;
        while m < len {
            s[m] += &dk;
            m += d;
        }
    }
    s
}

/// Normalized Eisenstein series `E_k = 1 - (2k / B_k) sum sigma_(k-1)(n) q^n`
/// (`E_0 = 1`), coefficients of `q^0..q^(len-1)`.
pub fn eisenstein_series(k: u32, len: usize) -> Result<Vec<BigInt>> {
    if k == 0 {
        let mut v = vec![BigInt::zero(); len];
        if len > 0 {
            v[0] = BigInt::one();
        }
        return Ok(v);
    }
    if k < 4 || k % 2 == 1 {
        return Err(Error::UnsupportedWeight(k));
    }
    let b = bernoulli(k as usize);
    let c = -BigRational::from_integer(BigInt::from(2 * k)) / &b[k as usize];
    if !c.is_integer() {
        return Err(Error::UnsupportedWeight(k));
    }
    let c = c.to_integer();
    let sig = sigma_table(k - 1, len);
    let mut out: Vec<BigInt> = sig.into_iter().map(|s| &c * s).collect();
    if len > 0 {
        out[0] = BigInt::one();
    }
    Ok(out)
}

fn check_weight(k: u32) -> Result<()> {
    if EIGEN_WEIGHTS.contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedWeight(k))
    }
}

/// The normalized eigenform `Delta * E_(k-12)`.
pub fn level_one_eigenform(k: u32, cutoff: usize) -> Result<NewformQExpansion> {
    check_weight(k)?;
    let delta = delta_q_expansion(cutoff);
    if k == 12 {
        return Ok(delta);
    }
    let e = eisenstein_series(k - 12, cutoff + 1)?;
    let mut coeffs = vec![BigInt::zero(); cutoff + 1];
    for n in 1..=cutoff {
        let mut acc = BigInt::zero();
        for i in 1..=n {
            acc += &delta.coeffs[i] * &e[n - i];
        }
        coeffs[n] = acc;
    }
    Ok(NewformQExpansion { weight: k, coeffs })
}

/// Prime coefficients `a_p` of `Delta * E_(k-12)` for `p <= pmax`, computing
/// only the needed convolution entries.
pub fn level_one_prime_coeffs(k: u32, pmax: usize) -> Result<BTreeMap<u64, BigInt>> {
    check_weight(k)?;
    let delta = delta_q_expansion(pmax);
    if k == 12 {
        return Ok(delta.prime_coeffs());
    }
    let e = eisenstein_series(k - 12, pmax + 1)?;
    Ok(primes_up_to(pmax)
        .into_iter()
        .map(|p| {
            let n = p as usize;
            let acc = (1..=n).fold(BigInt::zero(), |acc, i| acc + &delta.coeffs[i] * &e[n - i]);
            (p, acc)
        })
        .collect())
}

/// `|a_p| <= 2 p^((k-1)/2)`, checked in floating point.
pub fn deligne_bound_holds(ap: &BigInt, p: u64, k: u32) -> bool {
    let a = ap.abs().to_f64().unwrap_or(f64::INFINITY);
    a <= 2.0 * (p as f64).powf((k as f64 - 1.0) / 2.0) * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        let d = delta_q_expansion(12);
        let v: Vec<i64> = d.coeffs[1..].iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(
            v,
            vec![1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944]
        );
    }

    #[test]
    fn weight_16_coefficients() {
        let f = level_one_eigenform(16, 8).unwrap();
        assert_eq!(f.coeffs[1], BigInt::from(1));
        assert_eq!(f.coeffs[2], BigInt::from(216));
        assert_eq!(&f.coeffs[4], &(BigInt::from(216 * 216) - BigInt::from(1 << 15)));
        f.check_hecke().unwrap();
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(12);
        assert_eq!(b[2].to_string(), "1/6");
        assert_eq!(b[4].to_string(), "-1/30");
        assert_eq!(b[12].to_string(), "-691/2730");
    }

    #[test]
    fn eisenstein_constants() {
        assert_eq!(eisenstein_series(4, 3).unwrap()[1], BigInt::from(240));
        assert_eq!(eisenstein_series(6, 3).unwrap()[1], BigInt::from(-504));
        assert!(level_one_eigenform(14, 5).is_err());
    }

    #[test]
    fn prime_only_path_agrees() {
        for k in EIGEN_WEIGHTS {
            let full = level_one_eigenform(k, 60).unwrap();
            assert_eq!(full.prime_coeffs(), level_one_prime_coeffs(k, 60).unwrap());
        }
    }
}
