//! Independent reference values: Euler-Maclaurin for Hurwitz zeta (hence
//! zeta and quadratic Dirichlet L-functions on the real line) and the class
//! number formula by counting reduced binary quadratic forms.

use std::f64::consts::PI;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::forms::kronecker::{is_fundamental, kronecker};

/// `B_2j / (2j)!` for `j = 1..=10`.
const BERNOULLI_OVER_FACT: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
];

const EM_TERMS: usize = 30;

/// The Euler-Maclaurin sum for `zeta(s, a)` without its `n^(1-s)/(s-1)`
/// term, together with `n`.
fn em_head(s: f64, a: f64) -> (f64, f64) {
    let n = EM_TERMS as f64 + a;
    let mut head = 0.0;
    for k in 0..EM_TERMS {
        head += (k as f64 + a).powf(-s);
    }
    head += 0.5 * n.powf(-s);
    let mut rising = s;
    let mut pow = n.powf(-s - 1.0);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        head += b * rising * pow;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        pow /= n * n;
    }
    (head, n)
}

/// `(s - 1) zeta(s, a)` for real `s > 0`, finite at `s = 1`.
pub fn hurwitz_pole_removed(s: f64, a: f64) -> f64 {
    let (head, n) = em_head(s, a);
    (s - 1.0) * head + n.powf(1.0 - s)
}

/// `zeta(s, a) - 1/(s - 1)`, finite at `s = 1`.
pub fn hurwitz_regular(s: f64, a: f64) -> f64 {
    let (head, n) = em_head(s, a);
    let t = (1.0 - s) * n.ln();
    let tail = if t == 0.0 {
        -n.ln()
    } else {
        -n.ln() * t.exp_m1() / t
    };
    head + tail
}

/// `zeta(s, a)` for real `s > 0`, `s != 1`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    hurwitz_pole_removed(s, a) / (s - 1.0)
}

pub fn zeta(s: f64) -> f64 {
    hurwitz_zeta(s, 1.0)
}

/// `(s - 1) zeta(s)`.
pub fn zeta_pole_removed(s: f64) -> f64 {
    hurwitz_pole_removed(s, 1.0)
}

/// `L(s, chi_D) = q^-s sum_r chi_D(r) zeta(s, r / q)` for a nontrivial
/// quadratic character; the character sums to zero, so the pole parts of
/// the Hurwitz values cancel.
pub fn dirichlet_l(d: i64, s: f64) -> Result<f64> {
    if d == 1 || !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let q = d.unsigned_abs();
    let mut acc = 0.0;
    for r in 1..=q {
        let chi = kronecker(d, r)?;
        if chi != 0 {
            acc += chi as f64 * hurwitz_regular(s, r as f64 / q as f64);
        }
    }
    Ok((q as f64).powf(-s) * acc)
}

/// Number of reduced primitive forms `(a, b, c)` of discriminant `d < 0`.
pub fn class_number(d: i64) -> Result<u64> {
    if d >= 0 || !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let mut h = 0;
    let mut a: i64 = 1;
    while 3 * a * a <= -d {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    Ok(h)
}

/// `2 pi h / (w sqrt|D|)`, which equals `L(1, chi_D)`.
pub fn class_number_oracle(d: i64) -> Result<f64> {
    if !(-10_000..0).contains(&d) {
        return Err(Error::NotFundamental(d));
    }
    let h = class_number(d)? as f64;
    let w = match d {
        -3 => 6.0,
        -4 => 4.0,
        _ => 2.0,
    };
    Ok(2.0 * PI * h / (w * (-d as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(0.5) + 1.4603545088095868).abs() < 1e-13);
        assert!((zeta_pole_removed(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn class_numbers() {
        let hs: Vec<u64> = [-3, -4, -7, -8, -23, -47, -163, -5]
            .into_iter()
            .filter_map(|d| class_number(d).ok())
            .collect();
        assert_eq!(hs, vec![1, 1, 1, 1, 3, 5, 1]);
        assert_eq!(class_number(-12), Err(Error::NotFundamental(-12)));
    }

    #[test]
    fn oracle_examples() {
        assert!((class_number_oracle(-4).unwrap() - PI / 4.0).abs() < 1e-15);
        let v = class_number_oracle(-3).unwrap();
        assert!((v - 2.0 * PI / (6.0 * 3f64.sqrt())).abs() < 1e-15);
        let v = class_number_oracle(-23).unwrap();
        assert!((v - 3.0 * 2.0 * PI / (2.0 * 23f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_agrees_with_class_numbers() {
        for d in [-3, -4, -7, -8, -11, -23, -163] {
            let l = dirichlet_l(d, 1.0).unwrap();
            let o = class_number_oracle(d).unwrap();
            assert!((l - o).abs() < 1e-9, "{d}: {l} vs {o}");
        }
        // L(2, chi_-4) is Catalan's constant
        assert!((dirichlet_l(-4, 2.0).unwrap() - 0.915_965_594_177_219).abs() < 1e-14);
    }
}
