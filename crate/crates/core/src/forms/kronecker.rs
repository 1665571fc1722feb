//! Quadratic Dirichlet characters via the Kronecker symbol.

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

/// `D = 1`, or `D = 1 mod 4` squarefree, or `D = 4m` with `m = 2, 3 mod 4`
/// squarefree.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(a),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Kronecker symbol `(a/n)` for any integer `a` and `n >= 1`.
pub fn kronecker_symbol(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result: i8 = 1;
    while n.is_multiple_of(2) {
        n /= 2;
        result *= match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => return 0,
        };
    }
    // Jacobi symbol (a/n) for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `(D/n)` for a fundamental discriminant `D`.
pub fn kronecker(d: i64, n: u64) -> Result<i8> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    Ok(kronecker_symbol(d, n))
}

/// The real primitive character of conductor `|D|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticCharacter {
    d: i64,
}

impl QuadraticCharacter {
    pub fn new(d: i64) -> Result<Self> {
        if !is_fundamental(d) {
            return Err(Error::NotFundamental(d));
        }
        Ok(QuadraticCharacter { d })
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn conductor(&self) -> u64 {
        self.d.unsigned_abs()
    }

    pub fn is_trivial(&self) -> bool {
        self.d == 1
    }

    /// Parity: 0 for even (`D > 0`), 1 for odd (`D < 0`).
    pub fn parity(&self) -> u8 {
        u8::from(self.d < 0)
    }

    pub fn value(&self, n: u64) -> i8 {
        kronecker_symbol(self.d, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(kronecker(-4, 3), Ok(-1));
        assert_eq!(kronecker(-4, 1), Ok(1));
        assert_eq!(kronecker(-3, 3), Ok(0));
        assert_eq!(kronecker(-8, 3), Ok(1));
        assert_eq!(kronecker(5, 2), Ok(-1));
        assert_eq!(kronecker(20, 3), Err(Error::NotFundamental(20)));
    }

    #[test]
    fn fundamental_discriminants() {
        for d in [1, -3, -4, -7, -8, -11, -23, -163, 5, 8, 12, -84] {
            assert!(is_fundamental(d), "{d}");
        }
        for d in [0, -1, 2, -12, 9, -16, 20] {
            assert!(!is_fundamental(d), "{d}");
        }
    }
}
