//! Complex log-gamma in double precision.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `B_2k / (2k (2k - 1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT_TO: f64 = 15.0;

/// `log Gamma(z)` up to an integer multiple of `2 pi i`, so `exp` of it is
/// exact `Gamma(z)` and the real part is `log |Gamma(z)|`. Poles give
/// infinite real part.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// `log Gamma_R(s) = log(pi^(-s/2) Gamma(s/2))`.
pub fn ln_gamma_r(s: Complex64) -> Complex64 {
    -0.5 * s * PI.ln() + ln_gamma(s / 2.0)
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorials_and_half() {
        assert!((gamma(c(5.0, 0.0)).re - 24.0).abs() < 1e-12);
        assert!((gamma(c(0.5, 0.0)).re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)).re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(ln_gamma(c(-3.0, 0.0)).re.is_infinite());
    }

    #[test]
    fn half_line_modulus() {
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        for y in [0.3, 2.0, 9.5337, 40.0] {
            let lhs = 2.0 * ln_gamma(c(0.5, y)).re;
            let rhs = PI.ln() - (PI * y).cosh().ln();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "{y}");
        }
    }

    #[test]
    fn recurrence_in_the_plane() {
        for z in [c(0.25, 3.0), c(-2.7, 0.4), c(7.0, -11.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "{z}");
        }
    }
}
