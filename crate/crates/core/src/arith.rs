//! Small integer helpers: sieves, factorization, divisor counts.

/// Smallest-prime-factor table for `0..=n` (`spf[0] = spf[1] = 0`).
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|(_, e)| *e == 1)
}

/// `d_k(n)`, the number of ordered factorizations into `k` factors.
pub fn divisor_k(n: u64, k: u32) -> f64 {
    factorize(n)
        .iter()
        .map(|&(_, e)| {
            // binomial(e + k - 1, k - 1)
            let mut v = 1.0;
            for i in 1..k as u64 {
                v *= (e as u64 + i) as f64 / i as f64;
            }
            v
        })
        .product()
}

/// Largest `e` with `p^e <= x`.
pub fn max_power(p: u64, x: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    while q <= x {
        e += 1;
        match q.checked_mul(p) {
            Some(v) => q = v,
            None => break,
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_factor() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(spf_table(12)[12], 2);
        assert_eq!(max_power(2, 1000), 9);
        assert_eq!(divisor_k(12, 2), 6.0);
        assert!(is_squarefree(30) && !is_squarefree(12));
    }
}
