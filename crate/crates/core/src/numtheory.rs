//! Small-integer number theory shared by the finite-field and group modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, as (prime, exponent) pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// The `n`-th prime not contained in `excluded`, counting from 1.
pub fn nth_prime_outside(n: usize, excluded: &[u64]) -> u64 {
    let mut seen = 0;
    let mut c = 1u64;
    loop {
        c += 1;
        if is_prime(c) && !excluded.contains(&c) {
            seen += 1;
            if seen == n {
                return c;
            }
        }
    }
}

/// Generalised CRT for `x ≡ r₁ (mod m₁)`, `x ≡ r₂ (mod m₂)`.
/// Returns `(r, lcm)` or `None` if the congruences are incompatible.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = m1.gcd(m2);
    let diff = r2 - r1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let l = m1.lcm(m2);
    if l.is_one() {
        return Some((BigInt::zero(), l));
    }
    let (_, inv, _) = crate::intlinalg::ext_gcd(&(m1 / &g), &(m2 / &g));
    let k = ((diff / &g) * inv).mod_floor(&(m2 / &g));
    Some(((r1 + m1 * k).mod_floor(&l), l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(nth_prime_outside(1, &[2]), 3);
        assert_eq!(nth_prime_outside(2, &[2]), 5);
    }

    #[test]
    fn crt() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(crt_pair(&b(1), &b(3), &b(2), &b(5)), Some((b(7), b(15))));
        assert_eq!(crt_pair(&b(1), &b(4), &b(0), &b(6)), None);
        assert_eq!(crt_pair(&b(1), &b(4), &b(3), &b(6)), Some((b(9), b(12))));
    }
}
