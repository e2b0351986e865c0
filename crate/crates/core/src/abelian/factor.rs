//! Integer factorization for invariant-chain arithmetic: trial division up
//! to 10^6, Miller-Rabin, and Brent's cycle variant of Pollard rho for the
//! occasional large cofactor.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Deterministic Miller-Rabin bases; valid for all n < 3.3 * 10^24.
/// Larger inputs fall back to the same fixed bases, which is fine for the
/// catalog-scale integers this library handles.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    // small trial division shortcut
    for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let bp = BigUint::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }

    // write n-1 = d * 2^s
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    'bases: for a in MR_BASES {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as a map prime -> exponent.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    if n <= BigUint::one() {
        return out;
    }
    // trial division up to 10^6
    let mut p = 2u64;
    while p <= 1_000_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            *out.entry(bp.clone()).or_insert(0) += 1;
            n /= &bp;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n.is_one() {
        return out;
    }
    if &n < &BigUint::from(1_000_000_000_000u64) || is_prime(&n) {
        // below 10^12 the remaining cofactor has no factor <= 10^6 squared,
        // hence is prime
        *out.entry(n).or_insert(0) += 1;
        return out;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

/// Brent's variant of Pollard rho; returns a nontrivial divisor of a
/// composite odd input.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let step = |v: &BigUint| (v * v + &c) % n;
        while d.is_one() {
            x = step(&x);
            y = step(&step(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += &one;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 101, 7919, 999983];
        let composites = [1u64, 4, 6, 9, 15, 91, 561, 999981];
        for p in primes {
            assert!(is_prime(&b(p)), "{p} should be prime");
        }
        for c in composites {
            assert!(!is_prime(&b(c)), "{c} should not be prime");
        }
    }

    #[test]
    fn primality_carmichael() {
        // strong pseudoprime stress: Carmichael numbers
        for c in [561u64, 1105, 1729, 2465, 2821, 6601, 825265] {
            assert!(!is_prime(&b(c)));
        }
    }

    #[test]
    fn factor_roundtrip() {
        for n in [2u64, 12, 360, 7920, 95040, 1 << 20, 999999937 * 2] {
            let f = factorize(&b(n));
            let mut prod = BigUint::one();
            for (p, e) in &f {
                assert!(is_prime(p));
                prod *= p.pow(*e);
            }
            assert_eq!(prod, b(n));
        }
    }

    #[test]
    fn factor_large_semiprime() {
        // forces the rho path: product of two primes > 10^6
        let p = b(1_000_003);
        let q = b(1_000_033);
        let f = factorize(&(&p * &q));
        assert_eq!(f.len(), 2);
        assert_eq!(f[&p], 1);
        assert_eq!(f[&q], 1);
    }
}
