//! Integer utilities: primality, factorization of word-sized integers,
//! prime sieves and exact perfect-power tests on big integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on big integers: exact below `2^64`, probable-prime
/// with the first 24 prime bases above.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime(m);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in primes_up_to(89) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `≤ bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
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

/// Brent's variant of Pollard rho; returns a nontrivial factor of the
/// composite `n`.
fn rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = 2u64;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization of `n > 0` as sorted `(prime, exponent)` pairs:
/// trial division to `10⁶`, then Pollard rho.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0);
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(e) => e.1 += 1,
        None => out.push((p, 1)),
    };
    let mut d = 2u64;
    while d <= 1_000_000 && d * d <= n {
        while n.is_multiple_of(d) {
            push(d, &mut out);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let f = rho(m);
        stack.push(f);
        stack.push(m / f);
    }
    out.sort_unstable();
    out
}

/// Factors `|n|` when it fits in 64 bits.
pub fn factor_bigint(n: &BigInt) -> Option<Vec<(BigUint, u32)>> {
    let m = n.magnitude().to_u64()?;
    if m == 0 {
        return None;
    }
    Some(
        factor_u64(m)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect(),
    )
}

/// Exact `k`-th root of a nonnegative integer, if there is one.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

pub fn is_perfect_power(n: &BigUint, k: u32) -> bool {
    exact_root(n, k).is_some()
}

/// Product of `p^e` over a factorization.
pub fn expand(factors: &[(BigUint, u32)]) -> BigUint {
    factors
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn big_primality() {
        let m61 = BigUint::from((1u64 << 61) - 1);
        assert!(is_prime_big(&m61));
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime_big(&m127));
        assert!(!is_prime_big(&(&m127 * 3u32)));
        assert!(!is_prime_big(&(&m61 * &m61)));
        assert!(!is_prime_big(&BigUint::from(1u32)));
    }

    #[test]
    fn primality() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), brute(n), "n = {n}");
        }
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn sieve_matches_primality() {
        let ps = primes_up_to(1000);
        assert_eq!(ps.len(), 168);
        assert!(ps.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn factors_semiprime_beyond_trial_range() {
        let p = 1_000_003u64;
        let q = 999_999_937u64;
        assert_eq!(factor_u64(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(factor_u64(2u64.pow(10) * 283), vec![(2, 10), (283, 1)]);
        assert_eq!(factor_u64(1), vec![]);
    }

    #[test]
    fn perfect_powers() {
        assert!(is_perfect_power(&BigUint::from(2401u32), 4));
        assert!(!is_perfect_power(&BigUint::from(2400u32), 4));
        assert_eq!(exact_root(&BigUint::from(27u32), 3), Some(BigUint::from(3u32)));
    }

    proptest! {
        #[test]
        fn factorization_recombines(n in 1u64..u64::MAX / 2) {
            let f = factor_u64(n);
            let prod: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            prop_assert_eq!(prod, n as u128);
            prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}
