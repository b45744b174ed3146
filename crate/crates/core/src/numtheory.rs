//! Primality, factorization and sums of two squares for 64-bit integers.

use num_integer::{Integer, Roots};

const TRIAL_LIMIT: u64 = 1_000_000;
const CORNACCHIA_THRESHOLD: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs; `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor(0)");
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Some `(a, b)` with `a^2 + b^2 = p` for a prime `p = 2` or `p = 1 mod 4`.
pub fn two_squares(p: u64) -> Option<(u64, u64)> {
    if p == 2 {
        return Some((1, 1));
    }
    if p % 4 != 1 || !is_prime(p) {
        return None;
    }
    if p < CORNACCHIA_THRESHOLD {
        return (1..=p.sqrt()).find_map(|a| {
            let rest = p - a * a;
            let b = rest.sqrt();
            (b * b == rest).then_some((a, b))
        });
    }
    // Cornacchia: x^2 = -1 mod p, then Euclid on (p, x) until below sqrt(p).
    let x = (2..p)
        .map(|c| pow_mod(c, (p - 1) / 4, p))
        .find(|&x| mul_mod(x, x, p) == p - 1)?;
    let limit = p.sqrt();
    let (mut r0, mut r1) = (p, x);
    while r1 > limit {
        (r0, r1) = (r1, r0 % r1);
    }
    let rest = p - r1 * r1;
    let b = rest.sqrt();
    (b * b == rest).then_some((r1, b))
}

/// The representation `p = a^2 + b^2` with `a` odd and positive, `b >= 0`
/// and `4 | b`, for a prime `p = 1 mod 8`.
pub fn normalized_two_squares(p: u64) -> Option<(u64, u64)> {
    if p % 8 != 1 {
        return None;
    }
    let (a, b) = two_squares(p)?;
    let (a, b) = if a % 2 == 1 { (a, b) } else { (b, a) };
    debug_assert_eq!(b % 4, 0);
    Some((a, b))
}

/// 2-adic valuation and odd part of a non-zero integer.
pub fn split_two_power(n: i128) -> (u32, i128) {
    assert!(n != 0);
    let t = n.trailing_zeros();
    (t, n >> t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes_against_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), p, "{n}");
        }
    }

    #[test]
    fn large_primes_and_composites() {
        assert!(is_prime(1_000_000_007));
        assert!(is_prime((1u64 << 61) - 1));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(!is_prime(1_000_000_007 * 998_244_353));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(2048 * 9), vec![(2, 11), (3, 2)]);
        assert_eq!(factor(1_000_000_007 * 998_244_353), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        let big = 4_294_967_291u64 * 4_294_967_279;
        assert_eq!(factor(big), vec![(4_294_967_279, 1), (4_294_967_291, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn two_square_examples() {
        assert_eq!(normalized_two_squares(17), Some((1, 4)));
        assert_eq!(normalized_two_squares(73), Some((3, 8)));
        assert_eq!(normalized_two_squares(89), Some((5, 8)));
        assert_eq!(normalized_two_squares(113), Some((7, 8)));
        assert_eq!(two_squares(7), None);
        assert_eq!(two_squares(21), None);
    }

    #[test]
    fn cornacchia_above_threshold() {
        let mut checked = 0;
        for start in [1_000_001u64, 1_000_000_000_001, 1 << 62] {
            for p in (start..).filter(|&p| p % 4 == 1 && is_prime(p)).take(20) {
                let (a, b) = two_squares(p).unwrap();
                assert_eq!(a as u128 * a as u128 + b as u128 * b as u128, p as u128);
                checked += 1;
            }
        }
        assert_eq!(checked, 60);
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(n in 1u64..u64::MAX / 2) {
            let f = factor(n);
            let prod = f.iter().fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e));
            prop_assert_eq!(prod, n as u128);
            prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}
