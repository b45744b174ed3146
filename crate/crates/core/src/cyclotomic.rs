//! Exact arithmetic in `Z[zeta_N] = Z[x] / Phi_N(x)`.
//!
//! Values are stored as coefficient vectors of length `phi(N)` in the power
//! basis `1, zeta, ..., zeta^{phi(N)-1}`, always reduced modulo the monic
//! cyclotomic polynomial, so equality is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// The ring `Z[zeta_N]`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloRing {
    n: u32,
    modulus: Vec<i64>,
    /// `powers[k]` is the reduced form of `zeta^k`, `0 <= k < N`.
    powers: Vec<Vec<i64>>,
}

impl CycloRing {
    pub fn new(n: u32) -> Arc<CycloRing> {
        assert!(n >= 1, "Z[zeta_0] is not defined");
        static RINGS: OnceLock<Mutex<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = rings.lock().unwrap().get(&n) {
            return Arc::clone(r);
        }
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then reduce the x^degree term.
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..degree - 1]);
            for (j, &m) in modulus[..degree].iter().enumerate() {
                next[j] -= top * m;
            }
            cur = next;
        }
        let ring = Arc::new(CycloRing { n, modulus, powers });
        rings.lock().unwrap().insert(n, Arc::clone(&ring));
        ring
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// `phi(N)`, the rank of the ring over `Z`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces `sum_k poly[k] x^k` (any length) into the ring.
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        if poly.len() < d {
            poly.resize(d, BigInt::zero());
            return poly;
        }
        for i in (d..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    poly[i - d + j] -= &c * m;
                }
            }
        }
        poly.truncate(d);
        poly
    }

    /// Parses the textual form written by `Display`, e.g. `3 - 2*z + z^2`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Cyclo> {
        let err = || Error::CycloParse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut poly: Vec<BigInt> = Vec::new();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coeff, power) = match body.find('z') {
                None => (body.parse::<BigInt>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let head = &body[..pos];
                    let coeff = match head {
                        "" => BigInt::one(),
                        h => h.strip_suffix('*').ok_or_else(err)?.parse::<BigInt>().map_err(|_| err())?,
                    };
                    let tail = &body[pos + 1..];
                    let power = match tail {
                        "" => 1,
                        t => t.strip_prefix('^').ok_or_else(err)?.parse::<usize>().map_err(|_| err())?,
                    };
                    (coeff, power)
                }
            };
            if poly.len() <= power {
                poly.resize(power + 1, BigInt::zero());
            }
            if negative {
                poly[power] -= coeff;
            } else {
                poly[power] += coeff;
            }
        }
        Ok(Cyclo { ring: Arc::clone(self), coeffs: self.reduce(poly) })
    }
}

/// An element of `Z[zeta_N]` in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    ring: Arc<CycloRing>,
    coeffs: Vec<BigInt>,
}

impl Cyclo {
    pub fn zero(ring: &Arc<CycloRing>) -> Cyclo {
        Cyclo { ring: Arc::clone(ring), coeffs: vec![BigInt::zero(); ring.degree()] }
    }

    pub fn one(ring: &Arc<CycloRing>) -> Cyclo {
        Cyclo::from_int(ring, 1)
    }

    pub fn from_int(ring: &Arc<CycloRing>, n: impl Into<BigInt>) -> Cyclo {
        let mut c = Cyclo::zero(ring);
        c.coeffs[0] = n.into();
        c
    }

    /// `zeta_N^k`, with `k` reduced modulo `N`.
    pub fn root_of_unity(ring: &Arc<CycloRing>, k: i64) -> Cyclo {
        let k = k.rem_euclid(ring.n as i64) as usize;
        Cyclo { ring: Arc::clone(ring), coeffs: ring.powers[k].iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// `sum_k weights[k] zeta^k` for `weights` of length `N`.
    pub fn from_power_sum<T>(ring: &Arc<CycloRing>, weights: &[T]) -> Cyclo
    where
        T: Clone + Into<BigInt>,
    {
        assert_eq!(weights.len(), ring.n as usize, "one weight per power of zeta");
        let mut coeffs = vec![BigInt::zero(); ring.degree()];
        for (power, w) in ring.powers.iter().zip(weights) {
            let w: BigInt = w.clone().into();
            if w.is_zero() {
                continue;
            }
            for (c, &p) in coeffs.iter_mut().zip(power) {
                if p != 0 {
                    *c += &w * p;
                }
            }
        }
        Cyclo { ring: Arc::clone(ring), coeffs }
    }

    /// From coefficients in the power basis (any length; reduced here).
    pub fn from_coeffs(ring: &Arc<CycloRing>, coeffs: Vec<BigInt>) -> Cyclo {
        Cyclo { ring: Arc::clone(ring), coeffs: ring.reduce(coeffs) }
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(n)` exactly when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Cyclo) -> Result<()> {
        if self.ring.n == other.ring.n {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.n, other.ring.n))
        }
    }

    pub fn checked_add(&self, other: &Cyclo) -> Result<Cyclo> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclo { ring: Arc::clone(&self.ring), coeffs })
    }

    pub fn checked_sub(&self, other: &Cyclo) -> Result<Cyclo> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Cyclo { ring: Arc::clone(&self.ring), coeffs })
    }

    pub fn checked_mul(&self, other: &Cyclo) -> Result<Cyclo> {
        self.same_ring(other)?;
        let d = self.ring.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Cyclo { ring: Arc::clone(&self.ring), coeffs: self.ring.reduce(prod) })
    }

    pub fn scale(&self, k: &BigInt) -> Cyclo {
        Cyclo { ring: Arc::clone(&self.ring), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplies by `zeta^k`.
    pub fn mul_root(&self, k: i64) -> Cyclo {
        self * &Cyclo::root_of_unity(&self.ring, k)
    }

    /// Divides every coefficient by `k`, or `None` if some division is inexact.
    pub fn div_exact(&self, k: &BigInt) -> Option<Cyclo> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Cyclo { ring: Arc::clone(&self.ring), coeffs })
    }

    /// Complex conjugation, `zeta -> zeta^{N-1}`.
    pub fn conjugate(&self) -> Cyclo {
        let n = self.ring.n as i64;
        let mut weights = vec![BigInt::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            weights[((n - i as i64) % n) as usize] += c;
        }
        Cyclo::from_power_sum(&self.ring, &weights)
    }

    pub fn pow(&self, mut e: u32) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Evaluates an integer polynomial (lowest degree first) at this value.
    pub fn eval_poly(&self, poly: &[i64]) -> Cyclo {
        poly.iter().rev().fold(Cyclo::zero(&self.ring), |acc, &c| &(&acc * self) + &Cyclo::from_int(&self.ring, c))
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[N={}]({})", self.ring.n, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { ring: Arc::clone(&self.ring), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    n: u32,
    #[serde(with = "crate::serde_int::vec")]
    coeffs: Vec<BigInt>,
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr { n: self.ring.n, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(serde::de::Error::custom("ring order must be positive"));
        }
        let ring = CycloRing::new(repr.n);
        if repr.coeffs.len() != ring.degree() {
            return Err(serde::de::Error::custom("coefficient vector has the wrong length"));
        }
        Ok(Cyclo { ring, coeffs: repr.coeffs })
    }
}

/// Gaussian integers `re + im * i` with machine-word parts, used where
/// `Z[zeta_4]` values are known to be small.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: i128,
    pub im: i128,
}

impl Mul for Gaussian {
    type Output = Gaussian;

    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Gaussian {
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };

    pub fn new(re: i128, im: i128) -> Gaussian {
        Gaussian { re, im }
    }

    pub fn conj(self) -> Gaussian {
        Gaussian { re: self.re, im: -self.im }
    }

    /// `x * conj(x) = re^2 + im^2`.
    pub fn norm(self) -> i128 {
        self.re * self.re + self.im * self.im
    }

    /// The same value in the generic ring `Z[zeta_4]`.
    pub fn to_cyclo(self) -> Cyclo {
        let ring = CycloRing::new(4);
        Cyclo::from_coeffs(&ring, vec![BigInt::from(self.re), BigInt::from(self.im)])
    }

    pub fn from_cyclo(c: &Cyclo) -> Option<Gaussian> {
        if c.ring().order() != 4 {
            return None;
        }
        Some(Gaussian { re: c.coeffs[0].to_i128()?, im: c.coeffs[1].to_i128()? })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn c(ring: &Arc<CycloRing>, v: &[i64]) -> Cyclo {
        Cyclo::from_coeffs(ring, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_1() {
        for n in 1..=40u32 {
            let mut prod = vec![1i64];
            for d in (1..=n).filter(|d| n % d == 0) {
                let p = cyclotomic_polynomial(d);
                let mut next = vec![0i64; prod.len() + p.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expected = vec![0i64; n as usize + 1];
            expected[0] = -1;
            expected[n as usize] = 1;
            assert_eq!(prod, expected, "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity() {
        let r8 = CycloRing::new(8);
        assert_eq!(Cyclo::root_of_unity(&r8, 0), Cyclo::one(&r8));
        assert_eq!(Cyclo::root_of_unity(&r8, 5), c(&r8, &[0, -1, 0, 0]));
        assert_eq!(Cyclo::root_of_unity(&r8, -3), Cyclo::root_of_unity(&r8, 5));
        let r4 = CycloRing::new(4);
        assert_eq!(Cyclo::root_of_unity(&r4, 2).as_integer(), Some(BigInt::from(-1)));
        let r1 = CycloRing::new(1);
        assert_eq!(Cyclo::root_of_unity(&r1, 7).as_integer(), Some(BigInt::from(1)));
        let r2 = CycloRing::new(2);
        assert_eq!(Cyclo::root_of_unity(&r2, 3).as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn ring_operation_examples() {
        let r8 = CycloRing::new(8);
        let z = |k| Cyclo::root_of_unity(&r8, k);
        assert_eq!((&z(1) * &z(7)).as_integer(), Some(BigInt::from(1)));
        let one = Cyclo::one(&r8);
        let prod = [1, 3, 5, 7].iter().fold(one.clone(), |acc, &k| &acc * &(&one + &z(k)));
        assert_eq!(prod.as_integer(), Some(BigInt::from(2)));
        let r4 = CycloRing::new(4);
        assert_eq!(Cyclo::root_of_unity(&r4, 1).conjugate(), -&Cyclo::root_of_unity(&r4, 1));
    }

    #[test]
    fn as_integer_examples() {
        let r8 = CycloRing::new(8);
        assert_eq!(Cyclo::one(&r8).as_integer(), Some(BigInt::from(1)));
        assert_eq!(Cyclo::root_of_unity(&r8, 1).as_integer(), None);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Cyclo::one(&CycloRing::new(8));
        let b = Cyclo::one(&CycloRing::new(4));
        assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch(8, 4)));
    }

    #[test]
    fn zeta_to_the_n_is_one_and_subfield_roots_satisfy_their_polynomial() {
        for n in [1u32, 2, 3, 4, 6, 8, 12, 16, 15] {
            let ring = CycloRing::new(n);
            let zeta = Cyclo::root_of_unity(&ring, 1);
            assert_eq!(zeta.pow(n), Cyclo::one(&ring));
            for m in (1..=n).filter(|m| n % m == 0) {
                let zeta_m = Cyclo::root_of_unity(&ring, (n / m) as i64);
                assert!(zeta_m.eval_poly(&cyclotomic_polynomial(m)).is_zero(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn text_round_trip_examples() {
        let r8 = CycloRing::new(8);
        let v = c(&r8, &[3, -2, 0, 1]);
        assert_eq!(v.to_string(), "3 - 2*z + z^3");
        assert_eq!(r8.parse("3 - 2*z + z^3").unwrap(), v);
        assert_eq!(r8.parse("z^5").unwrap(), Cyclo::root_of_unity(&r8, 5));
        assert_eq!(Cyclo::zero(&r8).to_string(), "0");
        assert_eq!((-&Cyclo::root_of_unity(&r8, 2)).to_string(), "-z^2");
        assert!(r8.parse("3 + y").is_err());
        assert!(r8.parse("").is_err());
    }

    #[test]
    fn gaussian_fast_path_matches_generic_ring() {
        let a = Gaussian::new(3, -7);
        let b = Gaussian::new(-2, 5);
        assert_eq!(a.mul(b).to_cyclo(), &a.to_cyclo() * &b.to_cyclo());
        assert_eq!(a.conj().to_cyclo(), a.to_cyclo().conjugate());
        assert_eq!((&a.to_cyclo() * &a.to_cyclo().conjugate()).as_integer(), Some(BigInt::from(a.norm())));
        assert_eq!(Gaussian::from_cyclo(&a.to_cyclo()), Some(a));
    }

    fn arb_cyclo(n: u32) -> impl Strategy<Value = Cyclo> {
        let ring = CycloRing::new(n);
        prop::collection::vec(-50i64..50, ring.degree()).prop_map(move |v| c(&ring, &v))
    }

    fn arb_triple() -> impl Strategy<Value = (Cyclo, Cyclo, Cyclo)> {
        prop::sample::select(vec![3u32, 4, 5, 8, 12, 16]).prop_flat_map(|n| (arb_cyclo(n), arb_cyclo(n), arb_cyclo(n)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn conjugation_is_an_involutive_ring_map((a, b, _c) in arb_triple()) {
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        }

        #[test]
        fn text_round_trips(a in prop::sample::select(vec![4u32, 8, 9, 16]).prop_flat_map(arb_cyclo)) {
            prop_assert_eq!(a.ring().parse(&a.to_string()).unwrap(), a.clone());
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<Cyclo>(&json).unwrap(), a);
        }
    }
}
