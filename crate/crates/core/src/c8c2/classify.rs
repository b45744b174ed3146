//! Membership test for the set of integer group determinants of `C8 x C2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, factor, is_prime, normalized_two_squares, split_two_power};

/// Default cap on `|n|` for [`classify`].
pub const DEFAULT_BOUND: u128 = 1 << 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Clause {
    #[serde(rename = "odd-1mod16")]
    OddOneMod16,
    #[serde(rename = "odd-A")]
    OddA,
    #[serde(rename = "even-2^10")]
    Even2Pow10,
    #[serde(rename = "even-2^12")]
    Even2Pow12,
    #[serde(rename = "even-2^11-p5mod8")]
    Even2Pow11P5,
    #[serde(rename = "even-2^11-p1mod8-rep3")]
    Even2Pow11P1,
    #[serde(rename = "even-2^11-p3mod8-squared")]
    Even2Pow11P3Squared,
    #[serde(rename = "excluded-odd")]
    ExcludedOdd,
    #[serde(rename = "excluded-even-valuation")]
    ExcludedValuation,
    #[serde(rename = "excluded-2^11-shape")]
    Excluded2Pow11,
}

impl Clause {
    pub const ALL: [Clause; 10] = [
        Clause::OddOneMod16,
        Clause::OddA,
        Clause::Even2Pow10,
        Clause::Even2Pow12,
        Clause::Even2Pow11P5,
        Clause::Even2Pow11P1,
        Clause::Even2Pow11P3Squared,
        Clause::ExcludedOdd,
        Clause::ExcludedValuation,
        Clause::Excluded2Pow11,
    ];

    pub fn is_member(self) -> bool {
        !matches!(self, Clause::ExcludedOdd | Clause::ExcludedValuation | Clause::Excluded2Pow11)
    }

    pub fn name(self) -> &'static str {
        match self {
            Clause::OddOneMod16 => "odd-1mod16",
            Clause::OddA => "odd-A",
            Clause::Even2Pow10 => "even-2^10",
            Clause::Even2Pow12 => "even-2^12",
            Clause::Even2Pow11P5 => "even-2^11-p5mod8",
            Clause::Even2Pow11P1 => "even-2^11-p1mod8-rep3",
            Clause::Even2Pow11P3Squared => "even-2^11-p3mod8-squared",
            Clause::ExcludedOdd => "excluded-odd",
            Clause::ExcludedValuation => "excluded-even-valuation",
            Clause::Excluded2Pow11 => "excluded-2^11-shape",
        }
    }

    pub fn parse(name: &str) -> Option<Clause> {
        Clause::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeClass {
    OneMod8,
    ThreeMod8,
    FiveMod8,
    SevenMod8,
}

impl PrimeClass {
    fn of(p: u64) -> PrimeClass {
        match p % 8 {
            1 => PrimeClass::OneMod8,
            3 => PrimeClass::ThreeMod8,
            5 => PrimeClass::FiveMod8,
            7 => PrimeClass::SevenMod8,
            _ => unreachable!("odd prime expected"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub exponent: u32,
    pub class: PrimeClass,
    /// Normalized `p = a^2 + b^2` (`a` odd, `4 | b`) for primes `1 mod 8`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<(u64, u64)>,
}

/// Clause-specific data from which the verdict can be re-derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `n = 16m + 1`.
    OneMod16 {
        #[serde(with = "crate::serde_int::wide")]
        m: i128,
    },
    /// `n = u v` with `u = 8k - 3`, `v = 8l - 3`, `k = l (mod 2)`.
    PairOfFives {
        #[serde(with = "crate::serde_int::wide")]
        u: i128,
        #[serde(with = "crate::serde_int::wide")]
        v: i128,
        #[serde(with = "crate::serde_int::wide")]
        k: i128,
        #[serde(with = "crate::serde_int::wide")]
        l: i128,
    },
    /// `n = 2^10 (2m + 1)`.
    TwoPow10 {
        #[serde(with = "crate::serde_int::wide")]
        m: i128,
    },
    /// `n = 2^12 m`.
    TwoPow12 {
        #[serde(with = "crate::serde_int::wide")]
        m: i128,
    },
    /// `n = 2^11 p c`, `p = 5 (mod 8)` prime, `c` odd.
    PrimeFiveMod8 {
        p: u64,
        #[serde(with = "crate::serde_int::wide")]
        cofactor: i128,
    },
    /// `n = 2^11 p c`, `p = a^2 + b^2 = 1 (mod 8)` prime with `a + b = +-3 (mod 8)`.
    PrimeOneMod8 {
        p: u64,
        a: u64,
        b: u64,
        #[serde(with = "crate::serde_int::wide")]
        cofactor: i128,
    },
    /// `n = 2^11 p^2 c`, `p = 3 (mod 8)` prime.
    PrimeThreeMod8Squared {
        p: u64,
        #[serde(with = "crate::serde_int::wide")]
        cofactor: i128,
    },
    /// Odd `n` neither `1 (mod 16)` nor a product of two admissible factors.
    NoOddPair { residue: u8 },
    /// Non-zero even `n` with 2-adic valuation `t < 10`.
    Valuation { t: u32 },
    /// `n = sign 2^11 prod p^e` with every odd prime of an excluded kind.
    ExcludedShape { sign: i8, primes: Vec<PrimePower> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(with = "crate::serde_int::wide")]
    pub value: i128,
    pub member: bool,
    pub clause: Clause,
    pub certificate: Certificate,
}

fn verdict(value: i128, clause: Clause, certificate: Certificate) -> Verdict {
    Verdict { value, member: clause.is_member(), clause, certificate }
}

fn odd_pair(n: i128) -> Option<Certificate> {
    let abs = n.unsigned_abs() as u64;
    for d in divisors(abs) {
        for s in [1i128, -1] {
            let u = s * d as i128;
            let v = n / u;
            if u.rem_euclid(8) == 5 && v.rem_euclid(8) == 5 {
                let (k, l) = ((u + 3) / 8, (v + 3) / 8);
                if (k - l).rem_euclid(2) == 0 {
                    return Some(Certificate::PairOfFives { u, v, k, l });
                }
            }
        }
    }
    None
}

fn check_bound(n: i128, bound: u128) -> Result<()> {
    let bound = bound.min(u64::MAX as u128);
    if n.unsigned_abs() > bound {
        Err(Error::BeyondBound(n.unsigned_abs(), bound))
    } else {
        Ok(())
    }
}

/// Classifies an odd integer.
pub fn filter_odd(n: i128) -> Result<Verdict> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("{n} is even")));
    }
    check_bound(n, DEFAULT_BOUND)?;
    Ok(odd_verdict(n))
}

fn odd_verdict(n: i128) -> Verdict {
    if n.rem_euclid(16) == 1 {
        return verdict(n, Clause::OddOneMod16, Certificate::OneMod16 { m: (n - 1) / 16 });
    }
    match odd_pair(n) {
        Some(c) => verdict(n, Clause::OddA, c),
        None => verdict(n, Clause::ExcludedOdd, Certificate::NoOddPair { residue: n.rem_euclid(16) as u8 }),
    }
}

/// Classifies an even integer (including zero).
pub fn filter_even(n: i128) -> Result<Verdict> {
    if n % 2 != 0 {
        return Err(Error::Precondition(format!("{n} is odd")));
    }
    check_bound(n, DEFAULT_BOUND)?;
    Ok(even_verdict(n))
}

fn even_verdict(n: i128) -> Verdict {
    if n == 0 {
        return verdict(0, Clause::Even2Pow12, Certificate::TwoPow12 { m: 0 });
    }
    let (t, u) = split_two_power(n);
    match t {
        0..=9 => verdict(n, Clause::ExcludedValuation, Certificate::Valuation { t }),
        10 => verdict(n, Clause::Even2Pow10, Certificate::TwoPow10 { m: (u - 1) / 2 }),
        11 => classify_2pow11(n, u),
        _ => verdict(n, Clause::Even2Pow12, Certificate::TwoPow12 { m: n >> 12 }),
    }
}

fn classify_2pow11(n: i128, u: i128) -> Verdict {
    let factors = factor(u.unsigned_abs() as u64);
    let cofactor = |q: u64, e: u32| u / (q as i128).pow(e);
    if let Some(&(p, _)) = factors.iter().find(|(p, _)| p % 8 == 5) {
        return verdict(n, Clause::Even2Pow11P5, Certificate::PrimeFiveMod8 { p, cofactor: cofactor(p, 1) });
    }
    for &(p, _) in factors.iter().filter(|(p, _)| p % 8 == 1) {
        let (a, b) = normalized_two_squares(p).expect("prime 1 mod 8 is a sum of two squares");
        if matches!((a + b) % 8, 3 | 5) {
            return verdict(n, Clause::Even2Pow11P1, Certificate::PrimeOneMod8 { p, a, b, cofactor: cofactor(p, 1) });
        }
    }
    if let Some(&(p, _)) = factors.iter().find(|(p, e)| p % 8 == 3 && *e >= 2) {
        return verdict(n, Clause::Even2Pow11P3Squared, Certificate::PrimeThreeMod8Squared { p, cofactor: cofactor(p, 2) });
    }
    let primes = factors
        .into_iter()
        .map(|(p, exponent)| {
            let class = PrimeClass::of(p);
            let rep = (class == PrimeClass::OneMod8).then(|| normalized_two_squares(p).expect("two squares"));
            PrimePower { p, exponent, class, rep }
        })
        .collect();
    verdict(n, Clause::Excluded2Pow11, Certificate::ExcludedShape { sign: if u < 0 { -1 } else { 1 }, primes })
}

pub fn classify(n: i128) -> Result<Verdict> {
    classify_with_bound(n, DEFAULT_BOUND)
}

/// As [`classify`] with an explicit cap on `|n|` (at most `2^64 - 1`).
pub fn classify_with_bound(n: i128, bound: u128) -> Result<Verdict> {
    check_bound(n, bound)?;
    Ok(if n % 2 == 0 { even_verdict(n) } else { odd_verdict(n) })
}

impl Verdict {
    /// Re-derives the verdict from its certificate without consulting the classifier.
    pub fn verify(&self) -> bool {
        let n = self.value;
        let odd = |c: i128| c.rem_euclid(2) == 1;
        let clause_ok = match (&self.certificate, self.clause) {
            (Certificate::OneMod16 { m }, Clause::OddOneMod16) => 16 * m + 1 == n,
            (Certificate::PairOfFives { u, v, k, l }, Clause::OddA) => {
                u * v == n && *u == 8 * k - 3 && *v == 8 * l - 3 && (k - l).rem_euclid(2) == 0
            }
            (Certificate::TwoPow10 { m }, Clause::Even2Pow10) => (2 * m + 1) << 10 == n,
            (Certificate::TwoPow12 { m }, Clause::Even2Pow12) => m << 12 == n,
            (Certificate::PrimeFiveMod8 { p, cofactor }, Clause::Even2Pow11P5) => {
                is_prime(*p) && p % 8 == 5 && odd(*cofactor) && (*p as i128 * cofactor) << 11 == n
            }
            (Certificate::PrimeOneMod8 { p, a, b, cofactor }, Clause::Even2Pow11P1) => {
                is_prime(*p)
                    && p % 8 == 1
                    && a * a + b * b == *p
                    && a % 2 == 1
                    && b % 4 == 0
                    && matches!((a + b) % 8, 3 | 5)
                    && odd(*cofactor)
                    && (*p as i128 * cofactor) << 11 == n
            }
            (Certificate::PrimeThreeMod8Squared { p, cofactor }, Clause::Even2Pow11P3Squared) => {
                is_prime(*p) && p % 8 == 3 && odd(*cofactor) && ((*p as i128).pow(2) * cofactor) << 11 == n
            }
            (Certificate::NoOddPair { residue }, Clause::ExcludedOdd) => {
                odd(n) && n.rem_euclid(16) == *residue as i128 && *residue != 1 && odd_pair(n).is_none()
            }
            (Certificate::Valuation { t }, Clause::ExcludedValuation) => n != 0 && n.trailing_zeros() == *t && *t < 10,
            (Certificate::ExcludedShape { sign, primes }, Clause::Excluded2Pow11) => {
                let mut prod: i128 = (*sign as i128) << 11;
                let mut ok = true;
                for pp in primes {
                    prod *= (pp.p as i128).pow(pp.exponent);
                    ok &= is_prime(pp.p) && pp.p != 2 && PrimeClass::of(pp.p) == pp.class;
                    ok &= match pp.class {
                        PrimeClass::OneMod8 => match pp.rep {
                            Some((a, b)) => a * a + b * b == pp.p && a % 2 == 1 && b % 4 == 0 && matches!((a + b) % 8, 1 | 7),
                            None => false,
                        },
                        PrimeClass::ThreeMod8 => pp.exponent == 1,
                        PrimeClass::FiveMod8 => false,
                        PrimeClass::SevenMod8 => true,
                    };
                }
                ok && prod == n
            }
            _ => false,
        };
        clause_ok && self.member == self.clause.is_member()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(n: i128) -> Clause {
        let v = classify(n).unwrap();
        assert!(v.verify(), "{v:?}");
        v.clause
    }

    #[test]
    fn odd_examples() {
        assert_eq!(clause(17), Clause::OddOneMod16);
        assert_eq!(clause(33), Clause::OddOneMod16);
        assert_eq!(clause(-15), Clause::OddOneMod16);
        assert_eq!(clause(9), Clause::OddA);
        assert_eq!(clause(73), Clause::ExcludedOdd);
        assert_eq!(clause(3), Clause::ExcludedOdd);
        assert!(filter_odd(4).is_err());
        match classify(9).unwrap().certificate {
            Certificate::PairOfFives { u, v, .. } => assert_eq!((u, v), (-3, -3)),
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn even_examples() {
        assert_eq!(clause(0), Clause::Even2Pow12);
        assert_eq!(clause(3 << 10), Clause::Even2Pow10);
        assert_eq!(clause(3 << 9), Clause::ExcludedValuation);
        assert_eq!(clause(7 << 11), Clause::Excluded2Pow11);
        assert_eq!(clause(3 << 11), Clause::Excluded2Pow11);
        assert_eq!(clause(1 << 11), Clause::Excluded2Pow11);
        assert_eq!(clause(17 << 11), Clause::Even2Pow11P1);
        assert_eq!(clause(9 << 11), Clause::Even2Pow11P3Squared);
        assert_eq!(clause(5 << 11), Clause::Even2Pow11P5);
        assert_eq!(clause(73 << 11), Clause::Even2Pow11P1);
        assert_eq!(clause(89 << 11), Clause::Even2Pow11P1);
        assert_eq!(clause(113 << 11), Clause::Excluded2Pow11);
        assert_eq!(clause(-(21 << 11)), Clause::Excluded2Pow11);
        assert_eq!(clause(3 << 13), Clause::Even2Pow12);
        assert!(filter_even(3).is_err());
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(classify(1i128 << 70), Err(Error::BeyondBound(..))));
        assert!(matches!(classify_with_bound(1000, 100), Err(Error::BeyondBound(..))));
        assert!(classify((1i128 << 63) - 1).is_ok());
        assert_eq!(classify_with_bound((1i128 << 63) + 2, u128::MAX).unwrap().clause, Clause::ExcludedValuation);
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut v = classify(17 << 11).unwrap();
        v.value += 1 << 12;
        assert!(!v.verify());
        let mut v = classify(113 << 11).unwrap();
        v.member = true;
        assert!(!v.verify());
        let mut v = classify(73).unwrap();
        v.clause = Clause::OddA;
        assert!(!v.verify());
    }

    #[test]
    fn json_round_trip() {
        for n in [33, 9, 73, 0, 3 << 10, 17 << 11, 113 << 11, 9 << 11, 5 << 11, 6] {
            let v = classify(n).unwrap();
            let text = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<Verdict>(&text).unwrap(), v);
        }
        let text = serde_json::to_string(&classify(2048).unwrap()).unwrap();
        assert!(text.contains("\"clause\":\"excluded-2^11-shape\""), "{text}");
        assert!(text.contains("\"primes\":[]"), "{text}");
    }

    #[test]
    fn every_odd_value_near_zero_is_consistent_with_residues() {
        for n in (-1001i128..1001).step_by(2) {
            let v = classify(n).unwrap();
            assert!(v.verify());
            let r = n.rem_euclid(16);
            if v.member {
                assert!(r == 1 || r == 9, "{n}");
            }
        }
    }

    #[test]
    fn clause_names_parse_back() {
        for c in Clause::ALL {
            assert_eq!(Clause::parse(c.name()), Some(c));
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
    }
}
