//! Explicit assignments realizing every member clause.

use num_bigint::BigInt;
use num_integer::Roots;
use serde::{Deserialize, Serialize};

use super::classify::{Certificate, Verdict};
use super::{d8x2, Vec16};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, normalized_two_squares};

fn pow2(k: u32) -> BigInt {
    BigInt::from(1) << k
}

/// Value reached by [`witness_71`]:
/// `16m+1`, `(16m-3)(16n-3)`, `(16m+5)(16n+5)`, `2^10(2m+1)`, `2^12(2m+1)`, `2^12(2m)`.
pub fn witness_71_value(case: u8, m: i64, n: i64) -> Result<BigInt> {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    Ok(match case {
        1 => 16 * m + 1,
        2 => (16 * m - 3) * (16 * n - 3),
        3 => (16 * m + 5) * (16 * n + 5),
        4 => pow2(10) * (2 * m + 1),
        5 => pow2(12) * (2 * m + 1),
        6 => pow2(12) * (2 * m),
        _ => return Err(Error::InvalidCase(case)),
    })
}

fn runs(parts: &[(usize, i64)]) -> Vec16 {
    let flat: Vec<i64> = parts.iter().flat_map(|&(len, x)| std::iter::repeat_n(x, len)).collect();
    flat.try_into().expect("16 entries")
}

/// The six one- and two-parameter families; `n` is used by cases 2 and 3 only.
pub fn witness_71(case: u8, m: i64, n: i64) -> Result<Vec16> {
    let a = match case {
        1 => runs(&[(1, m + 1), (15, m)]),
        2 => runs(&[(5, m + n), (3, m + n - 1), (8, m - n)]),
        3 => runs(&[(5, m + n + 1), (3, m + n), (8, m - n)]),
        4 if m.rem_euclid(2) == 0 => {
            // 2^10 (4k + 1)
            let k = m / 2;
            runs(&[(3, k + 1), (3, k), (1, k + 1), (9, k)])
        }
        4 => {
            // 2^10 (4k - 1)
            let k = (m + 1) / 2;
            [k, k, k, k, k, k, k + 1, k - 1, k, k, k - 1, k, k - 1, k - 1, k, k - 1]
        }
        5 => runs(&[(1, m + 2), (1, m), (6, m + 1), (8, m)]),
        6 => [m + 1, m, m, m + 1, m + 1, m, m + 1, m, m - 1, m - 1, m, m - 1, m, m, m - 1, m],
        _ => return Err(Error::InvalidCase(case)),
    };
    Ok(a)
}

/// `sqrt(z)` in `Z[i]` if `z` is a perfect square (one of the two roots).
fn gaussian_sqrt(u: i128, v: i128) -> Option<(i128, i128)> {
    let norm_sq = u.checked_mul(u)?.checked_add(v.checked_mul(v)?)?;
    let norm = (norm_sq as u128).sqrt() as i128;
    if norm * norm != norm_sq {
        return None;
    }
    let exact_sqrt = |w: i128| {
        if w % 2 != 0 {
            return None;
        }
        let r = ((w / 2) as u128).sqrt() as i128;
        (r * r == w / 2).then_some(r)
    };
    let x = exact_sqrt(norm + u)?;
    let y = exact_sqrt(norm - u)?;
    let y = if v < 0 { -y } else { y };
    (x * x - y * y == u && 2 * x * y == v).then_some((x, y))
}

/// Smallest `(k, l, m, n)` in lexicographic order with
/// `D~_4(4k-1, 2l-1, 4m-2, 4n) = 2p` inside the box `[-bound, bound]^4`.
///
/// `D~_4(x) = |A^2 - i B^2|^2` with `A = x0 + x2 i`, `B = x1 + x3 i`, so for
/// each of the eight Gaussian integers `w` of norm `2p` and each `A`, the
/// candidates for `B` are the square roots of `-i (A^2 - w)`.
fn twisted_rep(p: i128, bound: i64) -> Option<Rep> {
    let (a, b) = normalized_two_squares(p as u64)?;
    let (s, t) = (a as i128 + b as i128, a as i128 - b as i128);
    let mut targets = Vec::new();
    for (x, y) in [(s, t), (t, s)] {
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            targets.push((sx * x, sy * y));
        }
    }
    for k in -bound..=bound {
        let mut best: Option<Rep> = None;
        for m in -bound..=bound {
            let (x0, x2) = ((4 * k - 1) as i128, (4 * m - 2) as i128);
            let (sq_re, sq_im) = (x0 * x0 - x2 * x2, 2 * x0 * x2);
            for &(w_re, w_im) in &targets {
                let (d_re, d_im) = (sq_re - w_re, sq_im - w_im);
                let Some((r0, r1)) = gaussian_sqrt(d_im, -d_re) else { continue };
                for (x1, x3) in [(r0, r1), (-r0, -r1)] {
                    if x1.rem_euclid(2) != 1 || x3.rem_euclid(4) != 0 {
                        continue;
                    }
                    let (l, n) = (((x1 + 1) / 2) as i64, (x3 / 4) as i64);
                    if l.abs() > bound || n.abs() > bound {
                        continue;
                    }
                    let rep = Rep { k, l, m, n };
                    if best.is_none_or(|b| (l, m, n) < (b.l, b.m, b.n)) {
                        best = Some(rep);
                    }
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Parameters of the quadratic-form representations used by [`witness_72`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rep {
    pub k: i64,
    pub l: i64,
    /// Cases with four parameters only.
    pub m: i64,
    pub n: i64,
}

fn case_hypothesis(case: u8, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let ok = match case {
        1 => p % 8 == 5,
        2 => p % 8 == 3,
        3 => normalized_two_squares(p).is_some_and(|(a, b)| matches!((a + b) % 8, 3 | 5)),
        _ => return Err(Error::InvalidCase(case)),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("p = {p} is outside the residue class of case {case}")))
    }
}

/// Brute-force search, over `|k|, |l|, |m|, |n| <= ceil(sqrt(2p))`, for
/// - case 1: `2p = (8k+3)^2 + (8l+1)^2`;
/// - case 2: `p = (4k-1)^2 + 2(4l-1)^2`;
/// - case 3: `2p = D~_4(4k-1, 2l-1, 4m-2, 4n)`.
pub fn find_rep(case: u8, p: u64) -> Result<Rep> {
    case_hypothesis(case, p)?;
    let bound = {
        let s = (2 * p).sqrt();
        (if s * s == 2 * p { s } else { s + 1 }) as i64
    };
    let p = p as i128;
    let range = || -bound..=bound;
    let found = match case {
        1 => range().flat_map(|k| range().map(move |l| (k, l))).find(|&(k, l)| {
            let (x, y) = ((8 * k + 3) as i128, (8 * l + 1) as i128);
            x * x + y * y == 2 * p
        }),
        2 => range().flat_map(|k| range().map(move |l| (k, l))).find(|&(k, l)| {
            let (x, y) = ((4 * k - 1) as i128, (4 * l - 1) as i128);
            x * x + 2 * y * y == p
        }),
        _ => return twisted_rep(p, bound).ok_or(Error::NoRepresentation(p as u64)),
    };
    found.map(|(k, l)| Rep { k, l, m: 0, n: 0 }).ok_or(Error::NoRepresentation(p as u64))
}

/// Value reached by [`witness_72`]: `2^11 p (2m+1)` for cases 1 and 3,
/// `2^11 p^2 (2m+1)` for case 2.
pub fn witness_72_value(case: u8, p: u64, m: i64) -> Result<BigInt> {
    let odd = BigInt::from(2 * m + 1);
    let p = BigInt::from(p);
    match case {
        1 | 3 => Ok(pow2(11) * p * odd),
        2 => Ok(pow2(11) * &p * &p * odd),
        _ => Err(Error::InvalidCase(case)),
    }
}

fn family_72(case: u8, rep: Rep, m: i64) -> Vec16 {
    let Rep { k, l, .. } = rep;
    match case {
        1 => [
            k + m + 2, l + m + 1, -k + m, -l + m + 1,
            k + m + 1, l + m, -k + m + 1, -l + m,
            k - m, l - m, -k - m, -l - m - 1,
            k - m, l - m, -k - m - 1, -l - m,
        ],
        2 => [
            k + l + m, k - l + m, -l + m + 1, -l + m + 1,
            -k - l + m + 2, -k + l + m + 1, l + m + 1, l + m,
            k + l - m, k - l - m, -l - m, -l - m,
            -k - l - m, -k + l - m - 1, l - m - 1, l - m,
        ],
        _ => {
            let (mm, n, r) = (rep.m, rep.n, m);
            let lh = l.div_euclid(2);
            let sign = if l.rem_euclid(2) == 0 { 1 } else { -1 };
            [
                k + r + 1, lh + r, mm + r, n + r,
                -k + r + 1, -lh + r + (sign + 1) / 2, -mm + r + 2, -n + r + 1,
                k - r - 1, lh - r, mm - r, n - r,
                -k - r, -lh - r + (sign - 1) / 2, -mm - r, -n - r - 1,
            ]
        }
    }
}

/// Assignment for the prime-dependent `2^11` families, checked against the
/// target value before it is returned.
pub fn witness_72(case: u8, p: u64, m: i64) -> Result<Vec16> {
    let a = family_72(case, find_rep(case, p)?, m);
    let target = witness_72_value(case, p, m)?;
    let value = d8x2(&a);
    if value != target {
        return Err(Error::Inconsistent(format!("case {case}, p = {p}, m = {m}: got {value}, expected {target}")));
    }
    Ok(a)
}

fn small(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Precondition(format!("parameter {x} does not fit in 64 bits")))
}

/// An assignment whose determinant is the verdict's value, for member verdicts.
pub fn witness_for(verdict: &Verdict) -> Result<Vec16> {
    let a = match verdict.certificate {
        Certificate::OneMod16 { m } => witness_71(1, small(m)?, 0)?,
        Certificate::PairOfFives { k, l, .. } if k.rem_euclid(2) == 0 => witness_71(2, small(k / 2)?, small(l / 2)?)?,
        Certificate::PairOfFives { k, l, .. } => witness_71(3, small((k - 1) / 2)?, small((l - 1) / 2)?)?,
        Certificate::TwoPow10 { m } => witness_71(4, small(m)?, 0)?,
        Certificate::TwoPow12 { m } if m.rem_euclid(2) == 1 => witness_71(5, small((m - 1) / 2)?, 0)?,
        Certificate::TwoPow12 { m } => witness_71(6, small(m / 2)?, 0)?,
        Certificate::PrimeFiveMod8 { p, cofactor } => witness_72(1, p, small((cofactor - 1) / 2)?)?,
        Certificate::PrimeThreeMod8Squared { p, cofactor } => witness_72(2, p, small((cofactor - 1) / 2)?)?,
        Certificate::PrimeOneMod8 { p, cofactor, .. } => witness_72(3, p, small((cofactor - 1) / 2)?)?,
        _ => return Err(Error::Precondition(format!("{} is not a member", verdict.value))),
    };
    let value = d8x2(&a);
    if value != BigInt::from(verdict.value) {
        return Err(Error::Inconsistent(format!("witness evaluates to {value}, expected {}", verdict.value)));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c8c2::classify::{classify, Clause};
    use crate::c8c2::d4_tilde;

    #[test]
    fn family_examples() {
        assert_eq!(d8x2(&witness_71(1, 3, 0).unwrap()), BigInt::from(49));
        assert_eq!(d8x2(&witness_71(2, 1, 1).unwrap()), BigInt::from(169));
        assert_eq!(d8x2(&witness_71(6, 2, 0).unwrap()), BigInt::from(4 << 12));
        assert_eq!(d8x2(&witness_71(5, 0, 0).unwrap()), BigInt::from(1 << 12));
        assert_eq!(d8x2(&witness_71(1, -1, 0).unwrap()), BigInt::from(-15));
        assert!(matches!(witness_71(7, 0, 0), Err(Error::InvalidCase(7))));
    }

    #[test]
    fn families_reach_their_values() {
        for case in 1..=6 {
            for m in -5..=5 {
                for n in -5..=5 {
                    let a = witness_71(case, m, n).unwrap();
                    assert_eq!(d8x2(&a), witness_71_value(case, m, n).unwrap(), "case {case} m {m} n {n}");
                }
            }
        }
    }

    #[test]
    fn representation_examples() {
        assert_eq!(find_rep(1, 5).unwrap(), Rep { k: 0, l: 0, m: 0, n: 0 });
        let r = find_rep(1, 13).unwrap();
        assert_eq!((8 * r.k + 3).pow(2) + (8 * r.l + 1).pow(2), 26);
        assert_eq!(find_rep(2, 3).unwrap(), Rep { k: 0, l: 0, m: 0, n: 0 });
        let r = find_rep(2, 11).unwrap();
        assert_eq!((4 * r.k - 1).pow(2) + 2 * (4 * r.l - 1).pow(2), 11);
        let r = find_rep(3, 17).unwrap();
        assert_eq!(d4_tilde([4 * r.k - 1, 2 * r.l - 1, 4 * r.m - 2, 4 * r.n]), BigInt::from(34));
        assert!(find_rep(1, 3).is_err());
        assert!(find_rep(3, 113).is_err());
        assert!(find_rep(2, 9).is_err());
    }

    #[test]
    fn twisted_search_matches_plain_brute_force() {
        for p in [17u64, 73, 89, 97] {
            let bound = ((2 * p) as f64).sqrt().ceil() as i64;
            let mut naive = None;
            'search: for k in -bound..=bound {
                for l in -bound..=bound {
                    for m in -bound..=bound {
                        for n in -bound..=bound {
                            if d4_tilde([4 * k - 1, 2 * l - 1, 4 * m - 2, 4 * n]) == BigInt::from(2 * p) {
                                naive = Some(Rep { k, l, m, n });
                                break 'search;
                            }
                        }
                    }
                }
            }
            assert_eq!(Some(find_rep(3, p).unwrap()), naive, "p = {p}");
        }
    }

    #[test]
    fn gaussian_roots() {
        assert_eq!(gaussian_sqrt(-5, 12), Some((2, 3)));
        assert_eq!(gaussian_sqrt(0, 2), Some((1, 1)));
        assert_eq!(gaussian_sqrt(2, 0), None);
        assert_eq!(gaussian_sqrt(-4, 0), Some((0, 2)));
    }

    #[test]
    fn prime_families_examples() {
        assert_eq!(d8x2(&witness_72(1, 5, 0).unwrap()), BigInt::from(5 << 11));
        assert_eq!(d8x2(&witness_72(2, 3, 0).unwrap()), BigInt::from(9 << 11));
        assert_eq!(d8x2(&witness_72(3, 17, 0).unwrap()), BigInt::from(17 << 11));
    }

    #[test]
    fn prime_families_are_polynomial_identities() {
        let big = BigInt::from;
        for k in -2i64..=2 {
            for l in -3i64..=3 {
                for m in -2i64..=2 {
                    let rep = Rep { k, l, m: 0, n: 0 };
                    let x = (big(8 * k + 3).pow(2) + big(8 * l + 1).pow(2)) * (2 * m + 1);
                    assert_eq!(d8x2(&family_72(1, rep, m)), pow2(10) * x);
                    let (s, t) = (big(4 * k - 1), big(4 * l - 1));
                    let q = &s * &s + 2 * &t * &t;
                    assert_eq!(d8x2(&family_72(2, rep, m)), pow2(11) * &q * &q * (2 * m + 1));
                    // both parities of l enter the half-parameter split
                    for n in -1i64..=1 {
                        let rep = Rep { k, l, m: n + 1, n };
                        let twisted = d4_tilde([4 * k - 1, 2 * l - 1, 4 * (n + 1) - 2, 4 * n]);
                        assert_eq!(d8x2(&family_72(3, rep, m)), pow2(10) * twisted * (2 * m + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_classify_as_members() {
        for n in [1i128, 33, -15, 9, 25, -63, 169, 3 << 10, -(5 << 10), 0, 1 << 12, 6 << 12, 5 << 11, 17 << 11, 9 << 11, -(15 << 11), 73 << 11] {
            let v = classify(n).unwrap();
            if !v.member {
                continue;
            }
            let a = witness_for(&v).unwrap();
            assert_eq!(d8x2(&a), BigInt::from(n));
        }
        assert!(witness_for(&classify(73).unwrap()).is_err());
        assert_eq!(classify(d8x2(&witness_71(3, 1, -2).unwrap()).try_into().unwrap()).unwrap().clause, Clause::OddA);
    }
}
