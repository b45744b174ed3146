//! Exhaustive verification of the congruences behind the exclusions.
//!
//! Each check is a polynomial congruence, so it suffices to run over residue
//! classes of its inputs modulo the stated modulus.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{d8x2, Bcde, Vec16};
use crate::error::{Error, Result};

const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub id: String,
    pub statement: String,
    pub cases: u64,
    pub counterexamples: Vec<Vec<i64>>,
    pub passed: bool,
}

fn report(id: &str, statement: &str, cases: u64, mut bad: Vec<Vec<i64>>) -> ResidueReport {
    bad.sort();
    let passed = bad.is_empty();
    bad.truncate(MAX_COUNTEREXAMPLES);
    ResidueReport { id: id.into(), statement: statement.into(), cases, counterexamples: bad, passed }
}

fn m(x: i128, modulus: i128) -> i128 {
    x.rem_euclid(modulus)
}

fn d4(x: [i128; 4]) -> i128 {
    let [x0, x1, x2, x3] = x;
    ((x0 + x2).pow(2) - (x1 + x3).pow(2)) * ((x0 - x2).pow(2) + (x1 - x3).pow(2))
}

fn d4_tilde(x: [i128; 4]) -> i128 {
    let [x0, x1, x2, x3] = x;
    (x0 * x0 - x2 * x2 + 2 * x1 * x3).pow(2) + (x1 * x1 - x3 * x3 - 2 * x0 * x2).pow(2)
}

/// Runs `check` on every tuple in `[0, modulus)^4` in parallel; returns the failing tuples.
fn scan4(modulus: i64, check: impl Fn([i64; 4]) -> bool + Sync) -> (u64, Vec<Vec<i64>>) {
    let bad = (0..modulus)
        .into_par_iter()
        .flat_map_iter(|x0| {
            let check = &check;
            (0..modulus).flat_map(move |x1| {
                (0..modulus).flat_map(move |x2| (0..modulus).map(move |x3| [x0, x1, x2, x3]))
            })
            .filter(move |&x| !check(x))
            .map(|x| x.to_vec())
        })
        .collect();
    ((modulus as u64).pow(4), bad)
}

/// All `2^16` assignments with entries in `{0, 1}`, in parallel.
fn scan_parity(check: impl Fn(&Vec16) -> bool + Sync) -> (u64, Vec<Vec<i64>>) {
    let bad = (0u32..1 << 16)
        .into_par_iter()
        .filter_map(|bits| {
            let a: Vec16 = std::array::from_fn(|j| ((bits >> j) & 1) as i64);
            (!check(&a)).then(|| a.to_vec())
        })
        .collect();
    (1 << 16, bad)
}

fn odd_d4() -> ResidueReport {
    let (cases, bad) = scan4(16, |[k, l, mm, n]| {
        let x = [2 * k + 1, 2 * l, 2 * mm, 2 * n].map(i128::from);
        let want = m(8 * mm as i128 + 1, 16);
        m(d4(x), 16) == want && m(d4_tilde(x), 16) == want
    });
    report(
        "odd-d4-mod16",
        "D_4(2k+1, 2l, 2m, 2n) = D~_4(2k+1, 2l, 2m, 2n) = 8m + 1 (mod 16)",
        cases,
        bad,
    )
}

fn mixed_d4() -> ResidueReport {
    let (cases, bad) = scan4(16, |[k, l, mm, n]| {
        let x = [2 * k, 2 * l + 1, 2 * mm + 1, 2 * n + 1].map(i128::from);
        let r = (k + l + n) as i128;
        m(d4(x), 16) == m(8 * r - 3, 16) && m(d4_tilde(x), 16) == m(8 * r + 1, 16)
    });
    report(
        "mixed-d4-mod16",
        "D_4(2k, 2l+1, 2m+1, 2n+1) = 8(k+l+n) - 3 and D~_4(...) = 8(k+l+n) + 1 (mod 16)",
        cases,
        bad,
    )
}

fn parity_agreement() -> ResidueReport {
    let (cases, bad) = scan_parity(|a| {
        let v = Bcde::new(a);
        let parity = m(super::d8x2_fast(a).expect("small entries"), 2);
        let parts = [d4(v.b.map(i128::from)), d4_tilde(v.c.map(i128::from)), d4(v.d.map(i128::from)), d4_tilde(v.e.map(i128::from))];
        parts.iter().all(|&x| m(x, 2) == parity)
    });
    report("parity-agreement", "D_8x2(a) = D_4(b) = D~_4(c) = D_4(d) = D~_4(e) (mod 2)", cases, bad)
}

fn bcde_congruences() -> ResidueReport {
    let (parity_cases, mut bad) = scan_parity(|a| Bcde::new(a).congruences_hold());
    // b_i + c_i + d_i + e_i only involves a_i, a_{i+4}, a_{i+8}, a_{i+12}; run those mod 4.
    let (quad_cases, quad_bad) = scan4(4, |[p, q, r, s]| {
        let mut a = [0i64; 16];
        (a[0], a[4], a[8], a[12]) = (p, q, r, s);
        Bcde::new(&a).congruences_hold()
    });
    bad.extend(quad_bad);
    report(
        "bcde-congruences",
        "b_i = c_i = d_i = e_i (mod 2) and b_i + c_i + d_i + e_i = 0 (mod 4)",
        parity_cases + 4 * quad_cases,
        bad,
    )
}

fn alpha_mod16() -> ResidueReport {
    let (cases, bad) = scan4(16, |b| {
        if (b[0] + b[2]) % 2 == 0 || (b[1] + b[3]) % 2 == 0 {
            return true;
        }
        let [b0, b1, b2, b3] = b.map(i128::from);
        let a0 = (b0 + b2).pow(2) - (b1 + b3).pow(2);
        let a1 = (b0 - b2).pow(2) + (b1 - b3).pow(2);
        m(a0, 16) == m(a1 + 4 * (b0 * b2 + b1 * b3) - 2, 16)
    });
    report(
        "alpha-mod16",
        "if b0+b2, b1+b3 are odd: alpha_0 = alpha_1 + 4(b0 b2 + b1 b3) - 2 (mod 16); likewise for d",
        cases,
        bad,
    )
}

fn real_part_mod8() -> ResidueReport {
    let (cases, bad) = scan4(8, |c| {
        if (c[0] + c[2]) % 2 == 0 || (c[1] + c[3]) % 2 == 0 {
            return true;
        }
        let [c0, c1, c2, c3] = c.map(i128::from);
        let re = c0 * c0 - c2 * c2 + 2 * c1 * c3;
        let sign = if c2 % 2 == 0 { 1 } else { -1 };
        m(re, 8) == m(sign + 2 * (c0 * c2 + c1 * c3), 8)
    });
    report(
        "real-part-mod8",
        "if c0+c2, c1+c3 are odd: Re(beta) = (-1)^c2 + 2(c0 c2 + c1 c3) (mod 8); likewise for gamma and e",
        cases,
        bad,
    )
}

/// Residues mod 4 of `sum over the four folds of x_i x_{i+2}` on one half of
/// the coordinates (`offset` 0: indices 0, 2; offset 1: indices 1, 3), over
/// all `4^8` residue vectors with `x_i + x_{i+2}` odd.
fn half_pair_sums(offset: usize) -> (u64, [bool; 4]) {
    let slots: Vec<usize> = (0..16).filter(|j| j % 2 == offset).collect();
    let seen = (0u32..1 << 16)
        .into_par_iter()
        .fold(
            || [false; 4],
            |mut seen, code| {
                let mut a = [0i64; 16];
                for (t, &j) in slots.iter().enumerate() {
                    a[j] = ((code >> (2 * t)) & 3) as i64;
                }
                let v = Bcde::new(&a);
                let (i, k) = (offset, offset + 2);
                if (v.b[i] + v.b[k]) % 2 != 0 {
                    let s = [v.b, v.c, v.d, v.e].iter().map(|x| x[i] as i128 * x[k] as i128).sum::<i128>();
                    seen[m(s, 4) as usize] = true;
                }
                seen
            },
        )
        .reduce(|| [false; 4], |x, y| std::array::from_fn(|r| x[r] || y[r]));
    (1 << 16, seen)
}

fn pair_sum_mod4() -> ResidueReport {
    let (even_cases, even) = half_pair_sums(0);
    let (odd_cases, odd) = half_pair_sums(1);
    let mut bad = Vec::new();
    for (r, _) in even.iter().enumerate().filter(|(_, &s)| s) {
        for (t, _) in odd.iter().enumerate().filter(|(_, &s)| s) {
            if (r + t) % 4 != 0 {
                bad.push(vec![r as i64, t as i64]);
            }
        }
    }
    report(
        "pair-sum-mod4",
        "if b0+b2, b1+b3 are odd: sum over b, c, d, e of (x0 x2 + x1 x3) = 0 (mod 4)",
        even_cases + odd_cases,
        bad,
    )
}

fn two_times_odd(x: i128) -> bool {
    m(x, 4) == 2
}

fn parity_chain() -> ResidueReport {
    let (cases, bad) = scan_parity(|a| {
        let f = super::alpha_beta_gamma(a).expect("small entries");
        let v = Bcde::new(a);
        let cond = |x: [i64; 4]| (x[0] + x[2]) % 2 != 0 && (x[1] + x[3]) % 2 != 0;
        let flags = [two_times_odd(f.alpha[1]), two_times_odd(f.alpha[3]), two_times_odd(f.beta.norm()), two_times_odd(f.gamma.norm())];
        let conds = [cond(v.b), cond(v.d), cond(v.c), cond(v.e)];
        flags == conds && flags.iter().all(|&x| x == flags[0])
    });
    report(
        "alpha-parity-chain",
        "alpha_1, alpha_3, |beta|^2, |gamma|^2 lie in 2Z_odd together, exactly when the pair sums of b are odd",
        cases,
        bad,
    )
}

/// Identifiers accepted by [`residue_check`].
pub fn residue_check_ids() -> &'static [&'static str] {
    &[
        "odd-d4-mod16",
        "mixed-d4-mod16",
        "parity-agreement",
        "bcde-congruences",
        "alpha-mod16",
        "real-part-mod8",
        "pair-sum-mod4",
        "alpha-parity-chain",
    ]
}

pub fn residue_check(id: &str) -> Result<ResidueReport> {
    Ok(match id {
        "odd-d4-mod16" => odd_d4(),
        "mixed-d4-mod16" => mixed_d4(),
        "parity-agreement" => parity_agreement(),
        "bcde-congruences" => bcde_congruences(),
        "alpha-mod16" => alpha_mod16(),
        "real-part-mod8" => real_part_mod8(),
        "pair-sum-mod4" => pair_sum_mod4(),
        "alpha-parity-chain" => parity_chain(),
        _ => return Err(Error::Precondition(format!("unknown check '{id}'; expected one of {:?}", residue_check_ids()))),
    })
}

/// For `a` with `D_8x2(a)` in `2^11 Z_odd`: whether `{v2(alpha_0), v2(alpha_2)} = {3, 4}`
/// and `alpha_1, alpha_3, |beta|^2, |gamma|^2` lie in `2 Z_odd`. `None` for other `a`.
pub fn valuation_pattern(a: &Vec16) -> Option<bool> {
    let value = d8x2(a);
    if value.trailing_zeros() != Some(11) {
        return None;
    }
    let f = super::alpha_beta_gamma(a).ok()?;
    let v2 = |x: i128| if x == 0 { u32::MAX } else { x.trailing_zeros() };
    let mut pair = [v2(f.alpha[0]), v2(f.alpha[2])];
    pair.sort_unstable();
    let rest = [f.alpha[1], f.alpha[3], f.beta.norm(), f.gamma.norm()];
    Some(pair == [3, 4] && rest.iter().all(|&x| v2(x) == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c8c2::witness_72;

    #[test]
    fn every_check_passes() {
        for id in residue_check_ids() {
            let r = residue_check(id).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.cases > 0);
        }
        assert!(residue_check("nope").is_err());
    }

    #[test]
    fn a_false_congruence_is_caught() {
        let (cases, bad) = scan4(16, |[k, _, mm, _]| m(d4([2 * k + 1, 0, 2 * mm, 0].map(i128::from)), 16) == 1);
        assert_eq!(cases, 65536);
        assert!(!bad.is_empty());
    }

    #[test]
    fn valuation_pattern_on_witnesses() {
        for (case, p) in [(1u8, 5u64), (1, 13), (2, 3), (2, 11), (3, 17), (3, 73)] {
            for mm in -2..=2 {
                assert_eq!(valuation_pattern(&witness_72(case, p, mm).unwrap()), Some(true));
            }
        }
        let mut a = [0; 16];
        a[0] = 1;
        assert_eq!(valuation_pattern(&a), None);
    }
}
