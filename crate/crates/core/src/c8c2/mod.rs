//! Group determinants of `C8 x C2`.
//!
//! Assignments are 16-vectors indexed by `j = r + 8s` for the element
//! `(r, s)`, which is also the element index used by [`crate::groups::Group`]
//! for `Group::new(&[8, 2])`.

mod classify;
mod residue;
mod witness;

pub use classify::{classify, classify_with_bound, filter_even, filter_odd, Certificate, Clause, PrimeClass, PrimePower, Verdict, DEFAULT_BOUND};
pub use residue::{residue_check, residue_check_ids, valuation_pattern, ResidueReport};
pub use witness::{find_rep, witness_71, witness_71_value, witness_72, witness_72_value, witness_for, Rep};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Gaussian;
use crate::error::{Error, Result};
use crate::groups::Group;

pub type Vec16 = [i64; 16];

/// Largest `|a_j|` accepted by the machine-word evaluators.
pub const MAX_ENTRY: i64 = 1 << 24;

pub fn group() -> Group {
    Group::new(&[8, 2]).expect("C8 x C2")
}

pub fn vec16(values: &[i64]) -> Result<Vec16> {
    values.try_into().map_err(|_| Error::AssignmentLength { expected: 16, got: values.len() })
}

/// The four 4-vectors obtained by folding `a` along the `C2 x C2` quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bcde {
    pub b: [i64; 4],
    pub c: [i64; 4],
    pub d: [i64; 4],
    pub e: [i64; 4],
}

impl Bcde {
    pub fn new(a: &Vec16) -> Bcde {
        let mut v = Bcde { b: [0; 4], c: [0; 4], d: [0; 4], e: [0; 4] };
        for i in 0..4 {
            let (p, q) = (a[i] + a[i + 8], a[i + 4] + a[i + 12]);
            let (r, s) = (a[i] - a[i + 8], a[i + 4] - a[i + 12]);
            v.b[i] = p + q;
            v.c[i] = p - q;
            v.d[i] = r + s;
            v.e[i] = r - s;
        }
        debug_assert!(v.congruences_hold());
        v
    }

    /// `b_i = c_i = d_i = e_i (mod 2)` and `b_i + c_i + d_i + e_i = 0 (mod 4)`.
    pub fn congruences_hold(&self) -> bool {
        (0..4).all(|i| {
            let (b, c, d, e) = (self.b[i], self.c[i], self.d[i], self.e[i]);
            (b - c) % 2 == 0 && (b - d) % 2 == 0 && (b - e) % 2 == 0 && (b + c + d + e) % 4 == 0
        })
    }
}

fn big4(x: [i64; 4]) -> [BigInt; 4] {
    x.map(BigInt::from)
}

/// `D_4(x) = {(x0+x2)^2 - (x1+x3)^2} {(x0-x2)^2 + (x1-x3)^2}`.
pub fn d4(x: [i64; 4]) -> BigInt {
    let [x0, x1, x2, x3] = big4(x);
    let s = (&x0 + &x2) * (&x0 + &x2) - (&x1 + &x3) * (&x1 + &x3);
    let t = (&x0 - &x2) * (&x0 - &x2) + (&x1 - &x3) * (&x1 - &x3);
    s * t
}

/// `D_4(x0, z x1, z^2 x2, z^3 x3)` with `z` a primitive 8th root of unity:
/// `(x0^2 - x2^2 + 2 x1 x3)^2 + (x1^2 - x3^2 - 2 x0 x2)^2`.
pub fn d4_tilde(x: [i64; 4]) -> BigInt {
    let [x0, x1, x2, x3] = big4(x);
    let re = &x0 * &x0 - &x2 * &x2 + 2 * &x1 * &x3;
    let im = &x1 * &x1 - &x3 * &x3 - 2 * &x0 * &x2;
    &re * &re + &im * &im
}

pub fn d8x2(a: &Vec16) -> BigInt {
    let v = Bcde::new(a);
    d4(v.b) * d4_tilde(v.c) * d4(v.d) * d4_tilde(v.e)
}

fn d4_i128(x: [i64; 4]) -> i128 {
    let [x0, x1, x2, x3] = x.map(i128::from);
    ((x0 + x2).pow(2) - (x1 + x3).pow(2)) * ((x0 - x2).pow(2) + (x1 - x3).pow(2))
}

fn d4_tilde_i128(x: [i64; 4]) -> i128 {
    let [x0, x1, x2, x3] = x.map(i128::from);
    (x0 * x0 - x2 * x2 + 2 * x1 * x3).pow(2) + (x1 * x1 - x3 * x3 - 2 * x0 * x2).pow(2)
}

/// Machine-word `D_{8x2}`; `None` when an entry exceeds [`MAX_ENTRY`] or the
/// product overflows `i128`.
pub fn d8x2_fast(a: &Vec16) -> Option<i128> {
    if a.iter().any(|x| x.abs() > MAX_ENTRY) {
        return None;
    }
    let v = Bcde::new(a);
    d4_i128(v.b)
        .checked_mul(d4_tilde_i128(v.c))?
        .checked_mul(d4_i128(v.d))?
        .checked_mul(d4_tilde_i128(v.e))
}

/// The factorization `D_{8x2} = alpha_0 alpha_1 alpha_2 alpha_3 |beta|^2 |gamma|^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBetaGamma {
    pub alpha: [i128; 4],
    pub beta: Gaussian,
    pub gamma: Gaussian,
}

impl AlphaBetaGamma {
    pub fn product(&self) -> BigInt {
        let alphas = self.alpha.iter().fold(BigInt::from(1), |acc, &x| acc * x);
        alphas * self.beta.norm() * self.gamma.norm()
    }
}

fn alpha_pair(x: [i64; 4]) -> (i128, i128) {
    let [x0, x1, x2, x3] = x.map(i128::from);
    ((x0 + x2).pow(2) - (x1 + x3).pow(2), (x0 - x2).pow(2) + (x1 - x3).pow(2))
}

fn twisted(x: [i64; 4]) -> Gaussian {
    let [x0, x1, x2, x3] = x.map(i128::from);
    Gaussian::new(x0 * x0 - x2 * x2 + 2 * x1 * x3, -(x1 * x1 - x3 * x3 - 2 * x0 * x2))
}

pub fn alpha_beta_gamma(a: &Vec16) -> Result<AlphaBetaGamma> {
    if let Some(x) = a.iter().find(|x| x.abs() > MAX_ENTRY) {
        return Err(Error::Precondition(format!("entry {x} exceeds {MAX_ENTRY}")));
    }
    let v = Bcde::new(a);
    let (a0, a1) = alpha_pair(v.b);
    let (a2, a3) = alpha_pair(v.d);
    Ok(AlphaBetaGamma { alpha: [a0, a1, a2, a3], beta: twisted(v.c), gamma: twisted(v.e) })
}

/// Checks that the four rotated forms of `D_4(b) D~_4(c) D_4(d) D~_4(e)` agree.
pub fn rotation_symmetry_check(a: &Vec16) -> bool {
    let v = Bcde::new(a);
    let rotate = |x: [i64; 4], negate: bool, k: usize| -> [i64; 4] {
        std::array::from_fn(|i| {
            let j = i + k;
            let s = if negate && j >= 4 { -1 } else { 1 };
            s * x[j % 4]
        })
    };
    let form = |k: usize| {
        d4(rotate(v.b, false, k)) * d4_tilde(rotate(v.c, true, k)) * d4(rotate(v.d, false, k)) * d4_tilde(rotate(v.e, true, k))
    };
    let first = form(0);
    (1..4).all(|k| form(k) == first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{Cyclo, CycloRing};
    use crate::gdet::{eval_bareiss, eval_dedekind};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn indicator() -> Vec16 {
        let mut a = [0; 16];
        a[0] = 1;
        a
    }

    #[test]
    fn bcde_examples() {
        let v = Bcde::new(&indicator());
        assert_eq!((v.b, v.c, v.d, v.e), ([1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]));
        let v = Bcde::new(&[1; 16]);
        assert_eq!((v.b, v.c, v.d, v.e), ([4; 4], [0; 4], [0; 4], [0; 4]));
        let mut a = [1; 16];
        a[0] = 2;
        let v = Bcde::new(&a);
        assert_eq!((v.b, v.c, v.d, v.e), ([5, 4, 4, 4], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(d4([1, 0, 0, 0]), BigInt::from(1));
        assert_eq!(d4([1, 2, 3, 4]), BigInt::from(-160));
        assert_eq!(d4_tilde([1, 1, 0, 0]), BigInt::from(2));
        assert_eq!(d8x2(&indicator()), BigInt::from(1));
        let mut a = [-1; 16];
        a[0] = 0;
        assert_eq!(d8x2(&a), BigInt::from(-15));
    }

    #[test]
    fn d4_matches_circulant_oracle() {
        let c4 = Group::cyclic(4).unwrap().cayley();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let x: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
            assert_eq!(d4(x), eval_bareiss(&c4, &x).unwrap());
        }
    }

    #[test]
    fn d4_tilde_matches_twisted_product() {
        let ring = CycloRing::new(8);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
            // prod over chi of C4 of sum_j chi(j) zeta_8^j x_j, with chi(j) = zeta_8^{2kj}
            let mut prod = Cyclo::one(&ring);
            for k in 0..4i64 {
                let mut sum = Cyclo::zero(&ring);
                for (j, &xj) in x.iter().enumerate() {
                    let j = j as i64;
                    sum = &sum + &Cyclo::root_of_unity(&ring, j + 2 * k * j).scale(&BigInt::from(xj));
                }
                prod = &prod * &sum;
            }
            assert_eq!(prod.as_integer().unwrap(), d4_tilde(x));
        }
    }

    #[test]
    fn d8x2_matches_both_oracles() {
        let g = group();
        let cayley = g.cayley();
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for i in 0..1000 {
            let a: Vec16 = std::array::from_fn(|_| rng.gen_range(-3..=3));
            let closed = d8x2(&a);
            assert_eq!(closed, eval_dedekind(&g, &a).unwrap());
            assert_eq!(d8x2_fast(&a).map(BigInt::from), Some(closed.clone()));
            if i % 10 == 0 {
                assert_eq!(closed, eval_bareiss(&cayley, &a).unwrap());
            }
        }
    }

    #[test]
    fn fast_path_refuses_large_entries() {
        let mut a = indicator();
        a[3] = MAX_ENTRY + 1;
        assert_eq!(d8x2_fast(&a), None);
        assert!(alpha_beta_gamma(&a).is_err());
    }

    #[test]
    fn alpha_beta_gamma_identity_indicator() {
        let f = alpha_beta_gamma(&indicator()).unwrap();
        assert_eq!(f.alpha, [1; 4]);
        assert_eq!((f.beta, f.gamma), (Gaussian::ONE, Gaussian::ONE));
    }

    #[test]
    fn rotation_examples() {
        assert!(rotation_symmetry_check(&indicator()));
        assert!(rotation_symmetry_check(&[1; 16]));
    }

    proptest! {
        #[test]
        fn alpha_beta_gamma_products(a in proptest::array::uniform16(-50i64..50)) {
            let v = Bcde::new(&a);
            prop_assert!(v.congruences_hold());
            let f = alpha_beta_gamma(&a).unwrap();
            prop_assert_eq!(BigInt::from(f.alpha[0] * f.alpha[1]), d4(v.b));
            prop_assert_eq!(BigInt::from(f.alpha[2] * f.alpha[3]), d4(v.d));
            prop_assert_eq!(BigInt::from(f.beta.norm()), d4_tilde(v.c));
            prop_assert_eq!(BigInt::from(f.gamma.norm()), d4_tilde(v.e));
            prop_assert_eq!(f.product(), d8x2(&a));
            // the Gaussian fast path agrees with Z[zeta_4]
            let generic = &f.beta.to_cyclo() * &f.beta.conj().to_cyclo();
            prop_assert_eq!(generic.as_integer(), Some(BigInt::from(f.beta.norm())));
        }

        #[test]
        fn rotations_agree(a in proptest::array::uniform16(-20i64..20)) {
            prop_assert!(rotation_symmetry_check(&a));
        }

        #[test]
        fn sign_rotation_identities(x in proptest::array::uniform4(-1000i64..1000)) {
            let [x0, x1, x2, x3] = x;
            prop_assert_eq!(d4(x), -d4([x1, x2, x3, x0]));
            prop_assert_eq!(d4_tilde(x), d4_tilde([x1, x2, x3, -x0]));
        }
    }
}
