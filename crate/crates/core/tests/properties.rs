use groupdet::c8c2::{self, Clause, Verdict};
use groupdet::gdet::{convolve, eval_bareiss, eval_dedekind, symbolic_z};
use groupdet::groups::{all_subgroups, Group, GroupSpec};
use num_bigint::BigInt;
use proptest::prelude::*;

const GROUPS: [&str; 9] = ["C2", "C4", "C8", "C2^2", "C4xC2", "C8xC2", "C2^4", "C16", "D16"];

fn group_and_assignment() -> impl Strategy<Value = (GroupSpec, Vec<i64>)> {
    prop::sample::select(GROUPS.to_vec()).prop_flat_map(|name| {
        let g = GroupSpec::parse(name).unwrap();
        let n = g.size();
        (Just(g), prop::collection::vec(-5i64..=5, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reordering_elements_preserves_the_determinant((g, a) in group_and_assignment(), seed in any::<u64>()) {
        let cayley = g.cayley();
        let mut perm: Vec<usize> = (0..g.size()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabelled = cayley.relabel(&perm).unwrap();
        let b: Vec<i64> = perm.iter().map(|&old| a[old]).collect();
        prop_assert_eq!(eval_bareiss(&relabelled, &b).unwrap(), eval_bareiss(&cayley, &a).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(((g, a), b) in group_and_assignment().prop_flat_map(|(g, a)| {
        let n = g.size();
        (Just((g, a)), prop::collection::vec(-3i64..=3, n))
    })) {
        let cayley = g.cayley();
        let ab = convolve(&cayley, &a, &b).unwrap();
        let lhs = eval_bareiss(&cayley, &ab).unwrap();
        let rhs = eval_bareiss(&cayley, &a).unwrap() * eval_bareiss(&cayley, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_form_matches_character_product(a in proptest::array::uniform16(-3i64..=3)) {
        prop_assert_eq!(c8c2::d8x2(&a), eval_dedekind(&c8c2::group(), &a).unwrap());
    }

    #[test]
    fn member_witnesses_reproduce_value_and_clause(n in -(1i128 << 40)..(1i128 << 40)) {
        let v = c8c2::classify(n).unwrap();
        prop_assert!(v.verify());
        if v.member {
            let a = c8c2::witness_for(&v).unwrap();
            prop_assert_eq!(c8c2::d8x2(&a), BigInt::from(n));
        }
    }

    #[test]
    fn members_of_valuation_11_carry_their_clause(u in 0i128..5000) {
        let n = (2 * u + 1) << 11;
        let v = c8c2::classify(n).unwrap();
        if v.member {
            prop_assert!(matches!(v.clause, Clause::Even2Pow11P5 | Clause::Even2Pow11P1 | Clause::Even2Pow11P3Squared));
            let a = c8c2::witness_for(&v).unwrap();
            prop_assert_eq!(c8c2::valuation_pattern(&a), Some(true));
        } else {
            prop_assert_eq!(v.clause, Clause::Excluded2Pow11);
        }
    }

    #[test]
    fn verdict_json_round_trips(n in any::<i64>()) {
        let v = c8c2::classify(n as i128).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn z_polynomials_are_homogeneous_of_index_degree() {
    for orders in [vec![4], vec![8], vec![2, 2], vec![4, 2], vec![8, 2], vec![2, 2, 2, 2]] {
        let g = Group::new(&orders).unwrap();
        for h in all_subgroups(&g) {
            if g.size() >= 16 && h.index() > 4 {
                continue;
            }
            for (e, p) in symbolic_z(&h).unwrap() {
                assert!(h.contains(e));
                assert!(p.is_homogeneous_of_degree(h.index() as u32), "{g} H = {:?} z_{e}", h.elements());
            }
        }
    }
}
