use proptest::prelude::*;

use orient4::classifier::{classify, Verdict};
use orient4::constructions::construct_optimal;
use orient4::digraph::{extend_orientation, leaf_branch_parity_violations, Orientation};
use orient4::sperner::{binom, first_m, shadow, shadow_size_kkt, squashed_compare, KSubset};
use orient4::tree::{multiplied_edges, partition, validate, BranchSpec, TreeSpec};

fn branch() -> impl Strategy<Value = BranchSpec> {
    (2u32..=5, prop::collection::vec(2u32..=3, 0..=2)).prop_map(|(m, l)| BranchSpec::new(m, l))
}

fn spec() -> impl Strategy<Value = TreeSpec> {
    (2u32..=6, prop::collection::vec(branch(), 2..=8))
        .prop_map(|(s, b)| TreeSpec::new(s, b))
        .prop_filter("needs two branches with leaves", |t| validate(t).is_ok())
}

/// Specs small enough to orient at random and run BFS on quickly.
fn small_spec() -> impl Strategy<Value = TreeSpec> {
    (2u32..=3, prop::collection::vec((2u32..=3, prop::collection::vec(2u32..=2, 0..=1)), 2..=4))
        .prop_map(|(s, b)| TreeSpec::new(s, b.into_iter().map(|(m, l)| BranchSpec::new(m, l)).collect()))
        .prop_filter("needs two branches with leaves", |t| validate(t).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_covers_every_branch_once(t in spec()) {
        let p = partition(&t);
        let mut all: Vec<usize> = p.a2.iter().chain(&p.a3).chain(&p.a4plus).chain(&p.e).copied().collect();
        all.sort();
        prop_assert_eq!(all, (1..=t.deg_c()).collect::<Vec<_>>());
    }

    #[test]
    fn json_round_trip(t in spec()) {
        prop_assert_eq!(TreeSpec::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn edge_count_matches_multiplicities(t in spec()) {
        let s = t.center_multiplicity as usize;
        let want: usize = t.branches.iter().map(|b| {
            let m = b.multiplicity as usize;
            s * m + b.leaf_multiplicities.iter().map(|&l| m * l as usize).sum::<usize>()
        }).sum();
        prop_assert_eq!(multiplied_edges(&t).len(), want);
    }

    #[test]
    fn verdict_ignores_branch_order(t in spec(), seed in any::<u64>()) {
        let mut shuffled = t.clone();
        let n = shuffled.branches.len();
        for i in (1..n).rev() {
            let j = (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize;
            shuffled.branches.swap(i, j);
        }
        let (a, b) = (classify(&t).unwrap(), classify(&shuffled).unwrap());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.rule, b.rule);
    }

    #[test]
    fn verdict_ignores_leaf_and_large_multiplicities(t in spec(), bump in 1u32..=3) {
        let mut grown = t.clone();
        for b in &mut grown.branches {
            b.leaf_multiplicities.iter_mut().for_each(|l| *l += bump);
            if b.multiplicity >= 4 || !b.has_leaves() {
                b.multiplicity += bump;
            }
        }
        prop_assert_eq!(classify(&t).unwrap().verdict, classify(&grown).unwrap().verdict);
    }

    #[test]
    fn orientation_number_is_four_or_five(t in spec()) {
        let c = classify(&t).unwrap();
        match c.verdict {
            Verdict::C0 => prop_assert_eq!(c.orientation_number, Some(4)),
            Verdict::C1 => prop_assert_eq!(c.orientation_number, Some(5)),
            Verdict::UnknownGap => prop_assert_eq!(c.orientation_number, None),
        }
    }

    #[test]
    fn reversal_preserves_diameter(t in small_spec(), seed in any::<u64>()) {
        let n = multiplied_edges(&t).len();
        let dirs: Vec<bool> = (0..n).map(|i| seed.rotate_left(i as u32 % 64) & 1 == 1).collect();
        let d = Orientation::from_directions(&t, dirs).unwrap();
        let r = d.reverse();
        prop_assert_eq!(r.diameter(), d.diameter());
        prop_assert_eq!(r.is_strong(), d.is_strong());
        prop_assert_eq!(r.reverse(), d);
    }

    #[test]
    fn rank_unrank_round_trip(n in 1u32..=12, k in 0u32..=12, r in any::<u64>()) {
        prop_assume!(k <= n);
        let r = r % binom(n as u64, k as u64);
        let x = KSubset::unrank(n, k, r).unwrap();
        prop_assert_eq!(x.len(), k);
        prop_assert_eq!(x.rank(), r);
        if r > 0 {
            let prev = KSubset::unrank(n, k, r - 1).unwrap();
            prop_assert_eq!(squashed_compare(&prev, &x).unwrap(), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn kkt_matches_initial_segment_shadow(n in 1u32..=10, k in 1u32..=10, m in any::<u64>()) {
        prop_assume!(k <= n);
        let m = m % (binom(n as u64, k as u64) + 1);
        let sh = shadow(&first_m(n, k, m).unwrap()).unwrap();
        prop_assert_eq!(shadow_size_kkt(n, k, m).unwrap(), sh.len() as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn c0_constructions_have_diameter_four(t in spec()) {
        prop_assume!(classify(&t).unwrap().verdict == Verdict::C0);
        let c = construct_optimal(&t).unwrap();
        let d = &c.orientation;
        prop_assert_eq!(d.diameter().finite(), Some(4));
        prop_assert!(d.every_vertex_on_cycle_le(4));
        prop_assert!(leaf_branch_parity_violations(d, &d.distance_matrix()).is_empty());
        prop_assert_eq!(d.reverse().diameter().finite(), Some(4));
    }

    #[test]
    fn extension_preserves_diameter_four(t in spec(), extra in 1u32..=2) {
        prop_assume!(classify(&t).unwrap().verdict == Verdict::C0);
        let c = construct_optimal(&t).unwrap();
        let mut big = t.clone();
        big.center_multiplicity += extra;
        for b in &mut big.branches {
            b.multiplicity += extra;
        }
        let lifted = extend_orientation(&c.orientation, &big, 4).unwrap();
        prop_assert_eq!(lifted.diameter().finite(), Some(4));
    }

    #[test]
    fn c1_instances_are_refused(t in spec()) {
        prop_assume!(classify(&t).unwrap().verdict == Verdict::C1);
        prop_assert!(construct_optimal(&t).is_err());
    }
}
