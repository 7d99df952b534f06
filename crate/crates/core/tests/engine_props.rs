mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tnplanar::engine::{build_plan_separator_traced, DEFAULT_LEAF_CUTOFF};
use tnplanar::{build_plan_greedy, build_plan_separator, contract_full, execute_plan, Strategy};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn both_plans_match_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = common::random_network(&mut rng, 14, true);
        let expected = net.evaluate_brute(&[]).unwrap();
        let greedy = build_plan_greedy(&net);
        greedy.validate(&net).unwrap();
        prop_assert_eq!(execute_plan(&net, &greedy).unwrap().0, expected.clone());
        let sep = build_plan_separator(&net).unwrap();
        sep.validate(&net).unwrap();
        prop_assert_eq!(execute_plan(&net, &sep).unwrap().0, expected);
        prop_assert_eq!(sep.root().map_or(0, |r| r.rank), 0);
    }

    #[test]
    fn greedy_handles_non_planar_networks(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = common::random_network(&mut rng, 14, false);
        let expected = net.evaluate_brute(&[]).unwrap();
        prop_assert_eq!(contract_full(&net, Strategy::Greedy).unwrap().0, expected);
    }

    #[test]
    fn plans_are_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = common::random_network(&mut rng, 14, true);
        prop_assert_eq!(build_plan_greedy(&net), build_plan_greedy(&net));
        let (a, ta) = build_plan_separator_traced(&net, DEFAULT_LEAF_CUTOFF).unwrap();
        let (b, tb) = build_plan_separator_traced(&net, DEFAULT_LEAF_CUTOFF).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(ta.bounds_hold());
        prop_assert_eq!(ta, tb);
    }
}

#[test]
fn grid_plans_respect_separator_bounds() {
    for k in [3, 5, 7, 9, 11] {
        let net = tnplanar::bench::grid_network(k);
        let (plan, trace) = build_plan_separator_traced(&net, DEFAULT_LEAF_CUTOFF).unwrap();
        plan.validate(&net).unwrap();
        assert!(trace.bounds_hold(), "k = {k}: {trace:?}");
        assert!(plan.max_rank() <= 2 * k + 2, "k = {k}: rank {}", plan.max_rank());
    }
}
