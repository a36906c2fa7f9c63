//! Property suites over random quivers and random central combinations.

mod common;

use dimer_core::commands::normality_degree;
use dimer_core::contraction::Contraction;
use dimer_core::fixtures::random_small_quiver;
use dimer_core::matchings::enumerate_perfect_matchings;
use dimer_core::monomial::monomials_up_to;
use dimer_core::normality::normality_report;
use dimer_core::oracle::{oracle_matchings, oracle_membership};
use dimer_core::semigroup::{generated_up_to, is_sum_of};
use dimer_core::Verdict;
use proptest::prelude::*;

/// `S = S'` up to degree 10. Lattice-quotient targets are cancellative, so
/// this makes the contraction cyclic.
fn preserves_cycle_algebra(c: &Contraction) -> bool {
    let s = c.source_cycle_algebra().unwrap().generators;
    let sp = c.target_cycle_algebra().unwrap().generators;
    generated_up_to(&s, 10) == generated_up_to(&sp, 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nil_theorem_holds_for_certified_candidates(which in 0usize..5, seed in any::<u64>()) {
        let fx = dimer_core::fixtures::all_fixtures().swap_remove(which);
        let c = fx.contraction().unwrap();
        let pool = common::candidate_pool(&fx, &c, seed, 2);
        let o = common::check_nil_theorem(&c, &pool);
        prop_assert!(o.nil.violations.is_empty(), "{:?}", o.nil.violations);
        prop_assert!(o.commuting.violations.is_empty(), "{:?}", o.commuting.violations);
        prop_assert!(o.nil.checked > 0);
    }

    #[test]
    fn lemmas_hold_on_random_quivers(seed in any::<u64>()) {
        let fx = random_small_quiver(seed);
        let c = fx.contraction().unwrap();
        prop_assume!(preserves_cycle_algebra(&c));
        for (name, tally) in common::check_lemmas(&c, 4, false) {
            prop_assert!(tally.violations.is_empty(), "{}: {:?}", name, tally.violations);
        }
    }

    #[test]
    fn fast_paths_match_oracles_on_random_quivers(seed in any::<u64>()) {
        let fx = random_small_quiver(seed);
        let mut fast = enumerate_perfect_matchings(&fx.quiver, 1_000_000).unwrap();
        fast.sort();
        prop_assert_eq!(fast, oracle_matchings(&fx.quiver).unwrap());
        let c = fx.contraction().unwrap();
        let s = c.source_cycle_algebra().unwrap().generators;
        for g in monomials_up_to(c.nvars(), 5) {
            prop_assert_eq!(is_sum_of(&s, &g), oracle_membership(&s, &g).unwrap());
        }
    }

    #[test]
    fn normality_conditions_agree_on_random_quivers(seed in any::<u64>()) {
        let fx = random_small_quiver(seed);
        let c = fx.contraction().unwrap();
        prop_assume!(preserves_cycle_algebra(&c));
        let s = c.source_cycle_algebra().unwrap().generators;
        let r = normality_report(&c, &common::bounds(), normality_degree(&c, &s, 8), 3).unwrap();
        prop_assert_ne!(r.consistent, Verdict::No);
    }
}
