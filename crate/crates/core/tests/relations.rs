mod common;

use indiff_core::solutions::{solution_report, solution_set, verify_relations};
use indiff_core::tiebreak::{
    check_intersection_property, check_union_property, deferred_acceptance, tie_breaking_count, tie_breakings,
};
use indiff_core::{fixtures, Concept, Limits, Matching, Proposing};
use proptest::prelude::*;

fn sorted(mut v: Vec<Matching>) -> Vec<Matching> {
    v.sort();
    v
}

proptest! {
    #[test]
    fn relations_hold(market in common::markets(3, 4, 2)) {
        let report = verify_relations(&market, &Limits::default()).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report);
        prop_assert_eq!(report.one_to_one_core_is_stable.is_some(), market.is_one_to_one());
    }

    #[test]
    fn core_equals_stable_one_to_one(market in common::markets(4, 4, 1)) {
        let limits = Limits::default();
        let core = solution_set(&market, Concept::Core, &limits).unwrap();
        let stable = solution_set(&market, Concept::Stable, &limits).unwrap();
        prop_assert_eq!(core, stable);
    }

    #[test]
    fn super_core_is_the_intersection(market in common::markets(3, 4, 2)) {
        let limits = Limits { max_tie_breakings: 1024, ..Limits::default() };
        if tie_breaking_count(&market) > 1024 {
            return Ok(());
        }
        let check = check_intersection_property(&market, &limits).unwrap();
        prop_assert!(check.relation.passed(), "{:?}", check);
    }

    #[test]
    fn core_is_the_union_one_to_one(market in common::markets(4, 4, 1)) {
        let limits = Limits { max_tie_breakings: 1024, ..Limits::default() };
        if tie_breaking_count(&market) > 1024 {
            return Ok(());
        }
        let check = check_union_property(&market, &limits).unwrap().expect("one-to-one");
        prop_assert!(check.relation.passed(), "{:?}", check);
    }

    #[test]
    fn reports_are_deterministic(market in common::markets(3, 3, 2)) {
        let a = solution_report(&market, &Limits::default()).unwrap();
        let b = solution_report(&market, &Limits::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn deferred_acceptance_is_stable_in_the_source(market in common::markets(3, 4, 2)) {
        let limits = Limits { max_tie_breakings: 256, ..Limits::default() };
        let Ok(refinements) = tie_breakings(&market, &limits) else { return Ok(()) };
        for p in refinements {
            for side in [Proposing::Firms, Proposing::Workers] {
                let m = deferred_acceptance(&p, side);
                prop_assert!(indiff_core::stability::classify_stability(p.market(), &m).is_stable());
                prop_assert!(indiff_core::stability::classify_stability(&market, &m).is_stable());
            }
        }
    }
}

#[test]
fn example_one_sets() {
    let m = fixtures::example_one();
    let limits = Limits::default();
    let report = solution_report(&m, &limits).unwrap();
    let mu = |i| fixtures::mu(&m, i);
    let row = |i: usize| report.rows.iter().find(|r| r.matching == mu(i)).unwrap();
    let flags = |i: usize| Concept::ALL.map(|c| row(i).member(c));
    // S, SS, SSS, C, C_S, C_SS
    assert_eq!(flags(1), [true, true, true, true, true, true]);
    assert_eq!(flags(2), [true, true, false, true, true, false]);
    assert_eq!(flags(3), [true, false, false, true, false, false]);
    assert_eq!(flags(4), [false, false, false, true, false, false]);
    let rel = report.relations();
    assert!(rel.all_pass());
    assert!(rel.one_to_one_core_is_stable.is_none());
    assert!(report.set(Concept::Stable).len() < report.set(Concept::Core).len());
    let inter = check_intersection_property(&m, &limits).unwrap();
    assert_eq!(inter.dominance_side, vec![mu(1)]);
    assert_eq!(inter.refinement_side, vec![mu(1)]);
    assert!(check_union_property(&m, &limits).unwrap().is_none());
}

#[test]
fn single_seat_sets() {
    let r = fixtures::single_seat();
    let limits = Limits::default();
    let set = |c| sorted(solution_set(&r, c, &limits).unwrap());
    let singles = sorted(vec![fixtures::by_names(&r, &[("f", &["w1"])]), fixtures::by_names(&r, &[("f", &["w2"])])]);
    assert_eq!(set(Concept::Stable), singles);
    assert_eq!(set(Concept::Core), singles);
    assert!(set(Concept::StrongCore).is_empty());
    assert!(set(Concept::SuperCore).is_empty());
    assert!(set(Concept::StronglyStable).is_empty());
    let union = check_union_property(&r, &limits).unwrap().unwrap();
    assert!(union.relation.passed());
    assert_eq!(sorted(union.refinement_side), singles);
    let inter = check_intersection_property(&r, &limits).unwrap();
    assert!(inter.relation.passed());
    assert!(inter.refinement_side.is_empty());
}

#[test]
fn empty_market_has_only_the_empty_matching() {
    let m = indiff_core::Market::builder().build().unwrap();
    let report = solution_report(&m, &Limits::default()).unwrap();
    assert_eq!(report.rows.len(), 1);
    for c in Concept::ALL {
        assert_eq!(report.set(c), vec![&Matching::empty(&m)]);
    }
    assert!(report.relations().all_pass());
}
