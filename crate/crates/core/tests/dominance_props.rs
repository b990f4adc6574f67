mod common;

use indiff_core::dominance::{
    check_domination, find_domination_witness, find_domination_witness_in_order, is_enforceable,
};
use indiff_core::responsive::compare_sets;
use indiff_core::stability::find_blocking_pairs;
use indiff_core::{
    Agent, BlockNotion, CoalitionAssignment, Comparison, DomNotion, Firm, Limits, Market, Matching, Worker,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn satisfies(notion: DomNotion, outcomes: &[(Comparison, bool)]) -> bool {
    let all = |p: fn(Comparison) -> bool| outcomes.iter().all(|(c, _)| p(*c));
    match notion {
        DomNotion::Dominates => all(Comparison::strict),
        DomNotion::WeaklyDominates => all(Comparison::at_least) && outcomes.iter().any(|(c, _)| c.strict()),
        DomNotion::SuperWeaklyDominates => all(Comparison::at_least) && outcomes.iter().any(|(_, changed)| *changed),
    }
}

// Every witness contains a component of its assignment (a firm with its new
// workers, or a lone agent) that is a witness on its own, so scanning
// components decides domination and gives the smallest witness size.
fn smallest_component_witness(market: &Market, m: &Matching, notion: DomNotion) -> Option<usize> {
    let n = market.worker_count();
    let mut best: Option<usize> = None;
    let mut offer = |size: usize| best = Some(best.map_or(size, |b: usize| b.min(size)));
    for w in market.workers() {
        let c = market.worker_pref(w).compare_indices(None, m.of_worker(w).map(|f| f.0));
        if satisfies(notion, &[(c, m.of_worker(w).is_some())]) {
            offer(1);
        }
    }
    for f in market.firms() {
        for mask in 0u32..(1 << n) {
            let set: Vec<Worker> = market.workers().filter(|w| mask & (1 << w.0) != 0).collect();
            if set.len() > market.quota(f) {
                continue;
            }
            let mut outcomes = vec![(compare_sets(market, f, &set, m.of_firm(f)).unwrap(), set != m.of_firm(f))];
            for &w in &set {
                let c = market.worker_pref(w).compare_indices(Some(f.0), m.of_worker(w).map(|g| g.0));
                outcomes.push((c, m.of_worker(w) != Some(f)));
            }
            if satisfies(notion, &outcomes) {
                offer(1 + set.len());
            }
        }
    }
    best
}

fn with_seed() -> impl Strategy<Value = (Market, u64)> {
    (common::markets(3, 4, 2), any::<u64>())
}

proptest! {
    #[test]
    fn search_agrees_with_component_oracle(market in common::markets(3, 4, 2)) {
        let limits = Limits::default();
        for m in common::all_matchings(&market) {
            for notion in DomNotion::ALL {
                let found = find_domination_witness(&market, &m, notion, &limits).unwrap();
                let expected = smallest_component_witness(&market, &m, notion);
                prop_assert_eq!(found.as_ref().map(|w| w.assignment.len()), expected, "{}", market.matching_literal(&m));
                if let Some(w) = found {
                    prop_assert_eq!(w.notion, notion);
                    prop_assert!(is_enforceable(&market, &w.assignment).unwrap());
                    prop_assert!(check_domination(&market, &w.assignment, &m, notion).unwrap());
                    prop_assert!(w.holds(&market, &m));
                }
            }
        }
    }

    #[test]
    fn shuffled_search_agrees((market, seed) in with_seed()) {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<Agent> = market.agents().collect();
        for m in common::all_matchings(&market) {
            order.shuffle(&mut rng);
            for notion in DomNotion::ALL {
                let canonical = find_domination_witness(&market, &m, notion, &limits).unwrap();
                let shuffled = find_domination_witness_in_order(&market, &m, notion, &order, &limits).unwrap();
                prop_assert_eq!(canonical.is_some(), shuffled.is_some());
                if let Some(w) = shuffled {
                    prop_assert!(check_domination(&market, &w.assignment, &m, notion).unwrap());
                }
            }
        }
    }

    #[test]
    fn notions_are_monotone((market, seed) in with_seed()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = common::all_matchings(&market);
        if market.agents().next().is_none() {
            return Ok(());
        }
        for m in &all {
            // a random coalition of another matching's components
            let other = &all[rng.gen_range(0..all.len())];
            let agents: Vec<Agent> = market.agents().filter(|_| rng.gen_bool(0.5)).collect();
            let mut members: Vec<Agent> = Vec::new();
            for a in agents {
                match a {
                    Agent::Firm(f) => {
                        members.push(a);
                        members.extend(other.of_firm(f).iter().map(|&w| Agent::Worker(w)));
                    }
                    Agent::Worker(w) => {
                        members.push(a);
                        if let Some(f) = other.of_worker(w) {
                            members.push(Agent::Firm(f));
                            members.extend(other.of_firm(f).iter().map(|&w| Agent::Worker(w)));
                        }
                    }
                }
            }
            members.sort();
            members.dedup();
            if members.is_empty() {
                continue;
            }
            let ca = CoalitionAssignment::restrict(other, &members);
            prop_assert!(is_enforceable(&market, &ca).unwrap());
            let d = check_domination(&market, &ca, m, DomNotion::Dominates).unwrap();
            let wd = check_domination(&market, &ca, m, DomNotion::WeaklyDominates).unwrap();
            let swd = check_domination(&market, &ca, m, DomNotion::SuperWeaklyDominates).unwrap();
            prop_assert!(!d || wd);
            prop_assert!(!wd || swd);
            if other == m {
                prop_assert!(!swd);
            }
        }
    }

    #[test]
    fn blocked_ir_matchings_are_dominated_one_to_one(market in common::markets(4, 4, 1)) {
        let limits = Limits::default();
        for m in common::all_matchings(&market) {
            if indiff_core::stability::is_individually_rational(&market, &m)
                && !find_blocking_pairs(&market, &m, BlockNotion::Block).is_empty()
            {
                prop_assert!(find_domination_witness(&market, &m, DomNotion::Dominates, &limits).unwrap().is_some());
            }
        }
    }
}

#[test]
fn blocked_but_undominated_with_quotas() {
    let m = indiff_core::fixtures::example_one();
    let mu4 = indiff_core::fixtures::mu(&m, 4);
    assert!(!find_blocking_pairs(&m, &mu4, BlockNotion::Block).is_empty());
    assert!(find_domination_witness(&m, &mu4, DomNotion::Dominates, &Limits::default()).unwrap().is_none());
}

#[test]
fn enforceability_examples() {
    let m = indiff_core::fixtures::example_one();
    let f = |n| m.find_firm(n).unwrap();
    let w = |n| m.find_worker(n).unwrap();
    let pair = CoalitionAssignment::new(vec![(f("f3"), vec![w("w1")])], vec![(w("w1"), Some(f("f3")))]);
    assert!(is_enforceable(&m, &pair).unwrap());
    let outside = CoalitionAssignment::new(vec![], vec![(w("w4"), Some(f("f2")))]);
    assert!(!is_enforceable(&m, &outside).unwrap());
    let alone = CoalitionAssignment::new(vec![], vec![(w("w4"), None)]);
    assert!(is_enforceable(&m, &alone).unwrap());
    let empty = CoalitionAssignment::new(vec![], vec![]);
    assert!(!is_enforceable(&m, &empty).unwrap());
    let phantom = CoalitionAssignment::new(vec![(Firm(9), vec![])], vec![]);
    assert!(is_enforceable(&m, &phantom).is_err());
}

#[test]
fn single_seat_weak_domination_is_mutual() {
    let r = indiff_core::fixtures::single_seat();
    let f = r.find_firm("f").unwrap();
    let (w1, w2) = (r.find_worker("w1").unwrap(), r.find_worker("w2").unwrap());
    let mu = indiff_core::fixtures::by_names(&r, &[("f", &["w1"])]);
    let ca = CoalitionAssignment::new(vec![(f, vec![w2])], vec![(w2, Some(f))]);
    assert!(check_domination(&r, &ca, &mu, DomNotion::WeaklyDominates).unwrap());
    assert!(!check_domination(&r, &ca, &mu, DomNotion::Dominates).unwrap());
    let back = indiff_core::fixtures::by_names(&r, &[("f", &["w2"])]);
    let ca = CoalitionAssignment::new(vec![(f, vec![w1])], vec![(w1, Some(f))]);
    assert!(check_domination(&r, &ca, &back, DomNotion::WeaklyDominates).unwrap());
}
