//! Strict tie-breakings, deferred acceptance, and how the cores relate to
//! the stable sets of all tie-breakings.
//!
//! A tie-breaking replaces every indifference tier above being unmatched by
//! one of its orderings. Unacceptable partners are never reordered; they are
//! irrelevant to individually rational matchings.

use alloc::vec::Vec;

use thiserror::Error;

use crate::dominance::{find_domination_witness, DomNotion};
use crate::limits::{GuardrailError, Limits};
use crate::market::{Agent, Firm, Market, Matching, TieredPreference, Worker};
use crate::solutions::{enumerate_matchings, Relation};
use crate::stability::{check_stability, BlockNotion};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{agent:?} has an indifference tier of size {size}")]
pub struct NotStrict {
    pub agent: Agent,
    pub size: usize,
}

/// A market in which every tier is a single agent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrictMarket(Market);

impl StrictMarket {
    pub fn new(market: Market) -> Result<StrictMarket, NotStrict> {
        for a in market.agents() {
            if let Some(t) = market.pref(a).tiers().iter().find(|t| t.len() > 1) {
                return Err(NotStrict { agent: a, size: t.len() });
            }
        }
        Ok(StrictMarket(market))
    }

    pub fn market(&self) -> &Market {
        &self.0
    }

    pub fn into_market(self) -> Market {
        self.0
    }
}

/// `|L(R)|`: the product over agents and tiers of the tier size factorial.
/// Saturates at `u128::MAX`.
pub fn tie_breaking_count(market: &Market) -> u128 {
    let mut total: u128 = 1;
    for a in market.agents() {
        for tier in market.pref(a).tiers() {
            for k in 2..=tier.len() as u128 {
                total = total.saturating_mul(k);
            }
        }
    }
    total
}

#[derive(Clone, Debug)]
struct Slot {
    agent: Agent,
    tier: usize,
    order: Vec<usize>,
}

/// Every strict refinement of a market, each exactly once.
///
/// Tiers with more than one member are the digits of an odometer: agents in
/// canonical order, tiers best first, each digit running through the
/// orderings of its tier in lexicographic order. The last digit varies
/// fastest and the first refinement keeps every tier in canonical order.
#[derive(Clone, Debug)]
pub struct TieBreakings<'a> {
    market: &'a Market,
    slots: Vec<Slot>,
    started: bool,
    done: bool,
}

impl<'a> TieBreakings<'a> {
    fn new(market: &'a Market) -> Self {
        let mut slots = Vec::new();
        for a in market.agents() {
            for (k, tier) in market.pref(a).tiers().iter().enumerate() {
                if tier.len() > 1 {
                    slots.push(Slot { agent: a, tier: k, order: tier.clone() });
                }
            }
        }
        TieBreakings { market, slots, started: false, done: false }
    }

    fn advance(&mut self) -> bool {
        for slot in self.slots.iter_mut().rev() {
            if next_permutation(&mut slot.order) {
                return true;
            }
        }
        false
    }

    fn current(&self) -> StrictMarket {
        let refine = |a: Agent, pref: &TieredPreference| -> TieredPreference {
            let mut tiers = Vec::new();
            for (k, tier) in pref.tiers().iter().enumerate() {
                match self.slots.iter().find(|s| s.agent == a && s.tier == k) {
                    Some(slot) => tiers.extend(slot.order.iter().map(|&x| alloc::vec![x])),
                    None => tiers.push(tier.clone()),
                }
            }
            pref.with_tiers(tiers)
        };
        let m = self.market;
        let firms = m.firms().map(|f| refine(Agent::Firm(f), m.firm_pref(f))).collect();
        let workers = m.workers().map(|w| refine(Agent::Worker(w), m.worker_pref(w))).collect();
        StrictMarket(m.with_preferences(firms, workers))
    }
}

impl Iterator for TieBreakings<'_> {
    type Item = StrictMarket;

    fn next(&mut self) -> Option<StrictMarket> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

/// Rearranges `v` into the next lexicographic permutation. At the last one
/// it wraps around to sorted order and returns false.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn tie_breakings<'a>(market: &'a Market, limits: &Limits) -> Result<TieBreakings<'a>, GuardrailError> {
    let found = tie_breaking_count(market);
    if found > limits.max_tie_breakings {
        return Err(GuardrailError::TooManyTieBreakings { found, limit: limits.max_tie_breakings });
    }
    Ok(TieBreakings::new(market))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Proposing {
    #[default]
    Firms,
    Workers,
}

/// Many-to-one deferred acceptance on a strict market.
pub fn deferred_acceptance(strict: &StrictMarket, proposing: Proposing) -> Matching {
    match proposing {
        Proposing::Firms => firms_propose(strict.market()),
        Proposing::Workers => workers_propose(strict.market()),
    }
}

fn flat_list(pref: &TieredPreference) -> Vec<usize> {
    pref.tiers().iter().flatten().copied().collect()
}

fn firms_propose(market: &Market) -> Matching {
    let lists: Vec<Vec<usize>> = market.firms().map(|f| flat_list(market.firm_pref(f))).collect();
    let mut next = alloc::vec![0usize; market.firm_count()];
    let mut held = alloc::vec![0usize; market.firm_count()];
    let mut holder: Vec<Option<Firm>> = alloc::vec![None; market.worker_count()];
    loop {
        // lowest-index firm with a free position and someone left to ask
        let Some(f) = market.firms().find(|&f| held[f.0] < market.quota(f) && next[f.0] < lists[f.0].len()) else {
            break;
        };
        let w = Worker(lists[f.0][next[f.0]]);
        next[f.0] += 1;
        let wpref = market.worker_pref(w);
        if !wpref.is_acceptable(f.0) {
            continue;
        }
        match holder[w.0] {
            None => {}
            Some(g) if wpref.compare_indices(Some(f.0), Some(g.0)).strict() => held[g.0] -= 1,
            Some(_) => continue,
        }
        holder[w.0] = Some(f);
        held[f.0] += 1;
    }
    Matching::from_worker_choices(market, &holder)
}

fn workers_propose(market: &Market) -> Matching {
    let lists: Vec<Vec<usize>> = market.workers().map(|w| flat_list(market.worker_pref(w))).collect();
    let mut next = alloc::vec![0usize; market.worker_count()];
    let mut held: Vec<Vec<Worker>> = alloc::vec![Vec::new(); market.firm_count()];
    let mut free: Vec<Worker> = market.workers().rev().collect();
    while let Some(w) = free.pop() {
        let Some(&f) = lists[w.0].get(next[w.0]) else { continue };
        next[w.0] += 1;
        let f = Firm(f);
        let fpref = market.firm_pref(f);
        if !fpref.is_acceptable(w.0) {
            free.push(w);
            continue;
        }
        held[f.0].push(w);
        if held[f.0].len() > market.quota(f) {
            let (pos, _) =
                held[f.0].iter().enumerate().max_by_key(|(_, x)| fpref.rank_of(Some(x.0))).expect("non-empty");
            let rejected = held[f.0].swap_remove(pos);
            free.push(rejected);
        }
    }
    let mut choices: Vec<Option<Firm>> = alloc::vec![None; market.worker_count()];
    for (f, ws) in held.iter().enumerate() {
        for w in ws {
            choices[w.0] = Some(Firm(f));
        }
    }
    Matching::from_worker_choices(market, &choices)
}

/// Both sides of a set identity between a core computed by domination and a
/// combination of the tie-breakings' stable sets. Both lists are in
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub dominance_side: Vec<Matching>,
    pub refinement_side: Vec<Matching>,
    /// On failure, the matchings in exactly one of the two sides.
    pub relation: Relation,
}

impl PropertyCheck {
    fn new(all: &[Matching], in_core: &[bool], in_refinements: &[bool]) -> Self {
        let pick = |flags: &[bool]| -> Vec<Matching> {
            all.iter().zip(flags).filter(|(_, &b)| b).map(|(m, _)| m.clone()).collect()
        };
        let diff: Vec<Matching> = all
            .iter()
            .zip(in_core.iter().zip(in_refinements))
            .filter(|(_, (a, b))| a != b)
            .map(|(m, _)| m.clone())
            .collect();
        PropertyCheck {
            dominance_side: pick(in_core),
            refinement_side: pick(in_refinements),
            relation: if diff.is_empty() { Relation::Pass } else { Relation::Fail(diff) },
        }
    }
}

fn core_flags(
    market: &Market,
    all: &[Matching],
    notion: DomNotion,
    limits: &Limits,
) -> Result<Vec<bool>, GuardrailError> {
    all.iter().map(|m| find_domination_witness(market, m, notion, limits).map(|w| w.is_none())).collect()
}

/// Super core (by domination) against the intersection of the stable sets
/// of all tie-breakings.
pub fn check_intersection_property(market: &Market, limits: &Limits) -> Result<PropertyCheck, GuardrailError> {
    let refinements = tie_breakings(market, limits)?;
    let all: Vec<Matching> = enumerate_matchings(market, limits)?.collect();
    let in_core = core_flags(market, &all, DomNotion::SuperWeaklyDominates, limits)?;
    let mut in_all = alloc::vec![true; all.len()];
    for p in refinements {
        for (m, keep) in all.iter().zip(in_all.iter_mut()) {
            if *keep && check_stability(p.market(), m, BlockNotion::Block).is_err() {
                *keep = false;
            }
        }
    }
    Ok(PropertyCheck::new(&all, &in_core, &in_all))
}

/// Core (by domination) against the union of the stable sets of all
/// tie-breakings. `None` on markets that are not one-to-one.
pub fn check_union_property(market: &Market, limits: &Limits) -> Result<Option<PropertyCheck>, GuardrailError> {
    if !market.is_one_to_one() {
        return Ok(None);
    }
    let refinements = tie_breakings(market, limits)?;
    let all: Vec<Matching> = enumerate_matchings(market, limits)?.collect();
    let in_core = core_flags(market, &all, DomNotion::Dominates, limits)?;
    let mut in_any = alloc::vec![false; all.len()];
    for p in refinements {
        for (m, hit) in all.iter().zip(in_any.iter_mut()) {
            if !*hit && check_stability(p.market(), m, BlockNotion::Block).is_ok() {
                *hit = true;
            }
        }
    }
    Ok(Some(PropertyCheck::new(&all, &in_core, &in_any)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::stability::classify_stability;
    use alloc::vec;

    #[test]
    fn counts() {
        assert_eq!(tie_breaking_count(&fixtures::example_one()), 32);
        assert_eq!(tie_breaking_count(&fixtures::single_seat()), 2);
        let limits = Limits::default();
        assert_eq!(tie_breakings(&fixtures::example_one(), &limits).unwrap().count(), 32);
        assert_eq!(tie_breakings(&fixtures::single_seat(), &limits).unwrap().count(), 2);
    }

    #[test]
    fn strict_market_yields_itself() {
        let m = Market::builder().firm("f", 1, &[&["w"]]).worker("w", &[&["f"]]).build().unwrap();
        let all: Vec<_> = tie_breakings(&m, &Limits::default()).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].market(), &m);
        assert!(StrictMarket::new(fixtures::single_seat()).is_err());
    }

    #[test]
    fn guardrail() {
        let tight = Limits { max_tie_breakings: 31, ..Limits::default() };
        assert!(matches!(
            tie_breakings(&fixtures::example_one(), &tight),
            Err(GuardrailError::TooManyTieBreakings { found: 32, limit: 31 })
        ));
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let mut v = vec![0, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
        assert_eq!(v, vec![0, 1, 2]);
    }

    #[test]
    fn deferred_acceptance_single_seat() {
        let r = fixtures::single_seat();
        let first = tie_breakings(&r, &Limits::default()).unwrap().next().unwrap();
        // w1 ranked first at f
        assert_eq!(first.market().firm_pref(Firm(0)).tiers(), &[vec![0], vec![1]]);
        let m = deferred_acceptance(&first, Proposing::Firms);
        assert_eq!(m, fixtures::by_names(&r, &[("f", &["w1"])]));
        assert_eq!(deferred_acceptance(&first, Proposing::Workers), m);
    }

    #[test]
    fn deferred_acceptance_is_stable_in_source() {
        let ex = fixtures::example_one();
        for p in tie_breakings(&ex, &Limits::default()).unwrap() {
            for side in [Proposing::Firms, Proposing::Workers] {
                let m = deferred_acceptance(&p, side);
                assert!(classify_stability(p.market(), &m).is_stable());
                assert!(classify_stability(&ex, &m).is_stable());
            }
        }
    }

    #[test]
    fn intersection_on_example_one() {
        let ex = fixtures::example_one();
        let check = check_intersection_property(&ex, &Limits::default()).unwrap();
        assert_eq!(check.relation, Relation::Pass);
        assert_eq!(check.dominance_side, vec![fixtures::mu(&ex, 1)]);
        assert_eq!(check.refinement_side, vec![fixtures::mu(&ex, 1)]);
    }

    #[test]
    fn single_seat_properties() {
        let r = fixtures::single_seat();
        let inter = check_intersection_property(&r, &Limits::default()).unwrap();
        assert_eq!(inter.relation, Relation::Pass);
        assert!(inter.dominance_side.is_empty());
        let union = check_union_property(&r, &Limits::default()).unwrap().unwrap();
        assert_eq!(union.relation, Relation::Pass);
        assert_eq!(
            union.refinement_side,
            vec![fixtures::by_names(&r, &[("f", &["w2"])]), fixtures::by_names(&r, &[("f", &["w1"])])]
        );
    }

    #[test]
    fn union_not_applicable_to_many_to_one() {
        assert_eq!(check_union_property(&fixtures::example_one(), &Limits::default()), Ok(None));
    }
}
