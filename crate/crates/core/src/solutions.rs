//! Enumeration of all matchings, the six solution sets, and the relations
//! between them.
//!
//! Stability concepts come from blocking pairs only and core concepts from
//! domination searches only, so the set relations checked by
//! [`verify_relations`] compare two independent computations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dominance::{find_domination_witness, DomNotion, DominationWitness};
use crate::limits::{GuardrailError, Limits};
use crate::market::{Firm, Market, Matching};
use crate::stability::{check_stability, classify_stability, BlockNotion, StabilityClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Stable,
    StronglyStable,
    SuperStable,
    Core,
    StrongCore,
    SuperCore,
}

impl Concept {
    pub const ALL: [Concept; 6] = [
        Concept::Stable,
        Concept::StronglyStable,
        Concept::SuperStable,
        Concept::Core,
        Concept::StrongCore,
        Concept::SuperCore,
    ];

    /// Short label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Concept::Stable => "S",
            Concept::StronglyStable => "SS",
            Concept::SuperStable => "SSS",
            Concept::Core => "C",
            Concept::StrongCore => "CS",
            Concept::SuperCore => "CSS",
        }
    }

    /// The blocking notion behind a stability concept.
    pub fn block_notion(self) -> Option<BlockNotion> {
        match self {
            Concept::Stable => Some(BlockNotion::Block),
            Concept::StronglyStable => Some(BlockNotion::WeakBlock),
            Concept::SuperStable => Some(BlockNotion::SuperWeakBlock),
            _ => None,
        }
    }

    /// The domination notion behind a core concept.
    pub fn dom_notion(self) -> Option<DomNotion> {
        match self {
            Concept::Core => Some(DomNotion::Dominates),
            Concept::StrongCore => Some(DomNotion::WeaklyDominates),
            Concept::SuperCore => Some(DomNotion::SuperWeaklyDominates),
            _ => None,
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Every matching of a market, in canonical order: each worker's choice is
/// a digit (unmatched first, then firms in order) and the last worker
/// varies fastest. The empty matching comes first.
#[derive(Clone, Debug)]
pub struct Matchings<'a> {
    market: &'a Market,
    // 0 = unmatched, k = firm k - 1
    digits: Vec<usize>,
    loads: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> Matchings<'a> {
    fn new(market: &'a Market) -> Self {
        Matchings {
            market,
            digits: vec![0; market.worker_count()],
            loads: vec![0; market.firm_count()],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let firms = self.market.firm_count();
        for i in (0..self.digits.len()).rev() {
            if self.digits[i] > 0 {
                self.loads[self.digits[i] - 1] -= 1;
            }
            loop {
                self.digits[i] += 1;
                if self.digits[i] > firms {
                    self.digits[i] = 0;
                    break;
                }
                let f = self.digits[i] - 1;
                if self.loads[f] < self.market.quota(Firm(f)) {
                    self.loads[f] += 1;
                    return true;
                }
            }
        }
        false
    }

    fn current(&self) -> Matching {
        let choices: Vec<Option<Firm>> = self.digits.iter().map(|&d| d.checked_sub(1).map(Firm)).collect();
        Matching::from_worker_choices(self.market, &choices)
    }
}

impl Iterator for Matchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
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

pub fn enumerate_matchings<'a>(market: &'a Market, limits: &Limits) -> Result<Matchings<'a>, GuardrailError> {
    limits.check_market(market)?;
    Ok(Matchings::new(market))
}

pub fn count_matchings(market: &Market, limits: &Limits) -> Result<usize, GuardrailError> {
    Ok(enumerate_matchings(market, limits)?.count())
}

/// Membership of one matching in all six sets, with the reason for each
/// non-membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingReport {
    pub matching: Matching,
    pub stability: StabilityClass,
    /// Witness per domination notion, indexed like [`DomNotion::ALL`].
    pub domination: [Option<DominationWitness>; 3],
}

impl MatchingReport {
    pub fn member(&self, concept: Concept) -> bool {
        match (concept.block_notion(), concept.dom_notion()) {
            (Some(n), _) => self.stability.get(n).is_ok(),
            (_, Some(n)) => self.domination[n as usize].is_none(),
            _ => unreachable!(),
        }
    }

    pub fn witness(&self, notion: DomNotion) -> Option<&DominationWitness> {
        self.domination[notion as usize].as_ref()
    }
}

pub fn analyze_matching(market: &Market, m: &Matching, limits: &Limits) -> Result<MatchingReport, GuardrailError> {
    let mut domination = [None, None, None];
    for (slot, notion) in domination.iter_mut().zip(DomNotion::ALL) {
        *slot = find_domination_witness(market, m, notion, limits)?;
    }
    Ok(MatchingReport { matching: m.clone(), stability: classify_stability(market, m), domination })
}

/// Per-matching classification of every matching of a market.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub rows: Vec<MatchingReport>,
    pub one_to_one: bool,
}

impl SolutionReport {
    pub fn set(&self, concept: Concept) -> Vec<&Matching> {
        self.rows.iter().filter(|r| r.member(concept)).map(|r| &r.matching).collect()
    }

    pub fn relations(&self) -> RelationReport {
        let count_fail = |pred: &dyn Fn(&MatchingReport) -> bool| -> Relation {
            let bad: Vec<Matching> = self.rows.iter().filter(|r| !pred(r)).map(|r| r.matching.clone()).collect();
            if bad.is_empty() {
                Relation::Pass
            } else {
                Relation::Fail(bad)
            }
        };
        let has = |r: &MatchingReport, c| r.member(c);
        let implies = |a: bool, b: bool| !a || b;

        let stable_in_core = count_fail(&|r| implies(has(r, Concept::Stable), has(r, Concept::Core)));
        let strong_core_is_strongly_stable =
            count_fail(&|r| has(r, Concept::StrongCore) == has(r, Concept::StronglyStable));
        let super_core_is_super_stable = count_fail(&|r| has(r, Concept::SuperCore) == has(r, Concept::SuperStable));
        let one_to_one_core_is_stable =
            self.one_to_one.then(|| count_fail(&|r| has(r, Concept::Core) == has(r, Concept::Stable)));
        let core_nonempty =
            if self.rows.iter().any(|r| has(r, Concept::Core)) { Relation::Pass } else { Relation::Fail(Vec::new()) };
        let inclusion_chain = count_fail(&|r| {
            implies(has(r, Concept::SuperStable), has(r, Concept::StronglyStable))
                && implies(has(r, Concept::StronglyStable), has(r, Concept::Stable))
                && implies(has(r, Concept::Stable), has(r, Concept::Core))
                && implies(has(r, Concept::SuperCore), has(r, Concept::StrongCore))
                && implies(has(r, Concept::StrongCore), has(r, Concept::Core))
        });
        RelationReport {
            stable_in_core,
            strong_core_is_strongly_stable,
            super_core_is_super_stable,
            one_to_one_core_is_stable,
            core_nonempty,
            inclusion_chain,
        }
    }
}

pub fn solution_report(market: &Market, limits: &Limits) -> Result<SolutionReport, GuardrailError> {
    let rows = enumerate_matchings(market, limits)?
        .map(|m| analyze_matching(market, &m, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SolutionReport { rows, one_to_one: market.is_one_to_one() })
}

/// All matchings in the given set, in enumeration order. Only the
/// computation the concept needs is run.
pub fn solution_set(market: &Market, concept: Concept, limits: &Limits) -> Result<Vec<Matching>, GuardrailError> {
    let mut out = Vec::new();
    for m in enumerate_matchings(market, limits)? {
        let member = match (concept.block_notion(), concept.dom_notion()) {
            (Some(n), _) => check_stability(market, &m, n).is_ok(),
            (_, Some(n)) => find_domination_witness(market, &m, n, limits)?.is_none(),
            _ => unreachable!(),
        };
        if member {
            out.push(m);
        }
    }
    Ok(out)
}

/// Outcome of checking one set relation. A failure lists the matchings
/// that violate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Pass,
    Fail(Vec<Matching>),
}

impl Relation {
    pub fn passed(&self) -> bool {
        matches!(self, Relation::Pass)
    }

    pub fn label(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    /// `S` is a subset of `C`.
    pub stable_in_core: Relation,
    /// `C_S = SS`.
    pub strong_core_is_strongly_stable: Relation,
    /// `C_SS = SSS`.
    pub super_core_is_super_stable: Relation,
    /// `C = S`, evaluated on one-to-one markets only.
    pub one_to_one_core_is_stable: Option<Relation>,
    /// `C` is non-empty.
    pub core_nonempty: Relation,
    /// `SSS ⊆ SS ⊆ S ⊆ C` and `C_SS ⊆ C_S ⊆ C`.
    pub inclusion_chain: Relation,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.stable_in_core.passed()
            && self.strong_core_is_strongly_stable.passed()
            && self.super_core_is_super_stable.passed()
            && self.one_to_one_core_is_stable.as_ref().is_none_or(Relation::passed)
            && self.core_nonempty.passed()
            && self.inclusion_chain.passed()
    }
}

pub fn verify_relations(market: &Market, limits: &Limits) -> Result<RelationReport, GuardrailError> {
    Ok(solution_report(market, limits)?.relations())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    // independent count: place workers one at a time with remaining capacity
    fn count_recursive(capacity: &mut [usize], workers_left: usize) -> usize {
        if workers_left == 0 {
            return 1;
        }
        let mut total = count_recursive(capacity, workers_left - 1);
        for f in 0..capacity.len() {
            if capacity[f] > 0 {
                capacity[f] -= 1;
                total += count_recursive(capacity, workers_left - 1);
                capacity[f] += 1;
            }
        }
        total
    }

    fn oracle_count(m: &Market) -> usize {
        let mut cap: Vec<usize> = m.firms().map(|f| m.quota(f)).collect();
        count_recursive(&mut cap, m.worker_count())
    }

    #[test]
    fn counts() {
        let two = Market::builder()
            .firm("f1", 1, &[])
            .firm("f2", 1, &[])
            .worker("w1", &[])
            .worker("w2", &[])
            .build()
            .unwrap();
        assert_eq!(count_matchings(&two, &Limits::default()), Ok(7));

        let empty = Market::builder().build().unwrap();
        let all: Vec<_> = enumerate_matchings(&empty, &Limits::default()).unwrap().collect();
        assert_eq!(all, vec![Matching::empty(&empty)]);

        let ex = fixtures::example_one();
        let n = count_matchings(&ex, &Limits::default()).unwrap();
        assert_eq!(n, oracle_count(&ex));
        // brute force over 4^4 worker choices filtered by quota
        assert_eq!(n, 115);
    }

    #[test]
    fn enumeration_is_distinct_and_valid() {
        let ex = fixtures::example_one();
        let all: Vec<Matching> = enumerate_matchings(&ex, &Limits::default()).unwrap().collect();
        assert!(all[0].is_empty());
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        for m in &all {
            let blocks: Vec<_> = m.blocks().map(|(f, ws)| (f, ws.to_vec())).collect();
            assert_eq!(Matching::new(&ex, &blocks).as_ref(), Ok(m));
        }
    }

    #[test]
    fn example_one_sets() {
        let ex = fixtures::example_one();
        let limits = Limits::default();
        let sss = solution_set(&ex, Concept::SuperStable, &limits).unwrap();
        assert!(sss.contains(&fixtures::mu(&ex, 1)));
        let core = solution_set(&ex, Concept::Core, &limits).unwrap();
        assert!(core.contains(&fixtures::mu(&ex, 4)));
        let stable = solution_set(&ex, Concept::Stable, &limits).unwrap();
        assert!(!stable.contains(&fixtures::mu(&ex, 4)));
    }

    #[test]
    fn single_seat_strong_core_is_empty() {
        let r = fixtures::single_seat();
        let limits = Limits::default();
        assert!(solution_set(&r, Concept::StrongCore, &limits).unwrap().is_empty());
        assert_eq!(solution_set(&r, Concept::Stable, &limits).unwrap().len(), 2);
        let rel = verify_relations(&r, &limits).unwrap();
        assert!(rel.all_pass(), "{rel:?}");
    }

    #[test]
    fn example_one_relations() {
        let ex = fixtures::example_one();
        let report = solution_report(&ex, &Limits::default()).unwrap();
        let rel = report.relations();
        assert!(rel.all_pass(), "{rel:?}");
        assert_eq!(rel.one_to_one_core_is_stable, None);
        assert!(report.set(Concept::Stable).len() < report.set(Concept::Core).len());
    }

    #[test]
    fn empty_market_relations() {
        let empty = Market::builder().build().unwrap();
        let report = solution_report(&empty, &Limits::default()).unwrap();
        for c in Concept::ALL {
            assert_eq!(report.set(c), vec![&Matching::empty(&empty)], "{c}");
        }
        assert!(report.relations().all_pass());
    }
}
