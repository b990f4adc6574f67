//! Individual rationality and the three blocking-pair notions.

use alloc::vec::Vec;

use crate::market::{Agent, Comparison, Firm, Market, Matching, Worker};

/// Strength of a blocking pair. Every blocking pair weakly blocks, and every
/// weakly blocking pair super weakly blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockNotion {
    /// Both sides strictly gain.
    Block,
    /// One side strictly gains, the other weakly.
    WeakBlock,
    /// Both sides weakly gain.
    SuperWeakBlock,
}

impl BlockNotion {
    pub const ALL: [BlockNotion; 3] = [BlockNotion::Block, BlockNotion::WeakBlock, BlockNotion::SuperWeakBlock];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockCase {
    /// The firm is full and would give up `displaced`.
    QuotaFull { displaced: Worker },
    /// The firm has a free position.
    Vacancy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockingWitness {
    pub firm: Firm,
    pub worker: Worker,
    pub notion: BlockNotion,
    pub case: BlockCase,
}

/// Checks that nobody holds a partner worse than being unmatched. Firms are
/// checked before workers; the first offender is returned.
pub fn individual_rationality(market: &Market, m: &Matching) -> Result<(), Agent> {
    for f in market.firms() {
        let pref = market.firm_pref(f);
        if m.of_firm(f).iter().any(|w| !pref.is_acceptable(w.0)) {
            return Err(Agent::Firm(f));
        }
    }
    for w in market.workers() {
        if let Some(f) = m.of_worker(w) {
            if !market.worker_pref(w).is_acceptable(f.0) {
                return Err(Agent::Worker(w));
            }
        }
    }
    Ok(())
}

pub fn is_individually_rational(market: &Market, m: &Matching) -> bool {
    individual_rationality(market, m).is_ok()
}

/// The worker side of a pair: how `w` ranks `f` against its current firm.
fn worker_gain(market: &Market, m: &Matching, f: Firm, w: Worker) -> Comparison {
    market.worker_pref(w).compare_indices(Some(f.0), m.of_worker(w).map(|g| g.0))
}

fn clause(notion: BlockNotion, firm_side: Comparison, worker_side: Comparison) -> bool {
    match notion {
        BlockNotion::Block => firm_side.strict() && worker_side.strict(),
        BlockNotion::WeakBlock => {
            (firm_side.at_least() && worker_side.strict()) || (firm_side.strict() && worker_side.at_least())
        }
        BlockNotion::SuperWeakBlock => firm_side.at_least() && worker_side.at_least(),
    }
}

/// Evaluates whether `(f, w)` blocks `m` under `notion`, returning the case
/// that applies. For a full firm the displaced worker is the first member of
/// `m(f)` (canonical order) that satisfies the clause.
pub fn pair_blocks(market: &Market, m: &Matching, notion: BlockNotion, f: Firm, w: Worker) -> Option<BlockCase> {
    if m.of_worker(w) == Some(f) {
        return None;
    }
    let fpref = market.firm_pref(f);
    let held = m.of_firm(f);
    let worker_side = worker_gain(market, m, f, w);
    if held.len() >= market.quota(f) {
        held.iter()
            .find(|&&out| clause(notion, fpref.compare_indices(Some(w.0), Some(out.0)), worker_side))
            .map(|&displaced| BlockCase::QuotaFull { displaced })
    } else {
        // with a free slot the firm only needs to find `w` acceptable, and
        // every notion asks the same of the worker except plain blocking
        let acceptable = fpref.is_acceptable(w.0);
        let worker_ok = match notion {
            BlockNotion::Block => worker_side.strict(),
            BlockNotion::WeakBlock | BlockNotion::SuperWeakBlock => worker_side.at_least(),
        };
        (acceptable && worker_ok).then_some(BlockCase::Vacancy)
    }
}

/// All pairs `(f, w)` with `w` not in `m(f)` that block under `notion`,
/// ordered by firm, then worker.
pub fn find_blocking_pairs(market: &Market, m: &Matching, notion: BlockNotion) -> Vec<BlockingWitness> {
    let mut out = Vec::new();
    for f in market.firms() {
        for w in market.workers() {
            if let Some(case) = pair_blocks(market, m, notion, f, w) {
                out.push(BlockingWitness { firm: f, worker: w, notion, case });
            }
        }
    }
    out
}

pub fn first_blocking_pair(market: &Market, m: &Matching, notion: BlockNotion) -> Option<BlockingWitness> {
    market.firms().find_map(|f| {
        market.workers().find_map(|w| {
            pair_blocks(market, m, notion, f, w).map(|case| BlockingWitness { firm: f, worker: w, notion, case })
        })
    })
}

/// Re-checks a witness against the defining clause through [`Comparison`]s
/// alone.
pub fn witness_holds(market: &Market, m: &Matching, witness: &BlockingWitness) -> bool {
    let BlockingWitness { firm: f, worker: w, notion, case } = *witness;
    if m.of_worker(w) == Some(f) {
        return false;
    }
    let fpref = market.firm_pref(f);
    let worker_side = worker_gain(market, m, f, w);
    match case {
        BlockCase::QuotaFull { displaced } => {
            m.of_firm(f).len() == market.quota(f)
                && m.of_firm(f).contains(&displaced)
                && clause(notion, fpref.compare_indices(Some(w.0), Some(displaced.0)), worker_side)
        }
        BlockCase::Vacancy => {
            m.of_firm(f).len() < market.quota(f)
                && fpref.compare_indices(Some(w.0), None).strict()
                && match notion {
                    BlockNotion::Block => worker_side.strict(),
                    _ => worker_side.at_least(),
                }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityFailure {
    NotIndividuallyRational(Agent),
    Blocked(BlockingWitness),
}

/// Membership in the stable, strongly stable and super stable sets, each
/// with the reason for non-membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabilityClass {
    pub stable: Result<(), StabilityFailure>,
    pub strongly_stable: Result<(), StabilityFailure>,
    pub super_stable: Result<(), StabilityFailure>,
}

impl StabilityClass {
    pub fn get(&self, notion: BlockNotion) -> Result<(), StabilityFailure> {
        match notion {
            BlockNotion::Block => self.stable,
            BlockNotion::WeakBlock => self.strongly_stable,
            BlockNotion::SuperWeakBlock => self.super_stable,
        }
    }

    pub fn is_stable(&self) -> bool {
        self.stable.is_ok()
    }

    pub fn is_strongly_stable(&self) -> bool {
        self.strongly_stable.is_ok()
    }

    pub fn is_super_stable(&self) -> bool {
        self.super_stable.is_ok()
    }
}

/// Stable under `notion`: individually rational with no blocking pair of
/// that strength.
pub fn check_stability(market: &Market, m: &Matching, notion: BlockNotion) -> Result<(), StabilityFailure> {
    individual_rationality(market, m).map_err(StabilityFailure::NotIndividuallyRational)?;
    match first_blocking_pair(market, m, notion) {
        Some(w) => Err(StabilityFailure::Blocked(w)),
        None => Ok(()),
    }
}

pub fn classify_stability(market: &Market, m: &Matching) -> StabilityClass {
    StabilityClass {
        stable: check_stability(market, m, BlockNotion::Block),
        strongly_stable: check_stability(market, m, BlockNotion::WeakBlock),
        super_stable: check_stability(market, m, BlockNotion::SuperWeakBlock),
    }
}
