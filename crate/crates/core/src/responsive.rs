//! The responsive extension of a firm's worker ranking to sets of workers.
//!
//! A set of at most `q_f` workers is represented by its [`RankVector`]: the
//! sorted ranks of its members, padded with the rank of an empty slot up to
//! `q_f` entries. Two admissible sets compare by
//!
//! 1. the number of acceptable members (more is better), then
//! 2. their rank vectors, lexicographically (smaller is better).
//!
//! Any set larger than `q_f` is worse than every admissible set, and all
//! oversize sets are mutually indifferent.
//!
//! A swap between two acceptable workers changes one entry of the vector
//! and no count; a swap across the acceptability boundary, or filling an
//! empty slot, changes the count in the direction of the individual
//! comparison. The order is therefore responsive, which the exhaustive
//! [`audit_responsive`] confirms for a concrete firm. A firm with two
//! positions thus prefers two acceptable workers of any rank to its single
//! favourite.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::limits::{GuardrailError, Limits};
use crate::market::{Comparison, Firm, Market, Rank, Side, TieredPreference, Worker};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("{side} index {index} is out of range")]
    UnknownAgent { side: Side, index: usize },
    #[error("worker index {0} appears twice in a set")]
    DuplicateWorker(usize),
    #[error("a set of {size} workers exceeds quota {quota}")]
    Oversize { size: usize, quota: usize },
    #[error(transparent)]
    Guardrail(#[from] GuardrailError),
}

/// Sorted member ranks padded to the firm's quota.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankVector(Vec<Rank>);

impl RankVector {
    pub fn entries(&self) -> &[Rank] {
        &self.0
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", r.0)?;
        }
        f.write_str(")")
    }
}

pub fn rank_vector(market: &Market, firm: Firm, workers: &[Worker]) -> Result<RankVector, SetError> {
    check_set(market, firm, workers)?;
    let quota = market.quota(firm);
    if workers.len() > quota {
        return Err(SetError::Oversize { size: workers.len(), quota });
    }
    let pref = market.firm_pref(firm);
    let mut ranks: Vec<Rank> = workers.iter().map(|w| pref.rank_of(Some(w.0))).collect();
    ranks.resize(quota, pref.empty_rank());
    ranks.sort_unstable();
    Ok(RankVector(ranks))
}

/// Compares two sets of workers from `firm`'s point of view.
pub fn compare_sets(market: &Market, firm: Firm, a: &[Worker], b: &[Worker]) -> Result<Comparison, SetError> {
    check_set(market, firm, a)?;
    check_set(market, firm, b)?;
    Ok(compare_worker_sets(market.firm_pref(firm), market.quota(firm), a, b))
}

/// Unchecked comparison of two duplicate-free sets.
///
/// After the acceptable-member counts, walking ranks from best to worst, the
/// first rank at which the two padded vectors hold different counts
/// decides: more members there means a lexicographically smaller vector.
pub(crate) fn compare_worker_sets(pref: &TieredPreference, quota: usize, a: &[Worker], b: &[Worker]) -> Comparison {
    match (a.len() > quota, b.len() > quota) {
        (true, true) => return Comparison::Indifferent,
        (true, false) => return Comparison::StrictlyWorse,
        (false, true) => return Comparison::StrictlyBetter,
        (false, false) => {}
    }
    let empty = pref.empty_rank();
    let acceptable = |set: &[Worker]| set.iter().filter(|w| pref.rank_of(Some(w.0)) < empty).count();
    let (aa, ab) = (acceptable(a), acceptable(b));
    if aa != ab {
        return if aa > ab { Comparison::StrictlyBetter } else { Comparison::StrictlyWorse };
    }
    let count = |set: &[Worker], r: Rank| {
        let members = set.iter().filter(|w| pref.rank_of(Some(w.0)) == r).count();
        if r == empty {
            members + quota - set.len()
        } else {
            members
        }
    };
    for r in 0..=pref.unacceptable_rank().0 {
        let (ca, cb) = (count(a, Rank(r)), count(b, Rank(r)));
        if ca != cb {
            return if ca > cb { Comparison::StrictlyBetter } else { Comparison::StrictlyWorse };
        }
    }
    Comparison::Indifferent
}

fn check_set(market: &Market, firm: Firm, set: &[Worker]) -> Result<(), SetError> {
    if firm.0 >= market.firm_count() {
        return Err(SetError::UnknownAgent { side: Side::Firm, index: firm.0 });
    }
    let mut seen = 0u128;
    for w in set {
        if w.0 >= market.worker_count() {
            return Err(SetError::UnknownAgent { side: Side::Worker, index: w.0 });
        }
        if w.0 < 128 {
            if seen & (1 << w.0) != 0 {
                return Err(SetError::DuplicateWorker(w.0));
            }
            seen |= 1 << w.0;
        } else if set.iter().filter(|x| *x == w).count() > 1 {
            return Err(SetError::DuplicateWorker(w.0));
        }
    }
    Ok(())
}

/// Which clause of the responsiveness definition a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Every oversize set is strictly worse than the empty set.
    Oversize,
    /// A swap is a strict improvement iff the incoming worker is strictly
    /// preferred to the outgoing one.
    StrictSwap,
    /// A swap is an indifference iff the two workers are indifferent.
    IndifferentSwap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub set: Vec<Worker>,
    /// Worker swapped out, `None` when an empty slot is filled.
    pub removed: Option<Worker>,
    pub added: Option<Worker>,
}

/// Result of an exhaustive responsiveness audit for one firm.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResponsiveAudit {
    pub oversize_checks: usize,
    pub strict_swap_checks: usize,
    pub indifferent_swap_checks: usize,
    pub violations: Vec<Violation>,
}

impl ResponsiveAudit {
    pub fn violations_of(&self, condition: Condition) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.condition == condition)
    }
}

/// Enumerates every subset of workers and checks the set order of `firm`
/// against the responsiveness conditions.
///
/// Swaps are checked for every admissible set `T` (`|T| <= q_f`), every
/// outgoing `w'` in `T` and every incoming `w` outside `T`. Filling an empty
/// slot (`w'` = nobody) is only meaningful while `|T| < q_f`.
pub fn audit_responsive(market: &Market, firm: Firm, limits: &Limits) -> Result<ResponsiveAudit, SetError> {
    if firm.0 >= market.firm_count() {
        return Err(SetError::UnknownAgent { side: Side::Firm, index: firm.0 });
    }
    let n = market.worker_count();
    let cap = limits.max_audit_workers.min(30);
    if n > cap {
        return Err(GuardrailError::TooManyWorkers { found: n, limit: cap }.into());
    }
    let pref = market.firm_pref(firm);
    let quota = market.quota(firm);
    let members = |mask: u32| -> Vec<Worker> { (0..n).filter(|i| mask & (1 << i) != 0).map(Worker).collect() };

    let mut audit = ResponsiveAudit::default();
    let record =
        |audit: &mut ResponsiveAudit, set: &[Worker], removed: Option<Worker>, added: Worker, swapped: &[Worker]| {
            let sets = compare_worker_sets(pref, quota, swapped, set);
            let pair = pref.compare_indices(Some(added.0), removed.map(|w| w.0));
            audit.strict_swap_checks += 1;
            if sets.strict() != pair.strict() {
                audit.violations.push(Violation {
                    condition: Condition::StrictSwap,
                    set: set.to_vec(),
                    removed,
                    added: Some(added),
                });
            }
            audit.indifferent_swap_checks += 1;
            if (sets == Comparison::Indifferent) != (pair == Comparison::Indifferent) {
                audit.violations.push(Violation {
                    condition: Condition::IndifferentSwap,
                    set: set.to_vec(),
                    removed,
                    added: Some(added),
                });
            }
        };

    for mask in 0u32..(1u32 << n) {
        let set = members(mask);
        if set.len() > quota {
            audit.oversize_checks += 1;
            if compare_worker_sets(pref, quota, &[], &set) != Comparison::StrictlyBetter {
                audit.violations.push(Violation { condition: Condition::Oversize, set, removed: None, added: None });
            }
            continue;
        }
        for incoming in (0..n).filter(|i| mask & (1 << i) == 0) {
            for &outgoing in &set {
                let swapped = members((mask & !(1 << outgoing.0)) | (1 << incoming));
                record(&mut audit, &set, Some(outgoing), Worker(incoming), &swapped);
            }
            if set.len() < quota {
                let grown = members(mask | (1 << incoming));
                record(&mut audit, &set, None, Worker(incoming), &grown);
            }
        }
    }
    Ok(audit)
}

/// The violations of [`audit_responsive`]; empty iff the firm's set order
/// is responsive.
pub fn check_responsive(market: &Market, firm: Firm, limits: &Limits) -> Result<Vec<Violation>, SetError> {
    audit_responsive(market, firm, limits).map(|a| a.violations)
}
