//! Coalitional domination.
//!
//! A coalition `C` can enforce any assignment `nu` that matches its members
//! among themselves: every firm in `C` gets workers from `C`, every worker
//! in `C` gets a firm from `C` or stays unmatched. Agents outside `C` play no
//! part, so `nu` is only defined on `C`.
//!
//! Firms compare their old and new worker sets with the responsive set
//! order; workers compare firms directly.

use alloc::vec::Vec;

use thiserror::Error;

use crate::limits::{GuardrailError, Limits};
use crate::market::{Agent, Comparison, Firm, Market, Matching, Side, Worker};
use crate::responsive::compare_worker_sets;

/// Strength of a domination. Domination implies weak domination, which
/// implies super weak domination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomNotion {
    /// Every member strictly gains.
    Dominates,
    /// Every member weakly gains and one strictly.
    WeaklyDominates,
    /// Every member weakly gains and one is assigned differently.
    SuperWeaklyDominates,
}

impl DomNotion {
    pub const ALL: [DomNotion; 3] = [DomNotion::Dominates, DomNotion::WeaklyDominates, DomNotion::SuperWeaklyDominates];

    // what each member must satisfy
    fn member_ok(self, c: Comparison) -> bool {
        match self {
            DomNotion::Dominates => c.strict(),
            DomNotion::WeaklyDominates | DomNotion::SuperWeaklyDominates => c.at_least(),
        }
    }

    fn existential_ok(self, any_strict: bool, any_changed: bool) -> bool {
        match self {
            DomNotion::Dominates => true,
            DomNotion::WeaklyDominates => any_strict,
            DomNotion::SuperWeaklyDominates => any_changed,
        }
    }
}

/// A coalition together with the assignment it enforces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoalitionAssignment {
    firms: Vec<(Firm, Vec<Worker>)>,
    workers: Vec<(Worker, Option<Firm>)>,
}

impl CoalitionAssignment {
    /// The coalition is every firm and worker listed. Entries are sorted
    /// into canonical order; nothing is validated here.
    pub fn new(mut firms: Vec<(Firm, Vec<Worker>)>, mut workers: Vec<(Worker, Option<Firm>)>) -> Self {
        for (_, ws) in &mut firms {
            ws.sort_unstable();
        }
        firms.sort_unstable();
        workers.sort_unstable();
        CoalitionAssignment { firms, workers }
    }

    /// `m` restricted to `coalition`.
    pub fn restrict(m: &Matching, coalition: &[Agent]) -> Self {
        let mut firms = Vec::new();
        let mut workers = Vec::new();
        for &a in coalition {
            match a {
                Agent::Firm(f) => firms.push((f, m.of_firm(f).to_vec())),
                Agent::Worker(w) => workers.push((w, m.of_worker(w))),
            }
        }
        CoalitionAssignment::new(firms, workers)
    }

    pub fn members(&self) -> Vec<Agent> {
        self.firms
            .iter()
            .map(|(f, _)| Agent::Firm(*f))
            .chain(self.workers.iter().map(|(w, _)| Agent::Worker(*w)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.firms.len() + self.workers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn firm_blocks(&self) -> impl Iterator<Item = (Firm, &[Worker])> + '_ {
        self.firms.iter().map(|(f, ws)| (*f, ws.as_slice()))
    }

    pub fn worker_assignments(&self) -> impl Iterator<Item = (Worker, Option<Firm>)> + '_ {
        self.workers.iter().copied()
    }

    pub fn contains(&self, a: Agent) -> bool {
        match a {
            Agent::Firm(f) => self.firms.binary_search_by_key(&f, |(g, _)| *g).is_ok(),
            Agent::Worker(w) => self.worker_firm(w).is_some(),
        }
    }

    fn firm_set(&self, f: Firm) -> Option<&[Worker]> {
        self.firms.binary_search_by_key(&f, |(g, _)| *g).ok().map(|i| self.firms[i].1.as_slice())
    }

    fn worker_firm(&self, w: Worker) -> Option<Option<Firm>> {
        self.workers.binary_search_by_key(&w, |(x, _)| *x).ok().map(|i| self.workers[i].1)
    }
}

/// A coalition assignment that dominates a matching under `notion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominationWitness {
    pub notion: DomNotion,
    pub assignment: CoalitionAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DominanceError {
    #[error("{side} index {index} is out of range")]
    UnknownAgent { side: Side, index: usize },
    #[error("{0:?} is listed twice in the coalition")]
    DuplicateMember(Agent),
    #[error("the coalition cannot enforce this assignment")]
    NotEnforceable,
}

/// True iff the coalition is non-empty, `nu` is mutually consistent and
/// respects quotas, and nobody in the coalition is assigned outside it.
/// Workers in the coalition may be left unmatched.
pub fn is_enforceable(market: &Market, ca: &CoalitionAssignment) -> Result<bool, DominanceError> {
    for w in ca.firms.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(DominanceError::DuplicateMember(Agent::Firm(w[0].0)));
        }
    }
    for w in ca.workers.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(DominanceError::DuplicateMember(Agent::Worker(w[0].0)));
        }
    }
    let bad_firm = |f: Firm| f.0 >= market.firm_count();
    let bad_worker = |w: Worker| w.0 >= market.worker_count();
    for (f, ws) in &ca.firms {
        if bad_firm(*f) {
            return Err(DominanceError::UnknownAgent { side: Side::Firm, index: f.0 });
        }
        if let Some(w) = ws.iter().find(|w| bad_worker(**w)) {
            return Err(DominanceError::UnknownAgent { side: Side::Worker, index: w.0 });
        }
    }
    for (w, f) in &ca.workers {
        if bad_worker(*w) {
            return Err(DominanceError::UnknownAgent { side: Side::Worker, index: w.0 });
        }
        if let Some(f) = f.filter(|f| bad_firm(*f)) {
            return Err(DominanceError::UnknownAgent { side: Side::Firm, index: f.0 });
        }
    }

    if ca.is_empty() {
        return Ok(false);
    }
    for (f, ws) in &ca.firms {
        if ws.len() > market.quota(*f) || ws.windows(2).any(|p| p[0] == p[1]) {
            return Ok(false);
        }
        if ws.iter().any(|&w| ca.worker_firm(w) != Some(Some(*f))) {
            return Ok(false);
        }
    }
    for (w, f) in &ca.workers {
        if let Some(f) = *f {
            match ca.firm_set(f) {
                Some(ws) if ws.contains(w) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Evaluates the domination clause for an enforceable coalition assignment.
pub fn check_domination(
    market: &Market,
    ca: &CoalitionAssignment,
    m: &Matching,
    notion: DomNotion,
) -> Result<bool, DominanceError> {
    if !is_enforceable(market, ca)? {
        return Err(DominanceError::NotEnforceable);
    }
    let mut any_strict = false;
    let mut any_changed = false;
    for (f, ws) in ca.firm_blocks() {
        let c = compare_worker_sets(market.firm_pref(f), market.quota(f), ws, m.of_firm(f));
        if !notion.member_ok(c) {
            return Ok(false);
        }
        any_strict |= c.strict();
        any_changed |= ws != m.of_firm(f);
    }
    for (w, f) in ca.worker_assignments() {
        let c = market.worker_pref(w).compare_indices(f.map(|f| f.0), m.of_worker(w).map(|g| g.0));
        if !notion.member_ok(c) {
            return Ok(false);
        }
        any_strict |= c.strict();
        any_changed |= f != m.of_worker(w);
    }
    Ok(notion.existential_ok(any_strict, any_changed))
}

/// Exhaustive search for a coalition assignment that dominates `m`.
///
/// Coalitions are tried by size, then lexicographically in canonical agent
/// order; within a coalition, assignments are built firm by firm. The first
/// witness found is returned, so it is always one of the smallest.
pub fn find_domination_witness(
    market: &Market,
    m: &Matching,
    notion: DomNotion,
    limits: &Limits,
) -> Result<Option<DominationWitness>, GuardrailError> {
    let order: Vec<Agent> = market.agents().collect();
    find_domination_witness_in_order(market, m, notion, &order, limits)
}

/// [`find_domination_witness`] with coalitions drawn from `order` and
/// enumerated in that order instead of the canonical one.
pub fn find_domination_witness_in_order(
    market: &Market,
    m: &Matching,
    notion: DomNotion,
    order: &[Agent],
    limits: &Limits,
) -> Result<Option<DominationWitness>, GuardrailError> {
    limits.check_market(market)?;
    let search = Search { market, m, notion };
    let n = order.len();
    let mut idx: Vec<usize> = Vec::with_capacity(n);
    for size in 1..=n {
        idx.clear();
        idx.extend(0..size);
        loop {
            if let Some(found) = search.coalition(idx.iter().map(|&i| order[i])) {
                return Ok(Some(found));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Search<'a> {
    market: &'a Market,
    m: &'a Matching,
    notion: DomNotion,
}

#[derive(Clone, Copy)]
struct Progress {
    any_strict: bool,
    any_changed: bool,
}

impl Search<'_> {
    fn coalition(&self, members: impl Iterator<Item = Agent>) -> Option<DominationWitness> {
        let mut firms = Vec::new();
        let mut workers = Vec::new();
        for a in members {
            match a {
                Agent::Firm(f) => firms.push(f),
                Agent::Worker(w) => workers.push(w),
            }
        }
        // every worker needs at least one acceptable option inside the coalition
        for &w in &workers {
            let pref = self.market.worker_pref(w);
            let current = self.m.of_worker(w).map(|g| g.0);
            let has_option = core::iter::once(None)
                .chain(firms.iter().map(|f| Some(f.0)))
                .any(|alt| self.notion.member_ok(pref.compare_indices(alt, current)));
            if !has_option {
                return None;
            }
        }
        let mut blocks: Vec<(Firm, Vec<Worker>)> = Vec::with_capacity(firms.len());
        let all_free = (0..workers.len()).fold(0u64, |acc, i| acc | (1 << i));
        let start = Progress { any_strict: false, any_changed: false };
        if self.assign(&firms, &workers, 0, all_free, start, &mut blocks) {
            let mut assigned: Vec<(Worker, Option<Firm>)> = workers.iter().map(|&w| (w, None)).collect();
            for (f, ws) in &blocks {
                for w in ws {
                    if let Some(slot) = assigned.iter_mut().find(|(x, _)| x == w) {
                        slot.1 = Some(*f);
                    }
                }
            }
            return Some(DominationWitness {
                notion: self.notion,
                assignment: CoalitionAssignment::new(blocks, assigned),
            });
        }
        None
    }

    // `free` is a bitmask over positions in `workers`.
    fn assign(
        &self,
        firms: &[Firm],
        workers: &[Worker],
        k: usize,
        free: u64,
        progress: Progress,
        blocks: &mut Vec<(Firm, Vec<Worker>)>,
    ) -> bool {
        if k == firms.len() {
            let mut p = progress;
            for (i, &w) in workers.iter().enumerate() {
                if free & (1 << i) == 0 {
                    continue;
                }
                let current = self.m.of_worker(w);
                let c = self.market.worker_pref(w).compare_indices(None, current.map(|g| g.0));
                if !self.notion.member_ok(c) {
                    return false;
                }
                p.any_strict |= c.strict();
                p.any_changed |= current.is_some();
            }
            return self.notion.existential_ok(p.any_strict, p.any_changed);
        }

        let f = firms[k];
        let quota = self.market.quota(f);
        let fpref = self.market.firm_pref(f);
        let held = self.m.of_firm(f);
        let candidates: Vec<usize> = (0..workers.len()).filter(|i| free & (1 << i) != 0).collect();
        let mut chosen: Vec<Worker> = Vec::with_capacity(quota);
        let mut sorted: Vec<Worker> = Vec::with_capacity(quota);
        let mut idx: Vec<usize> = Vec::with_capacity(quota);
        for size in 0..=quota.min(candidates.len()) {
            idx.clear();
            idx.extend(0..size);
            loop {
                chosen.clear();
                chosen.extend(idx.iter().map(|&i| workers[candidates[i]]));
                if let Some(p) = self.evaluate_block(f, fpref, quota, held, &chosen, &mut sorted, progress) {
                    let taken = idx.iter().fold(0u64, |acc, &i| acc | (1 << candidates[i]));
                    blocks.push((f, sorted.clone()));
                    if self.assign(firms, workers, k + 1, free & !taken, p, blocks) {
                        return true;
                    }
                    blocks.pop();
                }
                if !next_combination(&mut idx, candidates.len()) {
                    break;
                }
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn evaluate_block(
        &self,
        f: Firm,
        fpref: &crate::market::TieredPreference,
        quota: usize,
        held: &[Worker],
        chosen: &[Worker],
        sorted: &mut Vec<Worker>,
        progress: Progress,
    ) -> Option<Progress> {
        let c = compare_worker_sets(fpref, quota, chosen, held);
        if !self.notion.member_ok(c) {
            return None;
        }
        sorted.clear();
        sorted.extend_from_slice(chosen);
        sorted.sort_unstable();
        let mut p = progress;
        p.any_strict |= c.strict();
        p.any_changed |= sorted.as_slice() != held;
        for &w in chosen {
            let current = self.m.of_worker(w);
            let c = self.market.worker_pref(w).compare_indices(Some(f.0), current.map(|g| g.0));
            if !self.notion.member_ok(c) {
                return None;
            }
            p.any_strict |= c.strict();
            p.any_changed |= current != Some(f);
        }
        Some(p)
    }
}

/// True iff no coalition dominates `m` under `notion`.
pub fn is_undominated(
    market: &Market,
    m: &Matching,
    notion: DomNotion,
    limits: &Limits,
) -> Result<bool, GuardrailError> {
    find_domination_witness(market, m, notion, limits).map(|w| w.is_none())
}

impl DominationWitness {
    /// Re-validates the witness from scratch.
    pub fn holds(&self, market: &Market, m: &Matching) -> bool {
        matches!(check_domination(market, &self.assignment, m, self.notion), Ok(true))
    }
}
