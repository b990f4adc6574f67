//! Markets, tiered weak-order preferences and matchings.
//!
//! Agents are addressed by dense indices ([`Firm`], [`Worker`]) assigned in
//! canonical order: within each side, agents are sorted by name. Every
//! deterministic iteration in this crate follows that order.
//!
//! A [`TieredPreference`] lists acceptable partners as ranked indifference
//! tiers. Being unmatched sits in its own tier directly after the listed ones
//! and every unlisted partner shares one tier below it, so nobody can be
//! indifferent between a partner and being unmatched.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Firm,
    Worker,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Firm => Side::Worker,
            Side::Worker => Side::Firm,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Firm => "firm",
            Side::Worker => "worker",
        })
    }
}

/// Named agent. Orders by side, then name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId {
    pub side: Side,
    pub name: String,
}

impl AgentId {
    pub fn firm(name: &str) -> AgentId {
        AgentId { side: Side::Firm, name: name.to_string() }
    }

    pub fn worker(name: &str) -> AgentId {
        AgentId { side: Side::Worker, name: name.to_string() }
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Checks `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Canonical index of a firm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Firm(pub usize);

/// Canonical index of a worker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Worker(pub usize);

/// Index-level agent reference. Firms order before workers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Agent {
    Firm(Firm),
    Worker(Worker),
}

impl Agent {
    pub fn side(self) -> Side {
        match self {
            Agent::Firm(_) => Side::Firm,
            Agent::Worker(_) => Side::Worker,
        }
    }

    fn index(self) -> usize {
        match self {
            Agent::Firm(Firm(i)) | Agent::Worker(Worker(i)) => i,
        }
    }
}

/// Position in a weak order; lower is better.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(pub usize);

/// Outcome of comparing two alternatives from one agent's point of view.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    StrictlyBetter,
    Indifferent,
    StrictlyWorse,
}

impl Comparison {
    pub fn of_ranks(a: Rank, b: Rank) -> Comparison {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Comparison::StrictlyBetter,
            core::cmp::Ordering::Equal => Comparison::Indifferent,
            core::cmp::Ordering::Greater => Comparison::StrictlyWorse,
        }
    }

    /// The weak relation `a R b`.
    pub fn at_least(self) -> bool {
        self != Comparison::StrictlyWorse
    }

    /// The strict relation `a P b`.
    pub fn strict(self) -> bool {
        self == Comparison::StrictlyBetter
    }

    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::StrictlyBetter => Comparison::StrictlyWorse,
            Comparison::Indifferent => Comparison::Indifferent,
            Comparison::StrictlyWorse => Comparison::StrictlyBetter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MarketError {
    #[error("invalid agent name `{0}`")]
    InvalidName(String),
    #[error("duplicate {side} `{name}`")]
    DuplicateAgent { side: Side, name: String },
    #[error("unknown {side} `{name}` in the preference of `{owner}`")]
    UnknownAgent { side: Side, name: String, owner: String },
    #[error("`{name}` is listed twice in the preference of `{owner}`")]
    DuplicateTierMember { name: String, owner: String },
    #[error("empty indifference tier in the preference of `{owner}`")]
    EmptyTier { owner: String },
    #[error("firm `{name}` has quota 0; quotas must be at least 1")]
    ZeroQuota { name: String },
    #[error("{found} alternative given to a preference over {expected}s")]
    WrongSide { expected: Side, found: Side },
    #[error("{side} index {index} is out of range")]
    OutOfRange { side: Side, index: usize },
}

/// Ranked indifference tiers over the opposite side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TieredPreference {
    owner: Agent,
    tiers: Vec<Vec<usize>>,
    // rank per opposite-side index; unlisted entries hold tiers.len() + 1
    ranks: Vec<usize>,
}

impl TieredPreference {
    /// Builds a preference from tiers of opposite-side indices. Members of a
    /// tier are kept in ascending index order.
    pub fn new(owner: Agent, opposite_len: usize, tiers: Vec<Vec<usize>>) -> Result<TieredPreference, MarketError> {
        let unlisted = tiers.len() + 1;
        let mut ranks = vec![unlisted; opposite_len];
        let mut sorted = Vec::with_capacity(tiers.len());
        for (k, mut tier) in tiers.into_iter().enumerate() {
            if tier.is_empty() {
                return Err(MarketError::EmptyTier { owner: owner_label(owner) });
            }
            for &alt in &tier {
                if alt >= opposite_len {
                    return Err(MarketError::OutOfRange { side: owner.side().opposite(), index: alt });
                }
                if ranks[alt] != unlisted {
                    return Err(MarketError::DuplicateTierMember {
                        name: format_index(owner.side().opposite(), alt),
                        owner: owner_label(owner),
                    });
                }
                ranks[alt] = k;
            }
            tier.sort_unstable();
            sorted.push(tier);
        }
        Ok(TieredPreference { owner, tiers: sorted, ranks })
    }

    pub fn owner(&self) -> Agent {
        self.owner
    }

    pub fn tiers(&self) -> &[Vec<usize>] {
        &self.tiers
    }

    pub fn tier_count(&self) -> usize {
        self.tiers.len()
    }

    /// Number of opposite-side agents this preference ranks.
    pub fn opposite_len(&self) -> usize {
        self.ranks.len()
    }

    /// Rank of being unmatched.
    pub fn empty_rank(&self) -> Rank {
        Rank(self.tiers.len())
    }

    /// Rank shared by every unlisted partner.
    pub fn unacceptable_rank(&self) -> Rank {
        Rank(self.tiers.len() + 1)
    }

    /// Rank of an opposite-side index, or of being unmatched for `None`.
    ///
    /// Panics if the index is out of range.
    #[inline]
    pub fn rank_of(&self, alt: Option<usize>) -> Rank {
        match alt {
            Some(i) => Rank(self.ranks[i]),
            None => Rank(self.tiers.len()),
        }
    }

    #[inline]
    pub fn compare_indices(&self, a: Option<usize>, b: Option<usize>) -> Comparison {
        Comparison::of_ranks(self.rank_of(a), self.rank_of(b))
    }

    pub fn is_acceptable(&self, alt: usize) -> bool {
        self.ranks[alt] < self.tiers.len()
    }

    /// Rank of an alternative, `None` standing for being unmatched.
    pub fn rank(&self, alt: Option<Agent>) -> Result<Rank, MarketError> {
        Ok(self.rank_of(self.check_alt(alt)?))
    }

    pub fn compare(&self, a: Option<Agent>, b: Option<Agent>) -> Result<Comparison, MarketError> {
        let a = self.check_alt(a)?;
        let b = self.check_alt(b)?;
        Ok(self.compare_indices(a, b))
    }

    fn check_alt(&self, alt: Option<Agent>) -> Result<Option<usize>, MarketError> {
        let Some(agent) = alt else { return Ok(None) };
        let expected = self.owner.side().opposite();
        if agent.side() != expected {
            return Err(MarketError::WrongSide { expected, found: agent.side() });
        }
        let i = agent.index();
        if i >= self.ranks.len() {
            return Err(MarketError::OutOfRange { side: expected, index: i });
        }
        Ok(Some(i))
    }

    pub(crate) fn with_tiers(&self, tiers: Vec<Vec<usize>>) -> TieredPreference {
        TieredPreference::new(self.owner, self.ranks.len(), tiers)
            .expect("refined tiers are a permutation of valid tiers")
    }
}

fn owner_label(owner: Agent) -> String {
    format_index(owner.side(), owner.index())
}

fn format_index(side: Side, index: usize) -> String {
    alloc::format!("{side} #{index}")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FirmEntry {
    name: String,
    quota: usize,
    pref: TieredPreference,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct WorkerEntry {
    name: String,
    pref: TieredPreference,
}

/// A many-to-one market: firms with quotas, workers, and one tiered
/// preference per agent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Market {
    firms: Vec<FirmEntry>,
    workers: Vec<WorkerEntry>,
}

impl Market {
    pub fn builder() -> MarketBuilder {
        MarketBuilder::default()
    }

    pub fn firm_count(&self) -> usize {
        self.firms.len()
    }

    pub fn worker_count(&self) -> usize {
        self.workers.len()
    }

    pub fn firms(&self) -> impl DoubleEndedIterator<Item = Firm> + ExactSizeIterator + Clone {
        (0..self.firms.len()).map(Firm)
    }

    pub fn workers(&self) -> impl DoubleEndedIterator<Item = Worker> + ExactSizeIterator + Clone {
        (0..self.workers.len()).map(Worker)
    }

    /// All agents in canonical order: firms, then workers.
    pub fn agents(&self) -> impl Iterator<Item = Agent> + '_ {
        self.firms().map(Agent::Firm).chain(self.workers().map(Agent::Worker))
    }

    pub fn firm_name(&self, f: Firm) -> &str {
        &self.firms[f.0].name
    }

    pub fn worker_name(&self, w: Worker) -> &str {
        &self.workers[w.0].name
    }

    pub fn agent_name(&self, a: Agent) -> &str {
        match a {
            Agent::Firm(f) => self.firm_name(f),
            Agent::Worker(w) => self.worker_name(w),
        }
    }

    pub fn agent_id(&self, a: Agent) -> AgentId {
        AgentId { side: a.side(), name: self.agent_name(a).to_string() }
    }

    pub fn quota(&self, f: Firm) -> usize {
        self.firms[f.0].quota
    }

    pub fn max_quota(&self) -> usize {
        self.firms.iter().map(|e| e.quota).max().unwrap_or(0)
    }

    pub fn firm_pref(&self, f: Firm) -> &TieredPreference {
        &self.firms[f.0].pref
    }

    pub fn worker_pref(&self, w: Worker) -> &TieredPreference {
        &self.workers[w.0].pref
    }

    pub fn pref(&self, a: Agent) -> &TieredPreference {
        match a {
            Agent::Firm(f) => self.firm_pref(f),
            Agent::Worker(w) => self.worker_pref(w),
        }
    }

    pub fn find_firm(&self, name: &str) -> Option<Firm> {
        self.firms.binary_search_by(|e| e.name.as_str().cmp(name)).ok().map(Firm)
    }

    pub fn find_worker(&self, name: &str) -> Option<Worker> {
        self.workers.binary_search_by(|e| e.name.as_str().cmp(name)).ok().map(Worker)
    }

    pub fn find(&self, id: &AgentId) -> Option<Agent> {
        match id.side {
            Side::Firm => self.find_firm(&id.name).map(Agent::Firm),
            Side::Worker => self.find_worker(&id.name).map(Agent::Worker),
        }
    }

    /// True iff every quota is 1 (vacuously true without firms).
    pub fn is_one_to_one(&self) -> bool {
        self.firms.iter().all(|e| e.quota == 1)
    }

    /// Same agents and quotas with every preference replaced.
    pub(crate) fn with_preferences(
        &self,
        firm_prefs: Vec<TieredPreference>,
        worker_prefs: Vec<TieredPreference>,
    ) -> Market {
        debug_assert_eq!(firm_prefs.len(), self.firms.len());
        debug_assert_eq!(worker_prefs.len(), self.workers.len());
        Market {
            firms: self
                .firms
                .iter()
                .zip(firm_prefs)
                .map(|(e, pref)| FirmEntry { name: e.name.clone(), quota: e.quota, pref })
                .collect(),
            workers: self
                .workers
                .iter()
                .zip(worker_prefs)
                .map(|(e, pref)| WorkerEntry { name: e.name.clone(), pref })
                .collect(),
        }
    }

    /// Renders a matching as `f1:w2,w3;f2:w4`. Firms without workers are
    /// omitted; the empty matching renders as `-`.
    pub fn matching_literal(&self, m: &Matching) -> String {
        self.assignment_literal(self.firms().map(|f| (f, m.of_firm(f))))
    }

    /// Shared by matchings and coalition assignments.
    pub fn assignment_literal<'a>(&self, blocks: impl Iterator<Item = (Firm, &'a [Worker])>) -> String {
        let mut out = String::new();
        for (f, ws) in blocks {
            if ws.is_empty() {
                continue;
            }
            if !out.is_empty() {
                out.push(';');
            }
            out.push_str(self.firm_name(f));
            out.push(':');
            for (i, &w) in ws.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(self.worker_name(w));
            }
        }
        if out.is_empty() {
            out.push('-');
        }
        out
    }
}

/// Collects agents by name and validates them into a [`Market`].
#[derive(Clone, Debug, Default)]
pub struct MarketBuilder {
    firms: Vec<(String, usize, Vec<Vec<String>>)>,
    workers: Vec<(String, Vec<Vec<String>>)>,
}

impl MarketBuilder {
    pub fn firm(&mut self, name: &str, quota: usize, tiers: &[&[&str]]) -> &mut Self {
        self.firms.push((name.to_string(), quota, owned_tiers(tiers)));
        self
    }

    pub fn worker(&mut self, name: &str, tiers: &[&[&str]]) -> &mut Self {
        self.workers.push((name.to_string(), owned_tiers(tiers)));
        self
    }

    pub fn firm_owned(&mut self, name: String, quota: usize, tiers: Vec<Vec<String>>) -> &mut Self {
        self.firms.push((name, quota, tiers));
        self
    }

    pub fn worker_owned(&mut self, name: String, tiers: Vec<Vec<String>>) -> &mut Self {
        self.workers.push((name, tiers));
        self
    }

    pub fn build(&self) -> Result<Market, MarketError> {
        let firm_index = index_names(Side::Firm, self.firms.iter().map(|(n, _, _)| n.as_str()))?;
        let worker_index = index_names(Side::Worker, self.workers.iter().map(|(n, _)| n.as_str()))?;

        let mut firms: Vec<FirmEntry> = Vec::with_capacity(self.firms.len());
        for (name, quota, tiers) in &self.firms {
            if *quota < 1 {
                return Err(MarketError::ZeroQuota { name: name.clone() });
            }
            let owner = Agent::Firm(Firm(firm_index[name.as_str()]));
            let pref = resolve_pref(owner, name, tiers, Side::Worker, &worker_index)?;
            firms.push(FirmEntry { name: name.clone(), quota: *quota, pref });
        }
        let mut workers: Vec<WorkerEntry> = Vec::with_capacity(self.workers.len());
        for (name, tiers) in &self.workers {
            let owner = Agent::Worker(Worker(worker_index[name.as_str()]));
            let pref = resolve_pref(owner, name, tiers, Side::Firm, &firm_index)?;
            workers.push(WorkerEntry { name: name.clone(), pref });
        }
        firms.sort_by(|a, b| a.name.cmp(&b.name));
        workers.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Market { firms, workers })
    }
}

fn owned_tiers(tiers: &[&[&str]]) -> Vec<Vec<String>> {
    tiers.iter().map(|t| t.iter().map(|s| s.to_string()).collect()).collect()
}

// Canonical index of each name: its position in sorted order.
fn index_names<'a>(side: Side, names: impl Iterator<Item = &'a str>) -> Result<BTreeMap<&'a str, usize>, MarketError> {
    let mut seen = BTreeMap::new();
    for name in names {
        if !is_valid_name(name) {
            return Err(MarketError::InvalidName(name.to_string()));
        }
        if seen.insert(name, 0).is_some() {
            return Err(MarketError::DuplicateAgent { side, name: name.to_string() });
        }
    }
    for (i, slot) in seen.values_mut().enumerate() {
        *slot = i;
    }
    Ok(seen)
}

fn resolve_pref(
    owner: Agent,
    owner_name: &str,
    tiers: &[Vec<String>],
    opposite: Side,
    index: &BTreeMap<&str, usize>,
) -> Result<TieredPreference, MarketError> {
    let mut resolved = Vec::with_capacity(tiers.len());
    for tier in tiers {
        let mut ids = Vec::with_capacity(tier.len());
        for name in tier {
            let Some(&i) = index.get(name.as_str()) else {
                return Err(MarketError::UnknownAgent {
                    side: opposite,
                    name: name.clone(),
                    owner: owner_name.to_string(),
                });
            };
            ids.push(i);
        }
        resolved.push(ids);
    }
    TieredPreference::new(owner, index.len(), resolved).map_err(|e| match e {
        MarketError::DuplicateTierMember { name: _, owner: _ } => {
            let dup = first_duplicate(tiers).unwrap_or_default();
            MarketError::DuplicateTierMember { name: dup, owner: owner_name.to_string() }
        }
        MarketError::EmptyTier { .. } => MarketError::EmptyTier { owner: owner_name.to_string() },
        other => other,
    })
}

fn first_duplicate(tiers: &[Vec<String>]) -> Option<String> {
    let mut seen = BTreeMap::new();
    tiers.iter().flatten().find(|n| seen.insert(n.as_str(), ()).is_some()).cloned()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("firm `{firm}` is assigned {assigned} workers but its quota is {quota}")]
    QuotaExceeded { firm: String, quota: usize, assigned: usize },
    #[error("worker `{0}` is assigned more than once")]
    DoubleAssignment(String),
    #[error("firm `{0}` appears in more than one block")]
    DuplicateFirm(String),
    #[error("{side} index {index} is out of range")]
    UnknownAgent { side: Side, index: usize },
}

/// A quota-respecting, mutually consistent assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    // sorted ascending per firm
    firm_workers: Vec<Vec<Worker>>,
    worker_firm: Vec<Option<Firm>>,
}

impl Matching {
    pub fn empty(market: &Market) -> Matching {
        Matching { firm_workers: vec![Vec::new(); market.firm_count()], worker_firm: vec![None; market.worker_count()] }
    }

    /// Validates raw firm blocks; agents not mentioned are unmatched.
    pub fn new(market: &Market, blocks: &[(Firm, Vec<Worker>)]) -> Result<Matching, MatchingError> {
        let mut m = Matching::empty(market);
        let mut seen_firm = vec![false; market.firm_count()];
        for (f, ws) in blocks {
            if f.0 >= market.firm_count() {
                return Err(MatchingError::UnknownAgent { side: Side::Firm, index: f.0 });
            }
            if core::mem::replace(&mut seen_firm[f.0], true) {
                return Err(MatchingError::DuplicateFirm(market.firm_name(*f).to_string()));
            }
            for w in ws {
                if w.0 >= market.worker_count() {
                    return Err(MatchingError::UnknownAgent { side: Side::Worker, index: w.0 });
                }
                if m.worker_firm[w.0].replace(*f).is_some() {
                    return Err(MatchingError::DoubleAssignment(market.worker_name(*w).to_string()));
                }
                m.firm_workers[f.0].push(*w);
            }
            if ws.len() > market.quota(*f) {
                return Err(MatchingError::QuotaExceeded {
                    firm: market.firm_name(*f).to_string(),
                    quota: market.quota(*f),
                    assigned: ws.len(),
                });
            }
            m.firm_workers[f.0].sort_unstable();
        }
        Ok(m)
    }

    /// Builds from a per-worker choice vector without validation; callers
    /// guarantee quotas.
    pub(crate) fn from_worker_choices(market: &Market, choices: &[Option<Firm>]) -> Matching {
        let mut m = Matching::empty(market);
        for (i, &c) in choices.iter().enumerate() {
            if let Some(f) = c {
                m.firm_workers[f.0].push(Worker(i));
            }
            m.worker_firm[i] = c;
        }
        m
    }

    pub fn of_firm(&self, f: Firm) -> &[Worker] {
        &self.firm_workers[f.0]
    }

    pub fn of_worker(&self, w: Worker) -> Option<Firm> {
        self.worker_firm[w.0]
    }

    pub fn is_empty(&self) -> bool {
        self.worker_firm.iter().all(Option::is_none)
    }

    /// Matched pairs, firm-major.
    pub fn pairs(&self) -> impl Iterator<Item = (Firm, Worker)> + '_ {
        self.firm_workers.iter().enumerate().flat_map(|(f, ws)| ws.iter().map(move |&w| (Firm(f), w)))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Firm, &[Worker])> + '_ {
        self.firm_workers.iter().enumerate().map(|(f, ws)| (Firm(f), ws.as_slice()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(m: &Market, n: &str) -> Option<Agent> {
        Some(Agent::Worker(m.find_worker(n).unwrap()))
    }

    fn f(m: &Market, n: &str) -> Option<Agent> {
        Some(Agent::Firm(m.find_firm(n).unwrap()))
    }

    #[test]
    fn example_one_shape() {
        let m = fixtures::example_one();
        assert_eq!(m.firm_count(), 3);
        assert_eq!(m.worker_count(), 4);
        assert_eq!(m.quota(m.find_firm("f1").unwrap()), 2);
        assert_eq!(m.quota(m.find_firm("f2").unwrap()), 1);
        assert!(!m.is_one_to_one());
    }

    #[test]
    fn ranks_follow_tiers() {
        let m = fixtures::example_one();
        let f1 = m.firm_pref(m.find_firm("f1").unwrap());
        assert_eq!(f1.rank(w(&m, "w4")).unwrap(), Rank(1));
        assert_eq!(f1.rank(None).unwrap(), Rank(3));
        let w2 = m.worker_pref(m.find_worker("w2").unwrap());
        assert_eq!(w2.rank(f(&m, "f3")).unwrap(), Rank(1));
        assert_eq!(w2.rank(f(&m, "f2")).unwrap(), Rank(1));
    }

    #[test]
    fn compare_examples() {
        let m = fixtures::example_one();
        let f1 = m.firm_pref(m.find_firm("f1").unwrap());
        assert_eq!(f1.compare(w(&m, "w2"), w(&m, "w3")).unwrap(), Comparison::Indifferent);
        let w1 = m.worker_pref(m.find_worker("w1").unwrap());
        assert_eq!(w1.compare(f(&m, "f3"), f(&m, "f2")).unwrap(), Comparison::StrictlyBetter);
        assert_eq!(w1.compare(f(&m, "f1"), f(&m, "f1")).unwrap(), Comparison::Indifferent);
        assert_eq!(w1.compare(None, None).unwrap(), Comparison::Indifferent);
    }

    #[test]
    fn wrong_side_alternative_is_rejected() {
        let m = fixtures::example_one();
        let f1 = m.firm_pref(m.find_firm("f1").unwrap());
        assert_eq!(f1.rank(f(&m, "f2")), Err(MarketError::WrongSide { expected: Side::Worker, found: Side::Firm }));
        assert!(f1.compare(w(&m, "w1"), Some(Agent::Worker(Worker(9)))).is_err());
    }

    #[test]
    fn unlisted_sits_below_empty() {
        let m = fixtures::single_seat_with_outsider();
        let f = m.firm_pref(Firm(0));
        let x = m.find_worker("x").unwrap();
        assert_eq!(f.rank_of(Some(x.0)), f.unacceptable_rank());
        assert_eq!(f.compare_indices(None, Some(x.0)), Comparison::StrictlyBetter);
        assert!(!f.is_acceptable(x.0));
    }

    #[test]
    fn builder_errors() {
        let dup = Market::builder().firm("f1", 2, &[&["w1"]]).firm("f1", 2, &[&["w1"]]).worker("w1", &[]).build();
        assert_eq!(dup, Err(MarketError::DuplicateAgent { side: Side::Firm, name: "f1".into() }));

        let unknown = Market::builder().firm("f1", 1, &[&["w9"]]).build();
        assert!(matches!(unknown, Err(MarketError::UnknownAgent { .. })));

        let twice = Market::builder().firm("f1", 1, &[&["w1"], &["w1"]]).worker("w1", &[]).build();
        assert!(matches!(twice, Err(MarketError::DuplicateTierMember { ref name, .. }) if name == "w1"));

        let zero = Market::builder().firm("f1", 0, &[]).build();
        assert_eq!(zero, Err(MarketError::ZeroQuota { name: "f1".into() }));

        let bad = Market::builder().worker("1w", &[]).build();
        assert_eq!(bad, Err(MarketError::InvalidName("1w".into())));
    }

    #[test]
    fn empty_market() {
        let m = Market::builder().build().unwrap();
        assert_eq!(m.firm_count() + m.worker_count(), 0);
        assert!(m.is_one_to_one());
        assert_eq!(m.matching_literal(&Matching::empty(&m)), "-");
    }

    #[test]
    fn canonical_order_is_by_name() {
        let m = Market::builder().worker("zed", &[]).worker("amy", &[]).build().unwrap();
        assert_eq!(m.worker_name(Worker(0)), "amy");
        assert_eq!(m.find_worker("zed"), Some(Worker(1)));
    }

    #[test]
    fn matching_validation() {
        let m = fixtures::example_one();
        let mu1 = fixtures::mu(&m, 1);
        assert_eq!(m.matching_literal(&mu1), "f1:w2,w3;f2:w4;f3:w1");

        let fi = |n| m.find_firm(n).unwrap();
        let wi = |n| m.find_worker(n).unwrap();
        let over = Matching::new(&m, &[(fi("f1"), vec![wi("w1"), wi("w2"), wi("w3")])]);
        assert!(matches!(over, Err(MatchingError::QuotaExceeded { quota: 2, assigned: 3, .. })));
        let double = Matching::new(&m, &[(fi("f1"), vec![wi("w1")]), (fi("f2"), vec![wi("w1")])]);
        assert_eq!(double, Err(MatchingError::DoubleAssignment("w1".into())));
        let unknown = Matching::new(&m, &[(Firm(7), vec![])]);
        assert!(matches!(unknown, Err(MatchingError::UnknownAgent { side: Side::Firm, .. })));
    }

    #[test]
    fn one_to_one_detection() {
        assert!(!fixtures::example_one().is_one_to_one());
        assert!(fixtures::single_seat().is_one_to_one());
    }
}
