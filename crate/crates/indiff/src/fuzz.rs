//! Runs the relation checks over many generated markets.
//!
//! Trial `i` uses seed `cfg.seed + i` (wrapping), so every failure can be
//! replayed by generating a single market from its seed.

use std::fmt;

use indiff_core::solutions::{verify_relations, Relation};
use indiff_core::stability::classify_stability;
use indiff_core::tiebreak::{check_intersection_property, check_union_property, deferred_acceptance, tie_breakings};
use indiff_core::{Limits, Market, Matching, Proposing};
use rayon::prelude::*;

use crate::format::serialize_market;
use crate::generate::{generate_market, GenConfig, GenConfigError};

/// The checks run on every trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Every stable matching is in the core.
    T1,
    /// The strong core equals the strongly stable set.
    T2,
    /// The super core equals the super stable set.
    T3,
    /// The core equals the stable set (one-to-one markets).
    P1,
    /// The core is non-empty.
    Nonempty,
    /// `SSS ⊆ SS ⊆ S ⊆ C` and `C_SS ⊆ C_S ⊆ C`.
    Chain,
    /// The super core is the intersection of the tie-breakings' stable sets.
    Intersection,
    /// The core is the union of the tie-breakings' stable sets
    /// (one-to-one markets).
    Union,
    /// Deferred acceptance on every tie-breaking, both sides proposing,
    /// returns a matching stable in the original market.
    Deferred,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::T1,
        Check::T2,
        Check::T3,
        Check::P1,
        Check::Nonempty,
        Check::Chain,
        Check::Intersection,
        Check::Union,
        Check::Deferred,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Check::T1 => "T1",
            Check::T2 => "T2",
            Check::T3 => "T3",
            Check::P1 => "P1",
            Check::Nonempty => "NONEMPTY",
            Check::Chain => "CHAIN",
            Check::Intersection => "INTERSECTION",
            Check::Union => "UNION",
            Check::Deferred => "DA",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Vec<Matching>),
    /// A guardrail was exceeded.
    Skipped,
    /// The check does not apply to this market.
    NotApplicable,
}

impl From<&Relation> for Outcome {
    fn from(r: &Relation) -> Self {
        match r {
            Relation::Pass => Outcome::Pass,
            Relation::Fail(ms) => Outcome::Fail(ms.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trial {
    pub seed: u64,
    pub market: Market,
    /// Indexed like [`Check::ALL`].
    pub outcomes: Vec<Outcome>,
}

/// Runs every check on one market.
pub fn run_checks(market: &Market, limits: &Limits) -> Vec<Outcome> {
    let mut out = vec![Outcome::Skipped; Check::ALL.len()];
    let mut set = |c: Check, o: Outcome| out[Check::ALL.iter().position(|&x| x == c).unwrap()] = o;

    if let Ok(r) = verify_relations(market, limits) {
        set(Check::T1, (&r.stable_in_core).into());
        set(Check::T2, (&r.strong_core_is_strongly_stable).into());
        set(Check::T3, (&r.super_core_is_super_stable).into());
        set(Check::P1, r.one_to_one_core_is_stable.as_ref().map_or(Outcome::NotApplicable, Outcome::from));
        set(Check::Nonempty, (&r.core_nonempty).into());
        set(Check::Chain, (&r.inclusion_chain).into());
    }
    if let Ok(p) = check_intersection_property(market, limits) {
        set(Check::Intersection, (&p.relation).into());
    }
    match check_union_property(market, limits) {
        Ok(Some(p)) => set(Check::Union, (&p.relation).into()),
        Ok(None) => set(Check::Union, Outcome::NotApplicable),
        Err(_) => {}
    }
    if let Ok(refinements) = tie_breakings(market, limits) {
        let mut bad = Vec::new();
        for p in refinements {
            for side in [Proposing::Firms, Proposing::Workers] {
                let m = deferred_acceptance(&p, side);
                if !classify_stability(market, &m).is_stable() && !bad.contains(&m) {
                    bad.push(m);
                }
            }
        }
        set(Check::Deferred, if bad.is_empty() { Outcome::Pass } else { Outcome::Fail(bad) });
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    pub not_applicable: u64,
}

#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub trials: u64,
    /// Indexed like [`Check::ALL`].
    pub tallies: Vec<Tally>,
    /// Trials with at least one failing check, in seed order.
    pub failures: Vec<Trial>,
}

impl FuzzReport {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, c: Check) -> Tally {
        self.tallies[Check::ALL.iter().position(|&x| x == c).unwrap()]
    }
}

/// Generates `trials` markets from consecutive seeds and checks each.
pub fn run_fuzz(cfg: &GenConfig, trials: u64, limits: &Limits) -> Result<FuzzReport, GenConfigError> {
    cfg.validate()?;
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let market = generate_market(&cfg.with_seed(seed)).expect("validated config");
            let outcomes = run_checks(&market, limits);
            Trial { seed, market, outcomes }
        })
        .collect();

    let mut tallies = vec![Tally::default(); Check::ALL.len()];
    let mut failures = Vec::new();
    for t in results {
        for (tally, o) in tallies.iter_mut().zip(&t.outcomes) {
            match o {
                Outcome::Pass => tally.pass += 1,
                Outcome::Fail(_) => tally.fail += 1,
                Outcome::Skipped => tally.skip += 1,
                Outcome::NotApplicable => tally.not_applicable += 1,
            }
        }
        if t.outcomes.iter().any(|o| matches!(o, Outcome::Fail(_))) {
            failures.push(t);
        }
    }
    Ok(FuzzReport { trials, tallies, failures })
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials: {}", self.trials)?;
        for (c, t) in Check::ALL.iter().zip(&self.tallies) {
            writeln!(f, "{:<12} pass={} fail={} skip={} n-a={}", c.label(), t.pass, t.fail, t.skip, t.not_applicable)?;
        }
        for t in &self.failures {
            for (c, o) in Check::ALL.iter().zip(&t.outcomes) {
                if let Outcome::Fail(ms) = o {
                    let lits: Vec<String> = ms.iter().map(|m| t.market.matching_literal(m)).collect();
                    writeln!(f, "FAIL seed={} check={} counterexample={}", t.seed, c.label(), lits.join(" "))?;
                }
            }
            for line in serialize_market(&t.market).lines() {
                writeln!(f, "  {line}")?;
            }
        }
        write!(f, "{}", if self.success() { "OK" } else { "FAILED" })
    }
}
