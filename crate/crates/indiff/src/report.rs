//! Text reports: one line per matching, and the relations line.

use indiff_core::solutions::{MatchingReport, Relation};
use indiff_core::{Concept, Market, RelationReport};

use crate::format::{domination_witness, stability_failure};

/// Why `row` is not in `concept`, or `None` if it is.
pub fn witness(market: &Market, row: &MatchingReport, concept: Concept) -> Option<String> {
    match (concept.block_notion(), concept.dom_notion()) {
        (Some(n), _) => row.stability.get(n).err().map(|f| stability_failure(market, &f)),
        (_, Some(n)) => row.witness(n).map(|w| domination_witness(market, w)),
        _ => None,
    }
}

/// `<literal> S=y SS=n SSS=n C=y CS=n CSS=n [witness=...]`, the witness
/// being the one for the first concept the matching misses.
pub fn matching_line(market: &Market, row: &MatchingReport) -> String {
    let mut line = market.matching_literal(&row.matching);
    for c in Concept::ALL {
        line.push_str(&format!(" {}={}", c.label(), if row.member(c) { 'y' } else { 'n' }));
    }
    if let Some(w) = Concept::ALL.iter().find_map(|&c| witness(market, row, c)) {
        line.push_str(" witness=");
        line.push_str(&w);
    }
    line
}

pub fn relations_line(r: &RelationReport) -> String {
    format!(
        "RELATIONS: T1={} T2={} T3={} P1={} NONEMPTY={}",
        r.stable_in_core.label(),
        r.strong_core_is_strongly_stable.label(),
        r.super_core_is_super_stable.label(),
        r.one_to_one_core_is_stable.as_ref().map_or("n-a", Relation::label),
        r.core_nonempty.label(),
    )
}

/// One line per failing relation, naming its counterexamples.
pub fn relation_failures(market: &Market, r: &RelationReport) -> Vec<String> {
    let named = [
        ("T1", Some(&r.stable_in_core)),
        ("T2", Some(&r.strong_core_is_strongly_stable)),
        ("T3", Some(&r.super_core_is_super_stable)),
        ("P1", r.one_to_one_core_is_stable.as_ref()),
        ("NONEMPTY", Some(&r.core_nonempty)),
        ("CHAIN", Some(&r.inclusion_chain)),
    ];
    named
        .into_iter()
        .filter_map(|(name, rel)| match rel? {
            Relation::Pass => None,
            Relation::Fail(ms) => {
                let lits: Vec<String> = ms.iter().map(|m| market.matching_literal(m)).collect();
                Some(format!("{name} fails on: {}", if lits.is_empty() { "-".into() } else { lits.join(" ") }))
            }
        })
        .collect()
}

/// The strongest concepts a matching reaches on each ladder, e.g.
/// `SS not SSS`, `C not S`, `SSS`.
pub fn verdict(row: &MatchingReport) -> String {
    let ladder = [Concept::SuperStable, Concept::StronglyStable, Concept::Stable, Concept::Core];
    match ladder.iter().position(|&c| row.member(c)) {
        Some(0) => "SSS".into(),
        Some(i) => format!("{} not {}", ladder[i].label(), ladder[i - 1].label()),
        None => "not C".into(),
    }
}
