//! Stability and core solution concepts for many-to-one matching markets in
//! which agents may be indifferent between partners and firms rank sets of
//! workers responsively.
//!
//! Six solution concepts are computed independently of each other:
//!
//! * stable, strongly stable and super stable matchings, from the three
//!   blocking-pair notions in [`stability`];
//! * the core, strong core and super core, from exhaustive coalition
//!   domination searches in [`dominance`].
//!
//! [`solutions`] enumerates every matching of a small market and checks the
//! relations between the six sets, and [`tiebreak`] relates them to the
//! stable sets of all strict tie-breakings.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dominance;
pub mod fixtures;
mod limits;
pub mod market;
pub mod responsive;
pub mod solutions;
pub mod stability;
pub mod tiebreak;

pub use dominance::{CoalitionAssignment, DomNotion, DominationWitness};
pub use limits::{GuardrailError, Limits};
pub use market::{
    Agent, AgentId, Comparison, Firm, Market, MarketBuilder, MarketError, Matching, MatchingError, Rank, Side,
    TieredPreference, Worker,
};
pub use responsive::RankVector;
pub use solutions::{Concept, Relation, RelationReport, SolutionReport};
pub use stability::{BlockCase, BlockNotion, BlockingWitness, StabilityClass, StabilityFailure};
pub use tiebreak::{Proposing, StrictMarket};
