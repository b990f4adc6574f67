//! File formats, a seeded market generator, a fuzz harness and the `indiff`
//! command line on top of [`indiff_core`].

pub mod cli;
pub mod format;
pub mod fuzz;
pub mod generate;
pub mod report;

pub use format::{parse_market, parse_matching, serialize_market, ParseError};
pub use fuzz::{run_fuzz, FuzzReport};
pub use generate::{generate_market, GenConfig};
