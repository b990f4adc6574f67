//! Reference markets used by the CLI, the tests and the docs.

use alloc::vec::Vec;

use crate::market::{Market, Matching};

/// Three firms (`f1` has quota 2), four workers, ties on both sides.
pub fn example_one() -> Market {
    Market::builder()
        .firm("f1", 2, &[&["w1"], &["w4"], &["w2", "w3"]])
        .firm("f2", 1, &[&["w2", "w3"], &["w1"], &["w4"]])
        .firm("f3", 1, &[&["w2", "w3"], &["w4"], &["w1"]])
        .worker("w1", &[&["f3"], &["f1"], &["f2"]])
        .worker("w2", &[&["f1"], &["f2", "f3"]])
        .worker("w3", &[&["f1"], &["f2", "f3"]])
        .worker("w4", &[&["f2"], &["f3"], &["f1"]])
        .build()
        .expect("reference market is valid")
}

/// The four reference matchings of [`example_one`], `which` in `1..=4`:
///
/// 1. `f1:w2,w3;f2:w4;f3:w1` (super stable)
/// 2. `f1:w1,w4;f2:w2;f3:w3` (strongly but not super stable)
/// 3. `f1:w1,w2;f2:w4;f3:w3` (stable, not strongly stable)
/// 4. `f1:w2,w3;f2:w1;f3:w4` (in the core, not stable)
pub fn mu(market: &Market, which: usize) -> Matching {
    let blocks: &[(&str, &[&str])] = match which {
        1 => &[("f1", &["w2", "w3"]), ("f2", &["w4"]), ("f3", &["w1"])],
        2 => &[("f1", &["w1", "w4"]), ("f2", &["w2"]), ("f3", &["w3"])],
        3 => &[("f1", &["w1", "w2"]), ("f2", &["w4"]), ("f3", &["w3"])],
        4 => &[("f1", &["w2", "w3"]), ("f2", &["w1"]), ("f3", &["w4"])],
        _ => panic!("reference matchings are numbered 1 to 4"),
    };
    by_names(market, blocks)
}

/// One firm with quota 1, indifferent between two workers who both accept
/// it. Both single-edge matchings are stable and the strong core is empty.
pub fn single_seat() -> Market {
    Market::builder()
        .firm("f", 1, &[&["w1", "w2"]])
        .worker("w1", &[&["f"]])
        .worker("w2", &[&["f"]])
        .build()
        .expect("reference market is valid")
}

/// [`single_seat`] plus a worker `x` who accepts `f` but is unacceptable to it.
pub fn single_seat_with_outsider() -> Market {
    Market::builder()
        .firm("f", 1, &[&["w1", "w2"]])
        .worker("w1", &[&["f"]])
        .worker("w2", &[&["f"]])
        .worker("x", &[&["f"]])
        .build()
        .expect("reference market is valid")
}

/// Builds a matching from firm and worker names. Panics on unknown names or
/// invalid assignments.
pub fn by_names(market: &Market, blocks: &[(&str, &[&str])]) -> Matching {
    let raw: Vec<_> = blocks
        .iter()
        .map(|(f, ws)| {
            let f = market.find_firm(f).expect("known firm");
            (f, ws.iter().map(|w| market.find_worker(w).expect("known worker")).collect())
        })
        .collect();
    Matching::new(market, &raw).expect("valid matching")
}
