#![allow(dead_code)]

use indiff_core::{Market, Matching};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of a random market.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub firms: usize,
    pub workers: usize,
    pub qmax: usize,
    pub ties: f64,
    pub accept: f64,
}

fn random_tiers(rng: &mut ChaCha8Rng, names: &[String], ties: f64, accept: f64) -> Vec<Vec<String>> {
    let mut order: Vec<&String> = names.iter().collect();
    order.shuffle(rng);
    let mut tiers: Vec<Vec<String>> = Vec::new();
    for name in order {
        if !rng.gen_bool(accept) {
            continue;
        }
        match tiers.last_mut() {
            Some(t) if rng.gen_bool(ties) => t.push(name.clone()),
            _ => tiers.push(vec![name.clone()]),
        }
    }
    tiers
}

pub fn random_market(shape: Shape, seed: u64) -> Market {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let firms: Vec<String> = (1..=shape.firms).map(|i| format!("f{i}")).collect();
    let workers: Vec<String> = (1..=shape.workers).map(|i| format!("w{i}")).collect();
    let mut b = Market::builder();
    for f in &firms {
        let q = rng.gen_range(1..=shape.qmax);
        let tiers = random_tiers(&mut rng, &workers, shape.ties, shape.accept);
        b.firm_owned(f.clone(), q, tiers);
    }
    for w in &workers {
        let tiers = random_tiers(&mut rng, &firms, shape.ties, shape.accept);
        b.worker_owned(w.clone(), tiers);
    }
    b.build().expect("generated market is valid")
}

/// Markets with at most `firms` firms and `workers` workers.
pub fn markets(firms: usize, workers: usize, qmax: usize) -> impl Strategy<Value = Market> {
    (0..=firms, 0..=workers, 1..=qmax, 0.0..0.8f64, 0.4..=1.0f64, any::<u64>()).prop_map(
        |(firms, workers, qmax, ties, accept, seed)| random_market(Shape { firms, workers, qmax, ties, accept }, seed),
    )
}

/// Every matching, built by assigning each worker in turn to nothing or to
/// a firm with room left.
pub fn all_matchings(market: &Market) -> Vec<Matching> {
    fn go(market: &Market, w: usize, choice: &mut Vec<Option<usize>>, out: &mut Vec<Matching>) {
        if w == market.worker_count() {
            let blocks: Vec<(indiff_core::Firm, Vec<indiff_core::Worker>)> = market
                .firms()
                .map(|f| {
                    let ws = (0..choice.len()).filter(|&i| choice[i] == Some(f.0)).map(indiff_core::Worker).collect();
                    (f, ws)
                })
                .collect();
            out.push(Matching::new(market, &blocks).expect("quota respected"));
            return;
        }
        choice.push(None);
        go(market, w + 1, choice, out);
        choice.pop();
        for f in market.firms() {
            if choice.iter().filter(|c| **c == Some(f.0)).count() < market.quota(f) {
                choice.push(Some(f.0));
                go(market, w + 1, choice, out);
                choice.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(market, 0, &mut Vec::new(), &mut out);
    out
}
