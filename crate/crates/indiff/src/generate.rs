//! Seeded random markets.
//!
//! All randomness comes from `ChaCha8Rng` (rand_chacha 0.3) seeded with
//! `seed_from_u64`, driven through the rand 0.8 sampling routines, so a seed
//! names the same market on every platform.
//!
//! Firms `f1..fn` draw a quota, then every agent, firms first, ranks the
//! opposite side: a uniform shuffle, a coin per alternative with
//! probability `accept` to keep it, and a coin per adjacent kept pair with
//! probability `ties` to put both in the same tier.

use indiff_core::Market;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub firms: usize,
    pub workers: usize,
    pub qmin: usize,
    pub qmax: usize,
    /// Probability that two adjacent alternatives share a tier.
    pub ties: f64,
    /// Probability that an alternative is acceptable.
    pub accept: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { firms: 3, workers: 4, qmin: 1, qmax: 2, ties: 0.3, accept: 0.9, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GenConfigError {
    #[error("{name} must lie in [0, 1], got {value}")]
    Probability { name: &'static str, value: f64 },
    #[error("quota range {qmin}..={qmax} must satisfy 1 <= qmin <= qmax <= {cap}")]
    QuotaRange { qmin: usize, qmax: usize, cap: usize },
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenConfigError> {
        for (name, value) in [("ties", self.ties), ("accept", self.accept)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GenConfigError::Probability { name, value });
            }
        }
        let cap = self.workers.max(1);
        if self.qmin < 1 || self.qmin > self.qmax || self.qmax > cap {
            return Err(GenConfigError::QuotaRange { qmin: self.qmin, qmax: self.qmax, cap });
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig { seed, ..*self }
    }
}

fn ranking(rng: &mut ChaCha8Rng, names: &[String], ties: f64, accept: f64) -> Vec<Vec<String>> {
    let mut order: Vec<&String> = names.iter().collect();
    order.shuffle(rng);
    let mut tiers: Vec<Vec<String>> = Vec::new();
    for name in order {
        if !rng.gen_bool(accept) {
            continue;
        }
        match tiers.last_mut() {
            Some(tier) if rng.gen_bool(ties) => tier.push(name.clone()),
            _ => tiers.push(vec![name.clone()]),
        }
    }
    tiers
}

pub fn generate_market(cfg: &GenConfig) -> Result<Market, GenConfigError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let firms: Vec<String> = (1..=cfg.firms).map(|i| format!("f{i}")).collect();
    let workers: Vec<String> = (1..=cfg.workers).map(|i| format!("w{i}")).collect();
    let quotas: Vec<usize> = firms.iter().map(|_| rng.gen_range(cfg.qmin..=cfg.qmax)).collect();
    let mut b = Market::builder();
    for (name, q) in firms.iter().zip(quotas) {
        b.firm_owned(name.clone(), q, ranking(&mut rng, &workers, cfg.ties, cfg.accept));
    }
    for name in &workers {
        b.worker_owned(name.clone(), ranking(&mut rng, &firms, cfg.ties, cfg.accept));
    }
    Ok(b.build().expect("generated names are unique and valid"))
}
