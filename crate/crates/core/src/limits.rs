use thiserror::Error;

/// Size caps for the exhaustive searches. Exceeding one is a hard error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_firms: usize,
    pub max_workers: usize,
    pub max_quota: usize,
    /// Cap on `|L(R)|`, the number of strict tie-breakings.
    pub max_tie_breakings: u128,
    /// Cap on `|W|` for the exhaustive responsiveness audit.
    pub max_audit_workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_firms: 4, max_workers: 6, max_quota: 3, max_tie_breakings: 1_000_000, max_audit_workers: 12 }
    }
}

impl Limits {
    /// No caps beyond what the bitmask representation supports.
    pub fn unbounded() -> Self {
        Limits {
            max_firms: usize::MAX,
            max_workers: 63,
            max_quota: usize::MAX,
            max_tie_breakings: u128::MAX,
            max_audit_workers: 20,
        }
    }

    pub(crate) fn check_market(&self, market: &crate::Market) -> Result<(), GuardrailError> {
        if market.firm_count() > self.max_firms {
            return Err(GuardrailError::TooManyFirms { found: market.firm_count(), limit: self.max_firms });
        }
        // worker sets are u64 masks
        let worker_cap = self.max_workers.min(63);
        if market.worker_count() > worker_cap {
            return Err(GuardrailError::TooManyWorkers { found: market.worker_count(), limit: worker_cap });
        }
        if market.max_quota() > self.max_quota {
            return Err(GuardrailError::QuotaTooLarge { found: market.max_quota(), limit: self.max_quota });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GuardrailError {
    #[error("{found} firms exceed the search limit of {limit}")]
    TooManyFirms { found: usize, limit: usize },
    #[error("{found} workers exceed the search limit of {limit}")]
    TooManyWorkers { found: usize, limit: usize },
    #[error("quota {found} exceeds the search limit of {limit}")]
    QuotaTooLarge { found: usize, limit: usize },
    #[error("{found} tie-breakings exceed the limit of {limit}")]
    TooManyTieBreakings { found: u128, limit: u128 },
}
