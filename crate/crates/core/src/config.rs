use serde::{Deserialize, Serialize};

/// Tunable bounds for an analysis run. Every report records the values used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Rewriting truncation degree; `None` means `2·(generators) + 2`.
    pub truncation: Option<usize>,
    /// Degree up to which regularity of `f` is certified by Hilbert data.
    pub regularity_degree: usize,
    /// Gaussian-integer height bound for zero-divisor and idempotent searches.
    pub search_height: i64,
    /// Random draws for the Frobenius search after the basis functionals.
    pub frobenius_attempts: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            truncation: None,
            regularity_degree: 6,
            search_height: 3,
            frobenius_attempts: 20,
            seed: 0x5eed,
        }
    }
}

impl Config {
    pub fn truncation_for(&self, generators: usize) -> usize {
        self.truncation.unwrap_or(2 * generators + 2).max(3)
    }
}
