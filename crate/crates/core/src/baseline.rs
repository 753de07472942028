//! Classical query baselines for unstructured search over `N` items with a
//! single uniformly placed solution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::validate_size;
use crate::error::{GroverError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Probe distinct items in a fixed order; after `N − 1` misses the last
    /// item is the answer without a query.
    SequentialDeduce,
    /// Probe distinct items in random order until the solution is hit.
    RandomDistinct,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaselineResult {
    pub size: usize,
    pub strategy: Strategy,
    pub expected_queries: f64,
    /// `success_table[q]` is the probability of having found the item after `q` queries.
    pub success_table: Vec<f64>,
}

impl BaselineResult {
    pub fn success_prob_at(&self, queries: usize) -> f64 {
        self.success_table
            .get(queries)
            .copied()
            .unwrap_or(1.0)
    }
}

/// `(N − 1)(N + 2) / (2N)`.
pub fn expected_queries_sequential(size: usize) -> Result<f64> {
    validate_size(size)?;
    let n = size as f64;
    Ok((n - 1.0) * (n + 2.0) / (2.0 * n))
}

/// `q / N` for `q` distinct probes.
pub fn success_probability_after(size: usize, queries: usize) -> Result<f64> {
    validate_size(size)?;
    if queries > size {
        return Err(GroverError::InvalidSize(format!(
            "{queries} distinct queries exceed N = {size}"
        )));
    }
    Ok(queries as f64 / size as f64)
}

pub fn baseline(size: usize, strategy: Strategy) -> Result<BaselineResult> {
    validate_size(size)?;
    let (expected_queries, success_table) = match strategy {
        Strategy::SequentialDeduce => {
            let mut table: Vec<f64> = (0..size)
                .map(|q| success_probability_after(size, q))
                .collect::<Result<_>>()?;
            // the (N−1)th miss identifies the last item
            table[size - 1] = 1.0;
            (expected_queries_sequential(size)?, table)
        }
        Strategy::RandomDistinct => {
            let table = (0..=size)
                .map(|q| success_probability_after(size, q))
                .collect::<Result<_>>()?;
            ((size as f64 + 1.0) / 2.0, table)
        }
    };
    Ok(BaselineResult {
        size,
        strategy,
        expected_queries,
        success_table,
    })
}

/// Seeded empirical mean query count of [`Strategy::SequentialDeduce`].
pub fn monte_carlo_queries(size: usize, trials: usize, seed: u64) -> Result<f64> {
    Ok(monte_carlo_stats(size, trials, seed)?.mean)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloStats {
    pub trials: usize,
    pub mean: f64,
    pub std_dev: f64,
}

pub fn monte_carlo_stats(size: usize, trials: usize, seed: u64) -> Result<MonteCarloStats> {
    validate_size(size)?;
    if trials == 0 {
        return Err(GroverError::InvalidSize("trials must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        // probes go 0, 1, 2, …; the solution sits at a uniform position
        let target = rng.gen_range(0..size);
        let queries = (target + 1).min(size - 1) as f64;
        sum += queries;
        sum_sq += queries * queries;
    }
    let mean = sum / trials as f64;
    let variance = (sum_sq / trials as f64 - mean * mean).max(0.0);
    Ok(MonteCarloStats {
        trials,
        mean,
        std_dev: variance.sqrt(),
    })
}
