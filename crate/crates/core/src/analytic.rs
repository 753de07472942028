//! Closed-form predictions: the rotation angle, success-probability curve,
//! and the quantum-vs-classical query comparison. No state vectors here.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::baseline;
use crate::error::{GroverError, Result};

/// Checks `N = 2^n` with `n ≥ 1` and `1 ≤ M ≤ N`.
pub fn validate_instance(size: usize, solutions: usize) -> Result<()> {
    validate_size(size)?;
    if solutions == 0 {
        return Err(GroverError::NoSolutions);
    }
    if solutions > size {
        return Err(GroverError::InvalidSize(format!(
            "M = {solutions} exceeds N = {size}"
        )));
    }
    Ok(())
}

pub(crate) fn validate_size(size: usize) -> Result<()> {
    if size < 2 || !size.is_power_of_two() {
        return Err(GroverError::InvalidSize(format!(
            "N = {size} is not a power of two ≥ 2"
        )));
    }
    Ok(())
}

/// `θ = arcsin √(M/N)`; one Grover iteration rotates by `2θ`.
pub fn theta_of(size: usize, solutions: usize) -> Result<f64> {
    validate_instance(size, solutions)?;
    Ok((solutions as f64 / size as f64).sqrt().asin())
}

/// `round(π/(4θ) − ½)`, ties rounded up.
pub fn optimal_iterations(theta: f64) -> usize {
    let x = PI / (4.0 * theta) - 0.5;
    (x + 0.5).floor().max(0.0) as usize
}

/// `(π/4)·√(N/M)`, the large-N approximation of the iteration count.
pub fn approximate_iterations(size: usize, solutions: usize) -> f64 {
    FRAC_PI_4 * (size as f64 / solutions as f64).sqrt()
}

/// `sin²((2k+1)θ)`.
pub fn success_probability(theta: f64, k: usize) -> f64 {
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Position of `G^k|Ψ⟩` in the plane spanned by the unmarked and marked
/// uniform superpositions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationState {
    pub theta: f64,
    pub k: usize,
    pub alpha_coeff: f64,
    pub beta_coeff: f64,
}

impl RotationState {
    pub fn at(theta: f64, k: usize) -> Self {
        let angle = (2 * k + 1) as f64 * theta;
        Self {
            theta,
            k,
            alpha_coeff: angle.cos(),
            beta_coeff: angle.sin(),
        }
    }

    /// The starting state: `√((N−M)/N)|α⟩ + √(M/N)|β⟩`.
    pub fn initial(size: usize, solutions: usize) -> Result<Self> {
        Ok(Self::at(theta_of(size, solutions)?, 0))
    }

    pub fn success_probability(&self) -> f64 {
        self.beta_coeff * self.beta_coeff
    }
}

/// `(k, sin²((2k+1)θ))` for `k = 0..=k_max`.
pub fn success_curve(size: usize, solutions: usize, k_max: usize) -> Result<Vec<(usize, f64)>> {
    let theta = theta_of(size, solutions)?;
    Ok((0..=k_max)
        .map(|k| (k, success_probability(theta, k)))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalComparison {
    pub size: usize,
    /// Optimal Grover iteration count, one oracle query each.
    pub quantum_queries: usize,
    /// Mean queries of sequential probing with last-item deduction.
    pub classical_expected: f64,
    /// Distinct probes needed to reach success probability ½.
    pub classical_for_half: usize,
}

/// Single-solution query counts, quantum vs classical.
pub fn classical_comparison(size: usize) -> Result<ClassicalComparison> {
    let theta = theta_of(size, 1)?;
    Ok(ClassicalComparison {
        size,
        quantum_queries: optimal_iterations(theta),
        classical_expected: baseline::expected_queries_sequential(size)?,
        classical_for_half: size / 2,
    })
}
