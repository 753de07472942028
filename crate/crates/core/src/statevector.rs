//! Dense state vectors over `n` qubits.
//!
//! Qubit 0 is the leftmost ket symbol and the most significant bit of a
//! basis index, so `|101⟩` is index 5. Every module shares this ordering.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{GroverError, Result};
use crate::gates::{GateMatrix, GateOp, UNITARITY_TOLERANCE};

/// Default largest register (2^24 amplitudes, 256 MiB).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Allowed deviation of `Σ|a_i|²` from 1.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Default elementwise tolerance when comparing states.
pub const STATE_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A computational basis label, `0 ≤ value < 2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(usize);

impl BasisIndex {
    pub fn new(value: usize, qubit_count: usize) -> Result<Self> {
        let dimension = dimension_of(qubit_count);
        if value >= dimension {
            return Err(GroverError::IndexOutOfRange {
                index: value,
                dimension,
            });
        }
        Ok(Self(value))
    }

    pub fn value(self) -> usize {
        self.0
    }

    /// Value of `qubit` (0 = most significant) in an `n`-qubit register.
    pub fn bit(self, qubit: usize, qubit_count: usize) -> u8 {
        ((self.0 >> (qubit_count - 1 - qubit)) & 1) as u8
    }

    /// Ket label such as `101`.
    pub fn to_bitstring(self, qubit_count: usize) -> String {
        format!("{:0width$b}", self.0, width = qubit_count)
    }
}

impl From<BasisIndex> for usize {
    fn from(b: BasisIndex) -> usize {
        b.0
    }
}

/// One sampled measurement of every qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub basis: BasisIndex,
    /// `|a_basis|²` of the state that was sampled.
    pub probability: f64,
}

fn dimension_of(qubit_count: usize) -> usize {
    1usize.checked_shl(qubit_count as u32).unwrap_or(usize::MAX)
}

/// `2^{-n/2}`, correctly rounded (a power of two, times `1/√2` for odd `n`).
fn inverse_sqrt_pow2(n: usize) -> f64 {
    let half = 0.5f64.powi((n / 2) as i32);
    if n % 2 == 1 {
        half * FRAC_1_SQRT_2
    } else {
        half
    }
}

fn check_qubits(n: usize, cap: usize) -> Result<()> {
    if n < 1 {
        return Err(GroverError::InvalidQubitCount(n));
    }
    if n > cap {
        return Err(GroverError::QubitCapExceeded { requested: n, cap });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n, DEFAULT_MAX_QUBITS)?;
        let index = BasisIndex::new(index, n)?;
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index.value()] = Complex64::new(1.0, 0.0);
        Ok(Self {
            qubit_count: n,
            amplitudes,
        })
    }

    /// Equal superposition `2^{-n/2} Σ|x⟩` under the default qubit cap.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_with_cap(n, DEFAULT_MAX_QUBITS)
    }

    pub fn uniform_with_cap(n: usize, cap: usize) -> Result<Self> {
        check_qubits(n, cap)?;
        let dim = 1usize << n;
        let a = Complex64::new(inverse_sqrt_pow2(n), 0.0);
        Ok(Self {
            qubit_count: n,
            amplitudes: vec![a; dim],
        })
    }

    /// Wraps amplitudes after checking the length is `2^n` and the norm is 1.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(GroverError::InvalidSize(format!(
                "{len} amplitudes is not 2^n with n ≥ 1"
            )));
        }
        let state = Self {
            qubit_count: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(GroverError::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Haar-distributed random state (normalized complex Gaussian vector).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n, DEFAULT_MAX_QUBITS)?;
        let mut amplitudes: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            qubit_count: n,
            amplitudes,
        })
    }

    pub(crate) fn from_raw(qubit_count: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << qubit_count);
        Self {
            qubit_count,
            amplitudes,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Result<Complex64> {
        self.amplitudes
            .get(index)
            .copied()
            .ok_or(GroverError::IndexOutOfRange {
                index,
                dimension: self.dim(),
            })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `gate` to `targets` (first target = most significant local bit).
    pub fn apply_gate(&self, gate: &GateMatrix, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_gate_in_place(gate, targets)?;
        Ok(out)
    }

    pub fn apply_op(&self, op: &GateOp) -> Result<Self> {
        self.apply_gate(&op.gate.matrix(), &op.targets)
    }

    pub fn apply_ops(&self, ops: &[GateOp]) -> Result<Self> {
        let mut out = self.clone();
        for op in ops {
            out.apply_gate_in_place(&op.gate.matrix(), &op.targets)?;
        }
        Ok(out)
    }

    pub(crate) fn apply_gate_in_place(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        let n = self.qubit_count;
        let k = gate.arity();
        if targets.len() != k {
            return Err(GroverError::ArityMismatch {
                arity: k,
                targets: targets.len(),
            });
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= n {
                return Err(GroverError::TargetOutOfRange {
                    target: t,
                    qubits: n,
                });
            }
            if targets[..i].contains(&t) {
                return Err(GroverError::DuplicateTarget(t));
            }
        }
        let deviation = gate.unitarity_deviation();
        if deviation > UNITARITY_TOLERANCE {
            return Err(GroverError::NonUnitaryGate { deviation });
        }

        let bit_positions: Vec<usize> = targets.iter().map(|&t| n - 1 - t).collect();
        let local_dim = 1usize << k;
        // offsets[l]: global bits set by local index l; local bit (k-1-j) is targets[j]
        let offsets: Vec<usize> = (0..local_dim)
            .map(|l| {
                (0..k)
                    .filter(|&j| (l >> (k - 1 - j)) & 1 == 1)
                    .map(|j| 1usize << bit_positions[j])
                    .sum()
            })
            .collect();
        let mut sorted_positions = bit_positions.clone();
        sorted_positions.sort_unstable();

        let entries = gate.entries();
        let mut local = vec![ZERO; local_dim];
        for compact in 0..(self.dim() >> k) {
            let base = sorted_positions.iter().fold(compact, |acc, &p| {
                let low = acc & ((1usize << p) - 1);
                ((acc >> p) << (p + 1)) | low
            });
            for (slot, &off) in local.iter_mut().zip(&offsets) {
                *slot = self.amplitudes[base | off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                let coeffs = &entries[row * local_dim..(row + 1) * local_dim];
                self.amplitudes[base | off] = coeffs.iter().zip(&local).map(|(m, a)| m * a).sum();
            }
        }
        Ok(())
    }

    /// `⟨self|other⟩ = Σ conj(a_i)·b_i`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Total Born probability of a set of basis indices (duplicates counted once).
    pub fn probability_of<I>(&self, indices: I) -> Result<f64>
    where
        I: IntoIterator<Item = usize>,
    {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        let mut total = 0.0;
        for index in set {
            total += self.amplitude(index)?.norm_sqr();
        }
        Ok(total)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `[P(qubit = 0), P(qubit = 1)]`.
    pub fn qubit_marginal(&self, qubit: usize) -> Result<[f64; 2]> {
        if qubit >= self.qubit_count {
            return Err(GroverError::TargetOutOfRange {
                target: qubit,
                qubits: self.qubit_count,
            });
        }
        let mask = 1usize << (self.qubit_count - 1 - qubit);
        let mut marginal = [0.0; 2];
        for (i, a) in self.amplitudes.iter().enumerate() {
            marginal[usize::from(i & mask != 0)] += a.norm_sqr();
        }
        Ok(marginal)
    }

    /// Draws one outcome from the Born distribution; deterministic in `seed`.
    pub fn sample_measurement(&self, seed: u64) -> Result<MeasurementOutcome> {
        Ok(self.sample_measurements(1, seed)?[0])
    }

    /// Draws `shots` independent outcomes from one seeded stream.
    pub fn sample_measurements(&self, shots: usize, seed: u64) -> Result<Vec<MeasurementOutcome>> {
        let probabilities = self.probabilities();
        let dist = WeightedIndex::new(&probabilities).map_err(|_| GroverError::NotNormalized {
            norm_sqr: self.norm_sqr(),
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..shots)
            .map(|_| {
                let i = dist.sample(&mut rng);
                MeasurementOutcome {
                    basis: BasisIndex(i),
                    probability: probabilities[i],
                }
            })
            .collect())
    }

    /// `self ⊗ other`; `self` occupies the leading (more significant) qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let qubit_count = self.qubit_count + other.qubit_count;
        check_qubits(qubit_count, DEFAULT_MAX_QUBITS)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Self {
            qubit_count,
            amplitudes,
        })
    }

    /// Measures `qubit`, keeps the branch `outcome`, and removes the qubit.
    /// Returns the renormalized remainder and the probability of that branch.
    pub fn project_out(&self, qubit: usize, outcome: u8) -> Result<(StateVector, f64)> {
        let n = self.qubit_count;
        if qubit >= n {
            return Err(GroverError::TargetOutOfRange { target: qubit, qubits: n });
        }
        if n == 1 {
            return Err(GroverError::InvalidQubitCount(0));
        }
        let pos = n - 1 - qubit;
        let low_mask = (1usize << pos) - 1;
        let mut rest: Vec<Complex64> = (0..1usize << (n - 1))
            .map(|c| {
                let full = ((c >> pos) << (pos + 1)) | (usize::from(outcome & 1) << pos) | (c & low_mask);
                self.amplitudes[full]
            })
            .collect();
        let probability: f64 = rest.iter().map(|a| a.norm_sqr()).sum();
        if probability > 0.0 {
            let scale = probability.sqrt();
            for a in &mut rest {
                *a /= scale;
            }
        }
        Ok((Self::from_raw(n - 1, rest), probability))
    }

    /// Largest elementwise modulus of `self − other`; infinite on size mismatch.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.qubit_count != other.qubit_count {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &StateVector, tolerance: f64) -> bool {
        self.max_abs_diff(other) < tolerance
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.qubit_count != other.qubit_count {
            return Err(GroverError::DimensionMismatch {
                expected: self.qubit_count,
                found: other.qubit_count,
            });
        }
        Ok(())
    }
}

impl fmt::Display for StateVector {
    /// Nonzero terms as `(re+imi)|bits⟩`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let label = BasisIndex(i).to_bitstring(self.qubit_count);
            if a.im.abs() < 1e-12 {
                write!(f, "{:.6}|{label}⟩", a.re)?;
            } else {
                write!(f, "({:.6}{:+.6}i)|{label}⟩", a.re, a.im)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
