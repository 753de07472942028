//! Black-box query models: the bit-flip oracle `|x⟩|q⟩ → |x⟩|q ⊕ f(x)⟩`,
//! the phase oracle `|x⟩ → (−1)^{f(x)}|x⟩`, and the kickback identity
//! relating the two when the oracle qubit starts in `(|0⟩ − |1⟩)/√2`.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GroverError, Result};
use crate::gates::{GateMatrix, MAX_EXPLICIT_QUBITS};
use crate::statevector::StateVector;

/// The solution set `f⁻¹(1)` of an `n`-qubit search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSet {
    qubit_count: usize,
    indices: BTreeSet<usize>,
}

impl MarkedSet {
    pub fn new<I>(qubit_count: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if qubit_count == 0 {
            return Err(GroverError::InvalidQubitCount(0));
        }
        let dimension = 1usize
            .checked_shl(qubit_count as u32)
            .ok_or(GroverError::InvalidSize(format!("2^{qubit_count} overflows")))?;
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&index) = indices.iter().find(|&&i| i >= dimension) {
            return Err(GroverError::IndexOutOfRange { index, dimension });
        }
        Ok(Self {
            qubit_count,
            indices,
        })
    }

    pub fn single(qubit_count: usize, index: usize) -> Result<Self> {
        Self::new(qubit_count, [index])
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// Search-space size `N = 2^n`.
    pub fn space_size(&self) -> usize {
        1 << self.qubit_count
    }

    /// Number of solutions `M`.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleForm {
    /// Acts on `n + 1` qubits, flipping the trailing oracle qubit.
    BitFlip,
    /// Acts on `n` qubits, negating marked amplitudes.
    Phase,
}

impl OracleForm {
    pub fn register_qubits(self, n: usize) -> usize {
        match self {
            OracleForm::BitFlip => n + 1,
            OracleForm::Phase => n,
        }
    }
}

/// `(|0⟩ − |1⟩)/√2`, the oracle-qubit preparation that turns a bit flip into a sign.
pub fn minus_state() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).expect("normalized")
}

/// Bit-flip query on `n + 1` qubits; the oracle qubit is last (least significant).
pub fn bit_oracle_apply(state: &StateVector, marked: &MarkedSet) -> Result<StateVector> {
    let expected = OracleForm::BitFlip.register_qubits(marked.qubit_count());
    if state.qubit_count() != expected {
        return Err(GroverError::DimensionMismatch {
            expected,
            found: state.qubit_count(),
        });
    }
    let mut out = state.clone();
    let amps = out.amplitudes_mut();
    for x in marked.indices() {
        amps.swap(x << 1, (x << 1) | 1);
    }
    Ok(out)
}

/// Phase query: `a_x → (−1)^{f(x)} a_x`.
pub fn phase_oracle_apply(state: &StateVector, marked: &MarkedSet) -> Result<StateVector> {
    let mut out = state.clone();
    negate_marked(&mut out, marked)?;
    Ok(out)
}

fn negate_marked(state: &mut StateVector, marked: &MarkedSet) -> Result<()> {
    if state.qubit_count() != marked.qubit_count() {
        return Err(GroverError::DimensionMismatch {
            expected: marked.qubit_count(),
            found: state.qubit_count(),
        });
    }
    let amps = state.amplitudes_mut();
    for x in marked.indices() {
        amps[x] = -amps[x];
    }
    Ok(())
}

/// Dense `I − 2 Σ_ω |ω⟩⟨ω|`.
pub fn oracle_matrix(marked: &MarkedSet) -> Result<GateMatrix> {
    if marked.qubit_count() > MAX_EXPLICIT_QUBITS {
        return Err(GroverError::QubitCapExceeded {
            requested: marked.qubit_count(),
            cap: MAX_EXPLICIT_QUBITS,
        });
    }
    let diag: Vec<f64> = (0..marked.space_size())
        .map(|x| if marked.contains(x) { -1.0 } else { 1.0 })
        .collect();
    GateMatrix::diagonal(&diag)
}

/// A phase oracle that counts how many times it has been queried.
#[derive(Clone, Debug)]
pub struct PhaseOracle {
    marked: MarkedSet,
    queries: usize,
}

impl PhaseOracle {
    pub fn new(marked: MarkedSet) -> Self {
        Self { marked, queries: 0 }
    }

    pub fn marked(&self) -> &MarkedSet {
        &self.marked
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn apply(&mut self, state: &StateVector) -> Result<StateVector> {
        let mut out = state.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub(crate) fn apply_in_place(&mut self, state: &mut StateVector) -> Result<()> {
        negate_marked(state, &self.marked)?;
        self.queries += 1;
        Ok(())
    }
}

/// Tolerance of the kickback comparison.
pub const KICKBACK_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KickbackReport {
    pub equivalent: bool,
    pub max_deviation: f64,
    pub trials: usize,
}

/// Compares `bit_oracle(|φ⟩ ⊗ |−⟩)` against `phase_oracle(|φ⟩) ⊗ |−⟩` on
/// `trials` random states drawn from `seed`.
pub fn kickback_equivalence_check(marked: &MarkedSet, trials: usize, seed: u64) -> Result<KickbackReport> {
    if marked.qubit_count() > MAX_EXPLICIT_QUBITS {
        return Err(GroverError::QubitCapExceeded {
            requested: marked.qubit_count(),
            cap: MAX_EXPLICIT_QUBITS,
        });
    }
    let ancilla = minus_state();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation: f64 = 0.0;
    for _ in 0..trials {
        let phi = StateVector::random(marked.qubit_count(), &mut rng)?;
        let via_bit = bit_oracle_apply(&phi.tensor(&ancilla)?, marked)?;
        let via_phase = phase_oracle_apply(&phi, marked)?.tensor(&ancilla)?;
        max_deviation = max_deviation.max(via_bit.max_abs_diff(&via_phase));
    }
    Ok(KickbackReport {
        equivalent: max_deviation < KICKBACK_TOLERANCE,
        max_deviation,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn marked_set_validation() {
        assert!(MarkedSet::new(2, [3]).is_ok());
        assert_eq!(
            MarkedSet::new(2, [4]),
            Err(GroverError::IndexOutOfRange { index: 4, dimension: 4 })
        );
        let m = MarkedSet::new(3, [5, 2, 5]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.indices().collect::<Vec<_>>(), vec![2, 5]);
    }

    #[test]
    fn bit_oracle_flips_oracle_qubit_of_marked_only() {
        let marked = MarkedSet::single(2, 3).unwrap();
        // |11⟩|0⟩ = index 6 → |11⟩|1⟩ = index 7
        let out = bit_oracle_apply(&StateVector::basis(3, 6).unwrap(), &marked).unwrap();
        assert_eq!(out, StateVector::basis(3, 7).unwrap());
        for x in 0..3usize {
            for q in 0..2usize {
                let s = StateVector::basis(3, (x << 1) | q).unwrap();
                assert_eq!(bit_oracle_apply(&s, &marked).unwrap(), s);
            }
        }
    }

    #[test]
    fn bit_oracle_on_minus_ancilla_negates() {
        let marked = MarkedSet::single(2, 3).unwrap();
        let input = StateVector::basis(2, 3).unwrap().tensor(&minus_state()).unwrap();
        let out = bit_oracle_apply(&input, &marked).unwrap();
        let expected = StateVector::from_raw(3, input.amplitudes().iter().map(|a| -a).collect());
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn bit_oracle_dimension_check() {
        let marked = MarkedSet::single(2, 3).unwrap();
        assert_eq!(
            bit_oracle_apply(&StateVector::uniform(2).unwrap(), &marked),
            Err(GroverError::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn phase_oracle_examples() {
        let marked = MarkedSet::single(2, 3).unwrap();
        let out = phase_oracle_apply(&StateVector::uniform(2).unwrap(), &marked).unwrap();
        assert_eq!(out, StateVector::from_real(&[0.5, 0.5, 0.5, -0.5]).unwrap());

        let empty = MarkedSet::new(2, []).unwrap();
        let u = StateVector::uniform(2).unwrap();
        assert_eq!(phase_oracle_apply(&u, &empty).unwrap(), u);

        let marked = MarkedSet::single(3, 5).unwrap();
        let out = phase_oracle_apply(&StateVector::uniform(3).unwrap(), &marked).unwrap();
        let a = FRAC_1_SQRT_2 / 2.0;
        for (i, amp) in out.amplitudes().iter().enumerate() {
            let want = if i == 5 { -a } else { a };
            assert_eq!(*amp, Complex64::new(want, 0.0));
        }
    }

    #[test]
    fn oracle_matrix_examples() {
        let m = oracle_matrix(&MarkedSet::single(2, 3).unwrap()).unwrap();
        assert_eq!(m, GateMatrix::diagonal(&[1.0, 1.0, 1.0, -1.0]).unwrap());
        let all = oracle_matrix(&MarkedSet::new(1, [0, 1]).unwrap()).unwrap();
        assert_eq!(all, GateMatrix::diagonal(&[-1.0, -1.0]).unwrap());
        assert!(matches!(
            oracle_matrix(&MarkedSet::single(7, 0).unwrap()),
            Err(GroverError::QubitCapExceeded { .. })
        ));
    }

    #[test]
    fn oracle_matrix_matches_direct_application() {
        for n in 1..=4 {
            let marked = MarkedSet::new(n, (0..1usize << n).filter(|x| x % 3 == 1)).unwrap();
            let u = StateVector::uniform(n).unwrap();
            let via_matrix = oracle_matrix(&marked).unwrap().apply(&u).unwrap();
            let direct = phase_oracle_apply(&u, &marked).unwrap();
            assert!(via_matrix.max_abs_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn kickback_examples() {
        for (n, marked) in [(2, vec![3]), (3, vec![5]), (2, vec![])] {
            let marked = MarkedSet::new(n, marked).unwrap();
            let report = kickback_equivalence_check(&marked, 100, 17).unwrap();
            assert!(report.equivalent, "{report:?}");
            assert!(report.max_deviation < 1e-12);
            assert_eq!(report.trials, 100);
        }
    }

    #[test]
    fn counting_oracle_counts() {
        let mut oracle = PhaseOracle::new(MarkedSet::single(2, 1).unwrap());
        let u = StateVector::uniform(2).unwrap();
        let once = oracle.apply(&u).unwrap();
        let twice = oracle.apply(&once).unwrap();
        assert_eq!(oracle.queries(), 2);
        assert_eq!(twice, u);
    }
}
