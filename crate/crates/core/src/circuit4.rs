//! Gate-level model of the two-qubit (four-item) Grover circuit.
//!
//! Wires: qubit 0 is `x₁` (top wire, output bit `a`), qubit 1 is `x₂`
//! (output bit `b`), and in the Toffoli form qubit 2 is the oracle qubit.
//! After the oracle the data register goes through `Z` and `H` on qubit 0,
//! a CNOT, another `H` on qubit 0, measurement, and a classical NOT on `a`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GroverError, Result};
use crate::gates::{Gate, GateOp};
use crate::oracle::minus_state;
use crate::statevector::StateVector;

/// Tolerance for "this outcome is certain".
pub const CERTAINTY_TOLERANCE: f64 = 1e-12;

/// The marked item `x₁x₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoBitString {
    pub x1: u8,
    pub x2: u8,
}

impl TwoBitString {
    pub const ALL: [TwoBitString; 4] = [
        TwoBitString { x1: 0, x2: 0 },
        TwoBitString { x1: 0, x2: 1 },
        TwoBitString { x1: 1, x2: 0 },
        TwoBitString { x1: 1, x2: 1 },
    ];

    pub fn from_index(index: usize) -> Result<Self> {
        if index > 3 {
            return Err(GroverError::InvalidMarkedString(index.to_string()));
        }
        Ok(Self {
            x1: (index >> 1) as u8,
            x2: (index & 1) as u8,
        })
    }

    /// Basis index under the MSB-first convention (`10` → 2).
    pub fn index(self) -> usize {
        usize::from(self.x1) << 1 | usize::from(self.x2)
    }
}

impl FromStr for TwoBitString {
    type Err = GroverError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s.strip_prefix('b').unwrap_or(s);
        match bits {
            "00" | "01" | "10" | "11" => {
                let b = bits.as_bytes();
                Ok(Self {
                    x1: b[0] - b'0',
                    x2: b[1] - b'0',
                })
            }
            _ => Err(GroverError::InvalidMarkedString(s.to_string())),
        }
    }
}

impl fmt::Display for TwoBitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.x1, self.x2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleStyle {
    /// Toffoli onto an oracle qubit prepared in `(|0⟩ − |1⟩)/√2`.
    Toffoli,
    /// C-Z on the data qubits, no oracle qubit.
    SimplifiedCz,
}

impl FromStr for OracleStyle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "toffoli" => Ok(OracleStyle::Toffoli),
            "cz" | "c-z" | "simplified" | "simplified-cz" => Ok(OracleStyle::SimplifiedCz),
            other => Err(format!("unknown oracle style {other:?} (toffoli | simplified)")),
        }
    }
}

impl fmt::Display for OracleStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleStyle::Toffoli => "toffoli",
            OracleStyle::SimplifiedCz => "simplified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitStep {
    Gate(GateOp),
    /// Measure `qubit`, require `expected` with certainty, and drop the qubit.
    MeasureDiscard { qubit: usize, expected: u8 },
}

impl fmt::Display for CircuitStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitStep::Gate(op) => write!(f, "{op}"),
            CircuitStep::MeasureDiscard { qubit, expected } => {
                write!(f, "measure q[{qubit}] (expect {expected}), discard")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub label: String,
    /// Marks the single oracle block.
    pub is_oracle: bool,
    pub steps: Vec<CircuitStep>,
}

impl Stage {
    fn new(label: &str, is_oracle: bool, steps: Vec<CircuitStep>) -> Self {
        Self {
            label: label.to_string(),
            is_oracle,
            steps,
        }
    }
}

/// An ordered gate list with initial basis state and output post-processing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSpec {
    pub marked: TwoBitString,
    pub style: OracleStyle,
    pub qubit_count: usize,
    pub initial_basis: usize,
    pub stages: Vec<Stage>,
    /// Classical NOT per output bit `[a, b]`.
    pub classical_not: [bool; 2],
}

impl CircuitSpec {
    pub fn oracle_calls(&self) -> usize {
        self.stages.iter().filter(|s| s.is_oracle).count()
    }

    pub fn gate_ops(&self) -> impl Iterator<Item = &GateOp> {
        self.stages.iter().flat_map(|s| &s.steps).filter_map(|step| match step {
            CircuitStep::Gate(op) => Some(op),
            CircuitStep::MeasureDiscard { .. } => None,
        })
    }
}

impl fmt::Display for CircuitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# circuit4 marked={} oracle={} qubits={} init=|{:0w$b}⟩",
            self.marked,
            self.style,
            self.qubit_count,
            self.initial_basis,
            w = self.qubit_count
        )?;
        for stage in &self.stages {
            let tag = if stage.is_oracle { " [oracle]" } else { "" };
            writeln!(f, "stage {}{tag}", stage.label)?;
            for step in &stage.steps {
                writeln!(f, "  {step}")?;
            }
        }
        let nots: Vec<&str> = ["a", "b"]
            .iter()
            .zip(self.classical_not)
            .filter_map(|(bit, flip)| flip.then_some(*bit))
            .collect();
        write!(f, "classical NOT: {}", if nots.is_empty() { "-".to_string() } else { nots.join(",") })
    }
}

fn x_conjugation(marked: TwoBitString) -> Vec<CircuitStep> {
    [(0usize, marked.x1), (1, marked.x2)]
        .into_iter()
        .filter(|&(_, bit)| bit ^ 1 == 1)
        .map(|(q, _)| CircuitStep::Gate(GateOp::new(Gate::X, [q])))
        .collect()
}

fn gate(g: Gate, targets: &[usize]) -> CircuitStep {
    CircuitStep::Gate(GateOp::new(g, targets))
}

/// The oracle block alone: `X^{x₁⊕1} ⊗ X^{x₂⊕1}`, then C-Z or Toffoli, then the X's again.
pub fn oracle_block(marked: TwoBitString, style: OracleStyle) -> Vec<CircuitStep> {
    let flips = x_conjugation(marked);
    let core = match style {
        OracleStyle::Toffoli => gate(Gate::Toffoli, &[0, 1, 2]),
        OracleStyle::SimplifiedCz => gate(Gate::Cz, &[0, 1]),
    };
    let mut steps = flips.clone();
    steps.push(core);
    steps.extend(flips);
    steps
}

pub fn build_circuit(marked: TwoBitString, style: OracleStyle) -> CircuitSpec {
    let mut stages = Vec::new();
    let (qubit_count, initial_basis) = match style {
        // oracle qubit starts in |1⟩, the H below takes it to (|0⟩ − |1⟩)/√2
        OracleStyle::Toffoli => (3, 0b001),
        OracleStyle::SimplifiedCz => (2, 0b00),
    };
    let prep = (0..qubit_count).map(|q| gate(Gate::H, &[q])).collect();
    stages.push(Stage::new("hadamard", false, prep));
    stages.push(Stage::new("oracle", true, oracle_block(marked, style)));
    if style == OracleStyle::Toffoli {
        stages.push(Stage::new(
            "discard-oracle-qubit",
            false,
            vec![
                gate(Gate::H, &[2]),
                CircuitStep::MeasureDiscard {
                    qubit: 2,
                    expected: 1,
                },
            ],
        ));
    }
    stages.push(Stage::new("z-x1", false, vec![gate(Gate::Z, &[0])]));
    stages.push(Stage::new("h-x1", false, vec![gate(Gate::H, &[0])]));
    stages.push(Stage::new("cnot", false, vec![gate(Gate::Cnot, &[0, 1])]));
    stages.push(Stage::new("h-x1-again", false, vec![gate(Gate::H, &[0])]));
    CircuitSpec {
        marked,
        style,
        qubit_count,
        initial_basis,
        stages,
        classical_not: [true, false],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircuitOutcome {
    pub a: u8,
    pub b: u8,
    /// Measured oracle qubit; `None` when the circuit has no oracle qubit.
    pub oracle_bit: Option<u8>,
}

impl CircuitOutcome {
    pub fn output_string(&self) -> String {
        format!("{}{}", self.a, self.b)
    }

    pub fn output_index(&self) -> usize {
        usize::from(self.a) << 1 | usize::from(self.b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StageSnapshot {
    pub label: String,
    pub state: StateVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitRun {
    pub outcome: CircuitOutcome,
    /// Probability of the reported measurement result before post-processing.
    pub probability: f64,
    /// Distribution over output strings `ab` after the classical NOT, indexed MSB-first.
    pub output_distribution: [f64; 4],
    pub stages: Vec<StageSnapshot>,
    pub oracle_calls: usize,
}

impl CircuitRun {
    pub fn pre_measurement_state(&self) -> &StateVector {
        &self.stages.last().expect("at least one stage").state
    }
}

/// Simulates `spec` and reads out the most likely measurement.
pub fn run_circuit(spec: &CircuitSpec) -> Result<CircuitRun> {
    let mut state = StateVector::basis(spec.qubit_count, spec.initial_basis)?;
    let mut snapshots = vec![StageSnapshot {
        label: "initial".into(),
        state: state.clone(),
    }];
    let mut oracle_bit = None;
    for stage in &spec.stages {
        for step in &stage.steps {
            match step {
                CircuitStep::Gate(op) => state.apply_gate_in_place(&op.gate.matrix(), &op.targets)?,
                CircuitStep::MeasureDiscard { qubit, expected } => {
                    let (rest, probability) = state.project_out(*qubit, *expected)?;
                    if (probability - 1.0).abs() > CERTAINTY_TOLERANCE {
                        return Err(GroverError::UncertainMeasurement {
                            qubit: *qubit,
                            expected: *expected,
                            probability,
                        });
                    }
                    oracle_bit = Some(*expected);
                    state = rest;
                }
            }
        }
        snapshots.push(StageSnapshot {
            label: stage.label.clone(),
            state: state.clone(),
        });
    }

    let probabilities = state.probabilities();
    let mut output_distribution = [0.0; 4];
    for (raw, p) in probabilities.iter().enumerate() {
        output_distribution[post_process(raw, spec.classical_not)] += p;
    }
    let (raw, &probability) = probabilities
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty state");
    let output = post_process(raw, spec.classical_not);
    Ok(CircuitRun {
        outcome: CircuitOutcome {
            a: (output >> 1) as u8,
            b: (output & 1) as u8,
            oracle_bit,
        },
        probability,
        output_distribution,
        stages: snapshots,
        oracle_calls: spec.oracle_calls(),
    })
}

fn post_process(raw: usize, classical_not: [bool; 2]) -> usize {
    let mut out = raw;
    if classical_not[0] {
        out ^= 0b10;
    }
    if classical_not[1] {
        out ^= 0b01;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub max_deviation: f64,
    pub trials: usize,
}

/// Compares the Toffoli oracle on `data ⊗ |−⟩` with the C-Z oracle on `data`
/// followed by `⊗ |−⟩`, over `trials` random data states.
pub fn oracle_equivalence_check(marked: TwoBitString, trials: usize, seed: u64) -> Result<EquivalenceReport> {
    let toffoli = gate_ops(oracle_block(marked, OracleStyle::Toffoli));
    let simplified = gate_ops(oracle_block(marked, OracleStyle::SimplifiedCz));
    let ancilla = minus_state();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation: f64 = 0.0;
    for _ in 0..trials {
        let data = StateVector::random(2, &mut rng)?;
        let lhs = data.tensor(&ancilla)?.apply_ops(&toffoli)?;
        let rhs = data.apply_ops(&simplified)?.tensor(&ancilla)?;
        max_deviation = max_deviation.max(lhs.max_abs_diff(&rhs));
    }
    Ok(EquivalenceReport {
        equivalent: max_deviation < CERTAINTY_TOLERANCE,
        max_deviation,
        trials,
    })
}

fn gate_ops(steps: Vec<CircuitStep>) -> Vec<GateOp> {
    steps
        .into_iter()
        .filter_map(|s| match s {
            CircuitStep::Gate(op) => Some(op),
            CircuitStep::MeasureDiscard { .. } => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::oracle::MarkedSet;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn marked(s: &str) -> TwoBitString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_marked_strings() {
        assert_eq!(marked("10"), TwoBitString { x1: 1, x2: 0 });
        assert_eq!(marked("b01").index(), 1);
        for bad in ["", "2", "011", "ab", "1"] {
            assert!(matches!(
                bad.parse::<TwoBitString>(),
                Err(GroverError::InvalidMarkedString(_))
            ));
        }
    }

    #[test]
    fn x_gates_follow_marked_bits() {
        let count_x = |spec: &CircuitSpec| {
            spec.stages
                .iter()
                .filter(|s| s.is_oracle)
                .flat_map(|s| &s.steps)
                .filter(|s| matches!(s, CircuitStep::Gate(op) if op.gate == Gate::X))
                .count()
        };
        assert_eq!(count_x(&build_circuit(marked("11"), OracleStyle::SimplifiedCz)), 0);
        assert_eq!(count_x(&build_circuit(marked("00"), OracleStyle::SimplifiedCz)), 4);
        assert_eq!(count_x(&build_circuit(marked("01"), OracleStyle::Toffoli)), 2);
    }

    #[test]
    fn every_circuit_has_one_oracle_block() {
        for m in TwoBitString::ALL {
            for style in [OracleStyle::Toffoli, OracleStyle::SimplifiedCz] {
                let spec = build_circuit(m, style);
                assert_eq!(spec.oracle_calls(), 1);
                for op in spec.gate_ops() {
                    assert_eq!(op.targets.len(), op.gate.arity());
                    assert!(op.targets.iter().all(|&t| t < spec.qubit_count));
                }
            }
        }
    }

    #[test]
    fn toffoli_oracle_flips_only_marked_component() {
        let spec = build_circuit(marked("11"), OracleStyle::Toffoli);
        let input = StateVector::uniform(2).unwrap().tensor(&minus_state()).unwrap();
        let out = input.apply_ops(&gate_ops(spec.stages[1].steps.clone())).unwrap();
        for (i, (a, b)) in input.amplitudes().iter().zip(out.amplitudes()).enumerate() {
            let sign = if i >> 1 == 0b11 { -1.0 } else { 1.0 };
            assert!((b - a * sign).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn walkthrough_for_marked_11() {
        let run = run_circuit(&build_circuit(marked("11"), OracleStyle::SimplifiedCz)).unwrap();
        let by_label = |l: &str| &run.stages.iter().find(|s| s.label == l).unwrap().state;
        let after_oracle = StateVector::from_real(&[0.5, 0.5, 0.5, -0.5]).unwrap();
        assert!(by_label("oracle").max_abs_diff(&after_oracle) < 1e-12);
        let bell_like = StateVector::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]).unwrap();
        assert!(by_label("h-x1").max_abs_diff(&bell_like) < 1e-12);
        let after_cnot = StateVector::from_real(&[0.0, FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]).unwrap();
        assert!(by_label("cnot").max_abs_diff(&after_cnot) < 1e-12);
        assert!(run.pre_measurement_state().max_abs_diff(&StateVector::basis(2, 1).unwrap()) < 1e-12);
        assert_eq!(run.outcome.output_string(), "11");
        assert_eq!(run.outcome.oracle_bit, None);
    }

    #[test]
    fn all_marked_strings_are_found_with_certainty() {
        for m in TwoBitString::ALL {
            for style in [OracleStyle::Toffoli, OracleStyle::SimplifiedCz] {
                let run = run_circuit(&build_circuit(m, style)).unwrap();
                assert_eq!(run.outcome.output_string(), m.to_string(), "{style}");
                assert!((run.probability - 1.0).abs() < 1e-12);
                assert_eq!(run.oracle_calls, 1);
                if style == OracleStyle::Toffoli {
                    assert_eq!(run.outcome.oracle_bit, Some(1));
                }
            }
        }
    }

    #[test]
    fn circuit_distribution_matches_engine() {
        for m in TwoBitString::ALL {
            let run = run_circuit(&build_circuit(m, OracleStyle::SimplifiedCz)).unwrap();
            let engine_run = engine::run(&MarkedSet::single(2, m.index()).unwrap(), Some(1)).unwrap();
            let engine_probs = engine_run.final_state.probabilities();
            for (a, b) in run.output_distribution.iter().zip(&engine_probs) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn oracle_equivalence_examples() {
        for m in TwoBitString::ALL {
            let report = oracle_equivalence_check(m, 50, 4).unwrap();
            assert!(report.equivalent, "{m}: {report:?}");
        }
        // |11⟩ with marked 11: both sides negate
        let m = marked("11");
        let data = StateVector::basis(2, 3).unwrap();
        let lhs = data
            .tensor(&minus_state())
            .unwrap()
            .apply_ops(&gate_ops(oracle_block(m, OracleStyle::Toffoli)))
            .unwrap();
        let rhs = data.apply_ops(&gate_ops(oracle_block(m, OracleStyle::SimplifiedCz))).unwrap();
        assert_eq!(rhs.amplitude(3).unwrap(), Complex64::new(-1.0, 0.0));
        assert!((lhs.amplitude(6).unwrap() - Complex64::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn uncertain_discard_is_rejected() {
        let mut spec = build_circuit(marked("11"), OracleStyle::Toffoli);
        // drop the H that returns the oracle qubit to |1⟩
        spec.stages[2].steps.remove(0);
        assert!(matches!(
            run_circuit(&spec),
            Err(GroverError::UncertainMeasurement { qubit: 2, .. })
        ));
    }
}
