//! The fixed gate set used throughout the crate (H, X, Z, CNOT, C-Z, Toffoli)
//! as explicit unitary matrices, plus the Hadamard layer and the
//! conditional phase shift that appear in the diffusion decomposition.
//!
//! Matrices are row-major over the basis `00…0` to `11…1`, with the first
//! target qubit as the most significant bit.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{GroverError, Result};
use crate::statevector::StateVector;

/// Largest register for which dense `2^n × 2^n` matrices are built.
pub const MAX_EXPLICIT_QUBITS: usize = 6;

/// Tolerance for `U·U† = I`.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense unitary acting on `arity` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    arity: usize,
    entries: Vec<Complex64>,
}

impl GateMatrix {
    /// Builds a gate from row-major entries, rejecting anything that is not
    /// unitary to within [`UNITARITY_TOLERANCE`].
    pub fn new(arity: usize, entries: Vec<Complex64>) -> Result<Self> {
        let gate = Self::from_entries(arity, entries)?;
        let deviation = gate.unitarity_deviation();
        if deviation > UNITARITY_TOLERANCE {
            return Err(GroverError::NonUnitaryGate { deviation });
        }
        Ok(gate)
    }

    /// Builds a matrix without the unitarity check. Useful for operators
    /// under test; [`StateVector::apply_gate`] still refuses non-unitary input.
    pub fn from_entries(arity: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_arity(arity)?;
        let dim = 1usize << arity;
        if entries.len() != dim * dim {
            return Err(GroverError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { arity, entries })
    }

    fn from_real(arity: usize, entries: &[f64]) -> Self {
        debug_assert_eq!(entries.len(), 1 << (2 * arity));
        Self {
            arity,
            entries: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn identity(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let dim = 1usize << arity;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Ok(Self { arity, entries })
    }

    /// Real diagonal matrix; every diagonal entry must have unit modulus.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if !values.len().is_power_of_two() || values.len() < 2 {
            return Err(GroverError::InvalidSize(format!(
                "diagonal of length {} is not 2^n with n ≥ 1",
                values.len()
            )));
        }
        let arity = values.len().trailing_zeros() as usize;
        let mut gate = Self::identity(arity)?;
        let dim = values.len();
        for (i, &v) in values.iter().enumerate() {
            gate.entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        let deviation = gate.unitarity_deviation();
        if deviation > UNITARITY_TOLERANCE {
            return Err(GroverError::NonUnitaryGate { deviation });
        }
        Ok(gate)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &GateMatrix) -> Result<GateMatrix> {
        if self.arity != rhs.arity {
            return Err(GroverError::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.entries[i * dim + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..dim {
                    entries[i * dim + j] += a * rhs.entries[k * dim + j];
                }
            }
        }
        Ok(GateMatrix {
            arity: self.arity,
            entries,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> GateMatrix {
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[j * dim + i] = self.entries[i * dim + j].conj();
            }
        }
        GateMatrix {
            arity: self.arity,
            entries,
        }
    }

    /// Kronecker product `self ⊗ rhs`; `self` acts on the more significant qubits.
    pub fn kron(&self, rhs: &GateMatrix) -> Result<GateMatrix> {
        let arity = self.arity + rhs.arity;
        check_arity(arity)?;
        let (da, db) = (self.dim(), rhs.dim());
        let dim = da * db;
        let mut entries = vec![ZERO; dim * dim];
        for ia in 0..da {
            for ja in 0..da {
                let a = self.entries[ia * da + ja];
                for ib in 0..db {
                    for jb in 0..db {
                        entries[(ia * db + ib) * dim + ja * db + jb] = a * rhs.entries[ib * db + jb];
                    }
                }
            }
        }
        Ok(GateMatrix { arity, entries })
    }

    /// Largest elementwise modulus of `self − other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &GateMatrix) -> f64 {
        if self.arity != other.arity {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(U·U†) − I|` over all entries.
    pub fn unitarity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = ZERO;
                for k in 0..dim {
                    acc += self.entries[i * dim + k] * self.entries[j * dim + k].conj();
                }
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_deviation() <= UNITARITY_TOLERANCE
    }

    /// Dense matrix-vector product on a register of exactly `arity` qubits.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.qubit_count() != self.arity {
            return Err(GroverError::DimensionMismatch {
                expected: self.arity,
                found: state.qubit_count(),
            });
        }
        let dim = self.dim();
        let amps = state.amplitudes();
        let out = (0..dim)
            .map(|i| {
                self.entries[i * dim..(i + 1) * dim]
                    .iter()
                    .zip(amps)
                    .map(|(m, a)| m * a)
                    .sum()
            })
            .collect();
        Ok(StateVector::from_raw(self.arity, out))
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 {
        return Err(GroverError::InvalidQubitCount(0));
    }
    if arity > MAX_EXPLICIT_QUBITS {
        return Err(GroverError::QubitCapExceeded {
            requested: arity,
            cap: MAX_EXPLICIT_QUBITS,
        });
    }
    Ok(())
}

/// Hadamard, `(1/√2)[[1, 1], [1, −1]]`.
pub fn hadamard() -> GateMatrix {
    let h = FRAC_1_SQRT_2;
    GateMatrix::from_real(1, &[h, h, h, -h])
}

/// Pauli X (NOT).
pub fn pauli_x() -> GateMatrix {
    GateMatrix::from_real(1, &[0.0, 1.0, 1.0, 0.0])
}

/// Pauli Z (phase flip on `|1⟩`).
pub fn pauli_z() -> GateMatrix {
    GateMatrix::from_real(1, &[1.0, 0.0, 0.0, -1.0])
}

/// Controlled NOT, control first.
#[rustfmt::skip]
pub fn cnot() -> GateMatrix {
    GateMatrix::from_real(2, &[
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0,
    ])
}

/// Controlled Z.
pub fn cz() -> GateMatrix {
    let mut m = GateMatrix::identity(2).expect("arity 2 is valid");
    m.entries[15] = Complex64::new(-1.0, 0.0);
    m
}

/// Toffoli: identity on the first four basis states, CNOT block on the last four.
pub fn toffoli() -> GateMatrix {
    let mut m = GateMatrix::identity(3).expect("arity 3 is valid");
    let block = cnot();
    for r in 0..4 {
        for c in 0..4 {
            m.entries[(r + 4) * 8 + (c + 4)] = block.get(r, c);
        }
    }
    m
}

/// Dense `H^{⊗n}`.
pub fn hadamard_power(n: usize) -> Result<GateMatrix> {
    check_arity(n)?;
    let h = hadamard();
    (1..n).try_fold(h.clone(), |acc, _| acc.kron(&h))
}

/// `diag(1, −1, …, −1) = 2|0⟩⟨0| − I` on `n` qubits.
pub fn conditional_phase_zero(n: usize) -> Result<GateMatrix> {
    check_arity(n)?;
    let mut diag = vec![-1.0; 1 << n];
    diag[0] = 1.0;
    GateMatrix::diagonal(&diag)
}

/// Named members of the gate library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H,
    X,
    Z,
    Cnot,
    Cz,
    Toffoli,
}

impl Gate {
    pub const ALL: [Gate; 6] = [Gate::H, Gate::X, Gate::Z, Gate::Cnot, Gate::Cz, Gate::Toffoli];

    pub fn matrix(self) -> GateMatrix {
        match self {
            Gate::H => hadamard(),
            Gate::X => pauli_x(),
            Gate::Z => pauli_z(),
            Gate::Cnot => cnot(),
            Gate::Cz => cz(),
            Gate::Toffoli => toffoli(),
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Gate::H | Gate::X | Gate::Z => 1,
            Gate::Cnot | Gate::Cz => 2,
            Gate::Toffoli => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::X => "X",
            Gate::Z => "Z",
            Gate::Cnot => "CNOT",
            Gate::Cz => "C-Z",
            Gate::Toffoli => "Toffoli",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One library gate applied to an ordered list of qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateOp {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

impl GateOp {
    pub fn new(gate: Gate, targets: impl Into<Vec<usize>>) -> Self {
        Self {
            gate,
            targets: targets.into(),
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let targets: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        write!(f, "{} q[{}]", self.gate, targets.join(","))
    }
}

/// One `H` per qubit, qubit 0 first.
pub fn hadamard_layer(n: usize) -> Vec<GateOp> {
    (0..n).map(|q| GateOp::new(Gate::H, [q])).collect()
}
