use thiserror::Error;

/// Errors raised by the simulator and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroverError {
    #[error("invalid qubit count {0}: at least one qubit is required")]
    InvalidQubitCount(usize),

    #[error("{requested} qubits requested, cap is {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    #[error("gate is not unitary (max deviation {deviation:.3e})")]
    NonUnitaryGate { deviation: f64 },

    #[error("gate of arity {arity} applied to {targets} target(s)")]
    ArityMismatch { arity: usize, targets: usize },

    #[error("target qubit {target} out of range for {qubits} qubit(s)")]
    TargetOutOfRange { target: usize, qubits: usize },

    #[error("target qubit {0} listed more than once")]
    DuplicateTarget(usize),

    #[error("dimension mismatch: {expected} vs {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("search has no solutions (M = 0)")]
    NoSolutions,

    #[error("invalid search size: {0}")]
    InvalidSize(String),

    #[error("report requires exactly one marked item, got {0}")]
    MultipleSolutionsUnsupported(usize),

    #[error("invalid marked string {0:?}: expected one of 00, 01, 10, 11")]
    InvalidMarkedString(String),

    #[error("rotation-plane coefficient has imaginary part {imag:.3e}")]
    ComplexCoefficient { imag: f64 },

    #[error("measurement of qubit {qubit} gave {expected} with probability {probability}, expected certainty")]
    UncertainMeasurement {
        qubit: usize,
        expected: u8,
        probability: f64,
    },
}

pub type Result<T> = std::result::Result<T, GroverError>;
