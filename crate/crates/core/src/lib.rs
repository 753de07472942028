//! Classical simulation and analysis of Grover search.
//!
//! The crate is organized bottom-up:
//!
//! - [`statevector`]: dense amplitudes, stride-based gate application, Born sampling
//! - [`gates`]: the H, X, Z, CNOT, C-Z and Toffoli matrices
//! - [`oracle`]: bit-flip and phase query models, phase kickback
//! - [`engine`]: diffusion, the Grover iterate, planning and simulated runs
//! - [`analytic`]: closed-form rotation geometry and success curves
//! - [`circuit4`]: the gate-level four-item circuit
//! - [`baseline`]: classical query baselines
//! - [`cli`] and [`verify`]: the `grover` command-line tool
//!
//! Basis indices are MSB-first: qubit 0 is the leftmost ket symbol, so
//! `|101⟩` is index 5.

pub mod analytic;
pub mod baseline;
pub mod circuit4;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gates;
pub mod oracle;
pub mod statevector;
pub mod verify;

pub use error::{GroverError, Result};
pub use gates::{Gate, GateMatrix, GateOp};
pub use oracle::MarkedSet;
pub use statevector::{BasisIndex, MeasurementOutcome, StateVector};
