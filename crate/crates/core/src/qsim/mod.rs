//! Exact dense statevector simulation.
//!
//! Basis index convention: qubit 0 is the most significant bit, so on three
//! qubits `|q0 q1 q2>` = `|110>` is amplitude index 6.

mod gate;
mod oracle;
mod state;

pub use gate::{GateKind, GateOp};
pub use oracle::{dense_unitary, dense_unitary_oracle, DenseMatrix, ORACLE_MAX_QUBITS};
pub use state::{apply_gate, new_state, QuantumState, MAX_QUBITS};

pub use num_complex::Complex64;
