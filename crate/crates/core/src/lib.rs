//! Statevector simulation and teacher-student evaluation of variational
//! quantum perceptron architectures.
//!
//! The crate is organised bottom-up:
//!
//! * [`qsim`] — dense statevector engine (qubit 0 is the most significant bit).
//! * [`circuits`] — slot-based circuit IR and builders for every architecture.
//! * [`training`] — squared-error loss, parameter-shift gradients, optimizers.
//! * [`metrics`] — prediction maps, relative entropy and accuracy.
//! * [`teacher_student`] — dataset generation from random teachers and the
//!   multi-seed student comparison protocol.
//! * [`analysis`] — encoding study (probability vectors + PCA), labelling and
//!   input-normalization experiments.

pub mod analysis;
pub mod circuits;
mod error;
pub mod metrics;
pub mod qsim;
mod seeding;
pub mod teacher_student;
pub mod training;

pub use circuits::{Architecture, ArchitectureKind, CircuitSpec, Encoding};
pub use error::{Error, Result};
pub use metrics::PredictionMap;
pub use qsim::{GateKind, GateOp, QuantumState};
pub use teacher_student::{ExperimentResult, LabeledGrid};
pub use training::{LabelKind, Optimizer, TrainConfig, TrainRun};

/// A two-dimensional input point `(x1, x2)`.
pub type Point = [f64; 2];
