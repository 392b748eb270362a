//! Naive full-matrix reference simulator used to cross-check the engine.
//!
//! Every gate is lifted to the whole register through explicit Kronecker
//! products and the circuit unitary is the ordinary matrix product. Gate
//! matrices are rebuilt here from the Pauli algebra (`exp(-i a P / 2) =
//! cos(a/2) I - i sin(a/2) P`) rather than shared with the engine kernels.

use num_complex::Complex64;

use super::gate::{GateKind, GateOp};
use super::state::QuantumState;
use crate::circuits::CircuitSpec;
use crate::error::{Error, Result};
use crate::Point;

/// The oracle refuses registers larger than this.
pub const ORACLE_MAX_QUBITS: usize = 10;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    fn from_2x2(m: [[Complex64; 2]; 2]) -> Self {
        DenseMatrix {
            dim: 2,
            data: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let dim = self.dim * other.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        data[(i * other.dim + k) * dim + j * other.dim + l] = a * other.get(k, l);
                    }
                }
            }
        }
        DenseMatrix { dim, data }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        DenseMatrix { dim: n, data }
    }

    fn sub(&self, other: &DenseMatrix, scale: f64) -> DenseMatrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b * scale).collect();
        DenseMatrix { dim: self.dim, data }
    }

    /// First column, i.e. the image of `|0...0>`.
    pub fn first_column(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, 0)).collect()
    }
}

fn pauli_rotation(pauli: [[Complex64; 2]; 2], angle: f64) -> DenseMatrix {
    let (s, c) = (angle / 2.0).sin_cos();
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { c } else { 0.0 };
            m[i][j] = Complex64::new(id, 0.0) + Complex64::new(0.0, -s) * pauli[i][j];
        }
    }
    DenseMatrix::from_2x2(m)
}

fn local_matrix(kind: GateKind, params: &[f64]) -> DenseMatrix {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let x = [[z, o], [o, z]];
    let y = [[z, -i], [i, z]];
    let zp = [[o, z], [z, -o]];
    match kind {
        GateKind::Rx => pauli_rotation(x, params[0]),
        GateKind::Ry => pauli_rotation(y, params[0]),
        GateKind::Rz => pauli_rotation(zp, params[0]),
        GateKind::Rot => pauli_rotation(zp, params[2])
            .matmul(&pauli_rotation(y, params[1]))
            .matmul(&pauli_rotation(zp, params[0])),
        GateKind::H => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            DenseMatrix::from_2x2([[h, h], [h, -h]])
        }
        GateKind::X => DenseMatrix::from_2x2(x),
        _ => unreachable!("controlled gates are lifted separately"),
    }
}

/// Kronecker product of per-qubit factors, qubit 0 leftmost.
fn kron_all(factors: &[DenseMatrix]) -> DenseMatrix {
    factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.kron(f))
}

fn lift(n_qubits: usize, gate: &GateOp) -> DenseMatrix {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let id = DenseMatrix::identity(2);
    let proj_one = DenseMatrix::from_2x2([[z, z], [z, o]]);
    let mut factors = vec![id.clone(); n_qubits];
    if !gate.kind.is_controlled() {
        factors[gate.targets[0]] = local_matrix(gate.kind, &gate.params);
        return kron_all(&factors);
    }
    for &c in &gate.controls {
        factors[c] = proj_one.clone();
    }
    let full_id = DenseMatrix::identity(1 << n_qubits);
    match gate.kind {
        // I - 2 |11><11|
        GateKind::Cz => {
            factors[gate.targets[0]] = proj_one;
            full_id.sub(&kron_all(&factors), 2.0)
        }
        // I - P1...P1 (I - X)
        _ => {
            factors[gate.targets[0]] = id.sub(&local_matrix(GateKind::X, &[]), 1.0);
            full_id.sub(&kron_all(&factors), 1.0)
        }
    }
}

/// Full `2^n x 2^n` unitary of a gate list (first gate applied first).
pub fn dense_unitary(n_qubits: usize, gates: &[GateOp]) -> Result<DenseMatrix> {
    if n_qubits == 0 || n_qubits > ORACLE_MAX_QUBITS {
        return Err(Error::config(format!(
            "dense oracle supports 1..={ORACLE_MAX_QUBITS} qubits, got {n_qubits}"
        )));
    }
    let mut u = DenseMatrix::identity(1 << n_qubits);
    for g in gates {
        g.validate(n_qubits)?;
        u = lift(n_qubits, g).matmul(&u);
    }
    Ok(u)
}

/// Dense unitary of a bound circuit.
pub fn dense_unitary_oracle(circuit: &CircuitSpec, x: Point, w: &[f64]) -> Result<DenseMatrix> {
    dense_unitary(circuit.n_qubits(), &circuit.bind(x, w)?)
}

impl DenseMatrix {
    /// Output state for input `|0...0>`.
    pub fn apply_to_zero(&self) -> Result<QuantumState> {
        QuantumState::from_amplitudes(self.first_column())
    }
}
