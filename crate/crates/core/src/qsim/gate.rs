use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    /// `Rot(phi, theta, omega) = Rz(omega) Ry(theta) Rz(phi)`.
    Rot,
    H,
    X,
    Cz,
    Cnot,
    /// Multi-controlled NOT, applied directly as a controlled permutation.
    Mcx,
}

impl GateKind {
    /// Number of real angles the gate carries.
    pub fn n_angles(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::Rot => 3,
            GateKind::H | GateKind::X | GateKind::Cz | GateKind::Cnot | GateKind::Mcx => 0,
        }
    }

    pub fn is_parameterized(self) -> bool {
        self.n_angles() > 0
    }

    /// Whether the gate acts on control qubits.
    pub fn is_controlled(self) -> bool {
        matches!(self, GateKind::Cz | GateKind::Cnot | GateKind::Mcx)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Rot => "ROT",
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Cz => "CZ",
            GateKind::Cnot => "CNOT",
            GateKind::Mcx => "MCX",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully bound gate: kind, wiring and numeric angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateOp {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub params: Vec<f64>,
}

impl GateOp {
    fn single(kind: GateKind, target: usize, params: Vec<f64>) -> Self {
        GateOp {
            kind,
            targets: vec![target],
            controls: Vec::new(),
            params,
        }
    }

    pub fn rx(target: usize, angle: f64) -> Self {
        Self::single(GateKind::Rx, target, vec![angle])
    }

    pub fn ry(target: usize, angle: f64) -> Self {
        Self::single(GateKind::Ry, target, vec![angle])
    }

    pub fn rz(target: usize, angle: f64) -> Self {
        Self::single(GateKind::Rz, target, vec![angle])
    }

    pub fn rot(target: usize, phi: f64, theta: f64, omega: f64) -> Self {
        Self::single(GateKind::Rot, target, vec![phi, theta, omega])
    }

    pub fn h(target: usize) -> Self {
        Self::single(GateKind::H, target, Vec::new())
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target, Vec::new())
    }

    pub fn cz(control: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::Cz,
            targets: vec![target],
            controls: vec![control],
            params: Vec::new(),
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::Cnot,
            targets: vec![target],
            controls: vec![control],
            params: Vec::new(),
        }
    }

    pub fn mcx(controls: &[usize], target: usize) -> Self {
        GateOp {
            kind: GateKind::Mcx,
            targets: vec![target],
            controls: controls.to_vec(),
            params: Vec::new(),
        }
    }

    /// Checks arity, angle count and that all wires are distinct and below `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.targets.len() != 1 {
            return Err(Error::structural(format!(
                "{} expects exactly one target, got {}",
                self.kind,
                self.targets.len()
            )));
        }
        let n_controls_ok = match self.kind {
            GateKind::Cz | GateKind::Cnot => self.controls.len() == 1,
            GateKind::Mcx => !self.controls.is_empty(),
            _ => self.controls.is_empty(),
        };
        if !n_controls_ok {
            return Err(Error::structural(format!(
                "{} cannot take {} control(s)",
                self.kind,
                self.controls.len()
            )));
        }
        if self.params.len() != self.kind.n_angles() {
            return Err(Error::structural(format!(
                "{} expects {} angle(s), got {}",
                self.kind,
                self.kind.n_angles(),
                self.params.len()
            )));
        }
        let mut seen = 0u64;
        for &q in self.controls.iter().chain(&self.targets) {
            if q >= n_qubits {
                return Err(Error::structural(format!(
                    "{} touches qubit {q} but the register has {n_qubits}",
                    self.kind
                )));
            }
            if seen & (1 << q) != 0 {
                return Err(Error::structural(format!("{} uses qubit {q} twice", self.kind)));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    /// The 2x2 matrix of a single-qubit gate, row-major. `None` for controlled kinds.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        single_qubit_matrix(self.kind, &self.params)
    }

    /// The local unitary on the gate's own wires, ordered `controls..., target`
    /// with the first wire as most significant bit. Row-major, dimension `2^k`.
    pub fn matrix(&self) -> (usize, Vec<Complex64>) {
        if let Some(m) = self.single_qubit_matrix() {
            return (2, vec![m[0][0], m[0][1], m[1][0], m[1][1]]);
        }
        let k = self.controls.len() + 1;
        let dim = 1usize << k;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            out[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        // All controls set: the two highest-index basis states.
        let (a, b) = (dim - 2, dim - 1);
        match self.kind {
            GateKind::Cz => out[b * dim + b] = Complex64::new(-1.0, 0.0),
            _ => {
                out[a * dim + a] = Complex64::new(0.0, 0.0);
                out[b * dim + b] = Complex64::new(0.0, 0.0);
                out[a * dim + b] = Complex64::new(1.0, 0.0);
                out[b * dim + a] = Complex64::new(1.0, 0.0);
            }
        }
        (dim, out)
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let angles: Vec<String> = self.params.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", angles.join(", "))?;
        }
        if !self.controls.is_empty() {
            let c: Vec<String> = self.controls.iter().map(|q| format!("q{q}")).collect();
            write!(f, " [{}] ->", c.join(","))?;
        }
        write!(f, " q{}", self.targets[0])
    }
}

pub(crate) fn single_qubit_matrix(kind: GateKind, params: &[f64]) -> Option<[[Complex64; 2]; 2]> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let m = match kind {
        GateKind::Rx => {
            let (s, co) = (params[0] / 2.0).sin_cos();
            [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
        }
        GateKind::Ry => {
            let (s, co) = (params[0] / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        GateKind::Rz => {
            let half = params[0] / 2.0;
            [
                [Complex64::from_polar(1.0, -half), c(0.0, 0.0)],
                [c(0.0, 0.0), Complex64::from_polar(1.0, half)],
            ]
        }
        GateKind::Rot => {
            let (phi, theta, omega) = (params[0], params[1], params[2]);
            let (s, co) = (theta / 2.0).sin_cos();
            let sum = (phi + omega) / 2.0;
            let diff = (phi - omega) / 2.0;
            [
                [Complex64::from_polar(co, -sum), -Complex64::from_polar(s, diff)],
                [Complex64::from_polar(s, -diff), Complex64::from_polar(co, sum)],
            ]
        }
        GateKind::H => [
            [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
            [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
        ],
        GateKind::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        GateKind::Cz | GateKind::Cnot | GateKind::Mcx => return None,
    };
    Some(m)
}
