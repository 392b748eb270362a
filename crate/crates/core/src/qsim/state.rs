use num_complex::Complex64;

use super::gate::{GateKind, GateOp};
use crate::error::{Error, Result};

/// Largest register the dense engine accepts.
pub const MAX_QUBITS: usize = 20;

/// Dense amplitude vector over `n_qubits` qubits, qubit 0 = most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// `|0...0>` on `n_qubits` qubits.
pub fn new_state(n_qubits: usize) -> Result<QuantumState> {
    QuantumState::new(n_qubits)
}

/// Functional form of [`QuantumState::apply`].
pub fn apply_gate(mut state: QuantumState, gate: &GateOp) -> Result<QuantumState> {
    state.apply(gate)?;
    Ok(state)
}

impl QuantumState {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::config(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n_qubits}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { n_qubits, amplitudes })
    }

    /// Builds a state from raw amplitudes. The vector is not renormalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() || len.trailing_zeros() as usize > MAX_QUBITS {
            return Err(Error::structural(format!(
                "amplitude vector of length {len} is not 2^n"
            )));
        }
        Ok(QuantumState {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Resets to `|0...0>` without reallocating.
    pub fn reset(&mut self) {
        self.amplitudes.fill(Complex64::new(0.0, 0.0));
        self.amplitudes[0] = Complex64::new(1.0, 0.0);
    }

    #[inline]
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::structural(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// Applies a validated gate in place.
    pub fn apply(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.apply_unchecked(gate.kind, &gate.targets, &gate.controls, &gate.params);
        Ok(())
    }

    /// Applies a gate whose wiring has already been validated against this register.
    pub(crate) fn apply_unchecked(&mut self, kind: GateKind, targets: &[usize], controls: &[usize], params: &[f64]) {
        let target = targets[0];
        match kind {
            GateKind::Cz => self.apply_cz(controls[0], target),
            GateKind::Cnot | GateKind::Mcx => self.apply_mcx(controls, target),
            GateKind::X => self.apply_x(target),
            _ => {
                let m = super::gate::single_qubit_matrix(kind, params).expect("single-qubit kind");
                self.apply_single(target, &m);
            }
        }
    }

    pub(crate) fn apply_single(&mut self, qubit: usize, m: &[[Complex64; 2]; 2]) {
        let bit = self.mask(qubit);
        let len = self.amplitudes.len();
        let mut base = 0;
        while base < len {
            for i in base..base + bit {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i + bit];
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i + bit] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += 2 * bit;
        }
    }

    fn apply_x(&mut self, qubit: usize) {
        let bit = self.mask(qubit);
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                self.amplitudes.swap(i, i | bit);
            }
        }
    }

    fn apply_cz(&mut self, a: usize, b: usize) {
        let both = self.mask(a) | self.mask(b);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & both == both {
                *amp = -*amp;
            }
        }
    }

    fn apply_mcx(&mut self, controls: &[usize], target: usize) {
        let cmask = controls.iter().fold(0, |m, &q| m | self.mask(q));
        let tbit = self.mask(target);
        for i in 0..self.amplitudes.len() {
            if i & cmask == cmask && i & tbit == 0 {
                self.amplitudes.swap(i, i | tbit);
            }
        }
    }

    /// `<Z>` on `qubit`: probability of bit 0 minus probability of bit 1.
    pub fn expectation_z(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        Ok(self.expectation_z_unchecked(qubit))
    }

    pub(crate) fn expectation_z_unchecked(&self, qubit: usize) -> f64 {
        let bit = self.mask(qubit);
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| if i & bit == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum()
    }

    /// Marginal distribution over `qubits`; the first listed qubit is the most
    /// significant bit of the output index (lexicographic bit order).
    pub fn probability_vector(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        for (k, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..k].contains(&q) {
                return Err(Error::structural(format!("qubit {q} listed twice")));
            }
        }
        let masks: Vec<usize> = qubits.iter().map(|&q| self.mask(q)).collect();
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let idx = masks.iter().fold(0, |acc, &m| (acc << 1) | usize::from(i & m != 0));
            probs[idx] += a.norm_sqr();
        }
        Ok(probs)
    }
}
