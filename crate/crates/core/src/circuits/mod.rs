//! Slot-based circuit IR and the architecture catalog.
//!
//! A [`CircuitSpec`] is an immutable gate program whose angles are either
//! constants, components of the 2-D input point, or trainable parameter
//! slots. Binding a point and a parameter vector yields plain [`GateOp`]s.

mod arch;
mod build;

use std::fmt::Write as _;

pub use arch::{Architecture, ArchitectureKind, Encoding};
pub use build::{build, catalog_listing, encoding_gates};

use crate::error::{Error, Result};
use crate::qsim::{GateKind, GateOp, QuantumState};
use crate::Point;

/// Source of one gate angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Const(f64),
    /// Component 0 or 1 of the input point.
    Data(usize),
    /// Index into the trainable parameter vector.
    Param(usize),
}

impl Angle {
    #[inline]
    fn resolve(self, x: Point, w: &[f64]) -> f64 {
        match self {
            Angle::Const(v) => v,
            Angle::Data(i) => x[i],
            Angle::Param(j) => w[j],
        }
    }
}

/// A gate whose angles are still symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotOp {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub angles: Vec<Angle>,
}

impl SlotOp {
    pub fn is_data_bound(&self) -> bool {
        self.angles.iter().any(|a| matches!(a, Angle::Data(_)))
    }
}

/// Location of one trainable parameter inside the op list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSite {
    pub op: usize,
    pub angle: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitSpec {
    n_qubits: usize,
    ops: Vec<SlotOp>,
    measured_qubit: usize,
    n_params: usize,
    encoding_count: usize,
    /// `sites[j]` is where parameter `j` lives.
    sites: Vec<ParamSite>,
}

impl CircuitSpec {
    /// Validates the program and derives parameter and encoding bookkeeping.
    pub fn new(n_qubits: usize, ops: Vec<SlotOp>, measured_qubit: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > crate::qsim::MAX_QUBITS {
            return Err(Error::config(format!("unsupported qubit count {n_qubits}")));
        }
        if measured_qubit >= n_qubits {
            return Err(Error::structural(format!(
                "measured qubit {measured_qubit} out of range"
            )));
        }
        let mut sites: Vec<Option<ParamSite>> = Vec::new();
        let mut data_bound = 0;
        for (i, op) in ops.iter().enumerate() {
            let probe = GateOp {
                kind: op.kind,
                targets: op.targets.clone(),
                controls: op.controls.clone(),
                params: vec![0.0; op.angles.len()],
            };
            probe
                .validate(n_qubits)
                .map_err(|e| Error::structural(format!("op {i}: {e}")))?;
            for (a, angle) in op.angles.iter().enumerate() {
                match *angle {
                    Angle::Const(_) => {}
                    Angle::Data(c) if c < 2 => {}
                    Angle::Data(c) => return Err(Error::structural(format!("op {i} reads input component {c}"))),
                    Angle::Param(j) => {
                        if sites.len() <= j {
                            sites.resize(j + 1, None);
                        }
                        if sites[j].is_some() {
                            return Err(Error::structural(format!("parameter {j} used twice")));
                        }
                        sites[j] = Some(ParamSite { op: i, angle: a });
                    }
                }
            }
            if op.is_data_bound() {
                if op.targets.contains(&measured_qubit) {
                    return Err(Error::structural("the measured ancilla carries a data-encoding gate"));
                }
                data_bound += 1;
            }
        }
        let sites = sites
            .into_iter()
            .enumerate()
            .map(|(j, s)| s.ok_or_else(|| Error::structural(format!("parameter {j} is never used"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CircuitSpec {
            n_qubits,
            n_params: sites.len(),
            encoding_count: data_bound / 2,
            ops,
            measured_qubit,
            sites,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[SlotOp] {
        &self.ops
    }

    pub fn measured_qubit(&self) -> usize {
        self.measured_qubit
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    /// How many times the full input vector is uploaded.
    pub fn encoding_count(&self) -> usize {
        self.encoding_count
    }

    pub fn param_sites(&self) -> &[ParamSite] {
        &self.sites
    }

    /// Same circuit with an `X` on the measured qubit right before readout,
    /// which negates every prediction.
    pub fn with_flipped_readout(&self) -> CircuitSpec {
        let mut flipped = self.clone();
        flipped.ops.push(SlotOp {
            kind: GateKind::X,
            targets: vec![self.measured_qubit],
            controls: Vec::new(),
            angles: Vec::new(),
        });
        flipped
    }

    pub(crate) fn check_inputs(&self, x: Point, w: &[f64]) -> Result<()> {
        if w.len() != self.n_params {
            return Err(Error::config(format!(
                "circuit takes {} parameters, got {}",
                self.n_params,
                w.len()
            )));
        }
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::config(format!("input point {x:?} is not finite")));
        }
        Ok(())
    }

    /// Resolves every slot into an executable gate list.
    pub fn bind(&self, x: Point, w: &[f64]) -> Result<Vec<GateOp>> {
        self.check_inputs(x, w)?;
        Ok(self
            .ops
            .iter()
            .map(|op| GateOp {
                kind: op.kind,
                targets: op.targets.clone(),
                controls: op.controls.clone(),
                params: op.angles.iter().map(|a| a.resolve(x, w)).collect(),
            })
            .collect())
    }

    /// Applies op `index` to `state`, optionally adding `shift` to one of its angles.
    #[inline]
    pub(crate) fn apply_op(
        &self,
        state: &mut QuantumState,
        index: usize,
        x: Point,
        w: &[f64],
        shift: Option<(usize, f64)>,
    ) {
        let op = &self.ops[index];
        let mut angles = [0.0; 3];
        for (k, a) in op.angles.iter().enumerate() {
            angles[k] = a.resolve(x, w);
        }
        if let Some((k, delta)) = shift {
            angles[k] += delta;
        }
        state.apply_unchecked(op.kind, &op.targets, &op.controls, &angles[..op.angles.len()]);
    }

    pub(crate) fn simulate_unchecked(&self, x: Point, w: &[f64]) -> QuantumState {
        let mut state = QuantumState::new(self.n_qubits).expect("qubit count validated at construction");
        for i in 0..self.ops.len() {
            self.apply_op(&mut state, i, x, w, None);
        }
        state
    }

    /// Output state `U(x, w)|0...0>`.
    pub fn simulate(&self, x: Point, w: &[f64]) -> Result<QuantumState> {
        self.check_inputs(x, w)?;
        Ok(self.simulate_unchecked(x, w))
    }

    /// Model prediction: `<Z>` of the measured ancilla, in `[-1, 1]`.
    pub fn forward(&self, x: Point, w: &[f64]) -> Result<f64> {
        self.check_inputs(x, w)?;
        Ok(self.forward_unchecked(x, w))
    }

    #[inline]
    pub(crate) fn forward_unchecked(&self, x: Point, w: &[f64]) -> f64 {
        self.simulate_unchecked(x, w)
            .expectation_z_unchecked(self.measured_qubit)
    }

    /// Gate-per-line text listing, used for documentation and golden tests.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qubits {}", self.n_qubits);
        let _ = writeln!(out, "measure q{}", self.measured_qubit);
        let _ = writeln!(out, "params {}", self.n_params);
        let _ = writeln!(out, "encodings {}", self.encoding_count);
        for op in &self.ops {
            out.push_str(op.kind.name());
            if !op.angles.is_empty() {
                let angles: Vec<String> = op
                    .angles
                    .iter()
                    .map(|a| match a {
                        Angle::Const(v) => v.to_string(),
                        Angle::Data(c) => format!("x{}", c + 1),
                        Angle::Param(j) => format!("w{j}"),
                    })
                    .collect();
                let _ = write!(out, "({})", angles.join(", "));
            }
            if !op.controls.is_empty() {
                let c: Vec<String> = op.controls.iter().map(|q| format!("q{q}")).collect();
                let _ = write!(out, " [{}] ->", c.join(","));
            }
            let _ = writeln!(out, " q{}", op.targets[0]);
        }
        out
    }
}
