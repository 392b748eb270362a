use super::{Angle, Architecture, ArchitectureKind, CircuitSpec, Encoding, SlotOp};
use crate::qsim::{GateKind, GateOp};
use crate::Point;

struct Builder {
    ops: Vec<SlotOp>,
    next_param: usize,
    encoding: Encoding,
}

impl Builder {
    fn new(encoding: Encoding) -> Self {
        Builder {
            ops: Vec::new(),
            next_param: 0,
            encoding,
        }
    }

    fn push(&mut self, kind: GateKind, target: usize, controls: &[usize], angles: Vec<Angle>) {
        self.ops.push(SlotOp {
            kind,
            targets: vec![target],
            controls: controls.to_vec(),
            angles,
        });
    }

    fn param(&mut self) -> Angle {
        let a = Angle::Param(self.next_param);
        self.next_param += 1;
        a
    }

    fn rot(&mut self, q: usize) {
        let angles = vec![self.param(), self.param(), self.param()];
        self.push(GateKind::Rot, q, &[], angles);
    }

    fn rot_pair(&mut self, a: usize, b: usize) {
        self.rot(a);
        self.rot(b);
    }

    fn cz(&mut self, a: usize, b: usize) {
        self.push(GateKind::Cz, b, &[a], Vec::new());
    }

    fn cnot(&mut self, control: usize, target: usize) {
        self.push(GateKind::Cnot, target, &[control], Vec::new());
    }

    fn mcx(&mut self, controls: &[usize], target: usize) {
        self.push(GateKind::Mcx, target, controls, Vec::new());
    }

    /// Uploads `(x1, x2)` onto data qubits `a` and `b`.
    fn encode(&mut self, a: usize, b: usize) {
        match self.encoding {
            Encoding::RxAngle => {
                self.push(GateKind::Rx, a, &[], vec![Angle::Data(0)]);
                self.push(GateKind::Rx, b, &[], vec![Angle::Data(1)]);
            }
            Encoding::RotH => {
                for q in [a, b] {
                    self.push(GateKind::H, q, &[], Vec::new());
                    self.push(
                        GateKind::Rot,
                        q,
                        &[],
                        vec![Angle::Data(0), Angle::Data(1), Angle::Const(0.0)],
                    );
                }
            }
        }
    }

    /// `Rot⊗Rot; CZ; Rot⊗Rot` on a data pair.
    fn processing(&mut self, a: usize, b: usize) {
        self.rot_pair(a, b);
        self.cz(a, b);
        self.rot_pair(a, b);
    }

    /// Encode once, process, and fire the MCX onto `ancilla`.
    fn perceptron(&mut self, a: usize, b: usize, ancilla: usize) {
        self.encode(a, b);
        self.processing(a, b);
        self.mcx(&[a, b], ancilla);
    }

    /// Two ancillas fed by CNOT copies of the data qubits, merged into a third
    /// through CZ phase kicks.
    fn deep_dissipative_head(&mut self) {
        self.cnot(0, 2);
        self.cnot(1, 3);
        self.rot_pair(2, 3);
        self.rot(4);
        self.cz(2, 4);
        self.cz(3, 4);
        self.rot(4);
    }

    fn finish(self, n_qubits: usize, measured: usize) -> CircuitSpec {
        CircuitSpec::new(n_qubits, self.ops, measured).expect("catalog circuits are well formed")
    }
}

fn reuploading(encoding: Encoding, layers: usize) -> CircuitSpec {
    let mut b = Builder::new(encoding);
    for _ in 0..layers {
        b.encode(0, 1);
        b.processing(0, 1);
    }
    b.mcx(&[0, 1], 2);
    b.finish(3, 2)
}

/// Builds the circuit for an architecture. Trainable parameters are numbered
/// in gate order, three per `Rot`, with no sharing.
pub fn build(arch: Architecture) -> CircuitSpec {
    let enc = arch.encoding;
    match arch.kind {
        ArchitectureKind::DissipativeQP => reuploading(enc, 1),
        ArchitectureKind::Reuploading { layers } => reuploading(enc, layers.max(1)),
        ArchitectureKind::DeepTeacher4 => reuploading(enc, 4),
        ArchitectureKind::EightGateQP => {
            let mut b = Builder::new(enc);
            b.encode(0, 1);
            for _ in 0..4 {
                b.rot_pair(0, 1);
                b.cnot(0, 1);
            }
            b.mcx(&[0, 1], 2);
            b.finish(3, 2)
        }
        ArchitectureKind::DeepDissipativeQP => {
            let mut b = Builder::new(enc);
            b.encode(0, 1);
            b.processing(0, 1);
            b.deep_dissipative_head();
            b.finish(5, 4)
        }
        ArchitectureKind::RandomDeepQP => {
            let mut b = Builder::new(enc);
            b.encode(0, 1);
            b.processing(0, 1);
            for _ in 0..3 {
                b.rot_pair(0, 1);
                b.cz(0, 1);
            }
            b.deep_dissipative_head();
            b.finish(5, 4)
        }
        ArchitectureKind::QnnTwoQP => {
            let mut b = Builder::new(enc);
            b.perceptron(0, 1, 2);
            b.perceptron(3, 4, 5);
            b.processing(2, 5);
            b.mcx(&[2, 5], 6);
            b.finish(7, 6)
        }
    }
}

/// Bound encoding gates for one point on data qubits 0 and 1, with no
/// processing and no ancilla.
pub fn encoding_gates(encoding: Encoding, x: Point) -> Vec<GateOp> {
    let mut b = Builder::new(encoding);
    b.encode(0, 1);
    b.ops
        .into_iter()
        .map(|op| GateOp {
            kind: op.kind,
            targets: op.targets,
            controls: op.controls,
            params: op.angles.iter().map(|a| a.resolve(x, &[])).collect(),
        })
        .collect()
}

/// Listing of every catalog architecture, one block per architecture.
pub fn catalog_listing(encoding: Encoding) -> String {
    ArchitectureKind::ALL
        .iter()
        .map(|&kind| {
            let arch = Architecture::with_encoding(kind, encoding);
            format!("# {}\n{}", arch.name(), build(arch).listing())
        })
        .collect::<Vec<_>>()
        .join("\n")
}
