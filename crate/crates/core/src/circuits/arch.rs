use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a 2-D input point is written onto a pair of data qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Encoding {
    /// `Rx(x1) ⊗ Rx(x2)`.
    #[default]
    RxAngle,
    /// `Rot(x1, x2, 0) H` on each of the two qubits.
    RotH,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::RxAngle => "rx",
            Encoding::RotH => "roth",
        }
    }
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rx" => Ok(Encoding::RxAngle),
            "roth" => Ok(Encoding::RotH),
            other => Err(Error::config(format!(
                "unknown encoding `{other}` (expected rx or roth)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArchitectureKind {
    /// Single encoding, `Rot⊗Rot; CZ; Rot⊗Rot`, MCX onto one ancilla.
    DissipativeQP,
    /// `layers` repetitions of encode + processing, then MCX.
    Reuploading { layers: usize },
    /// Four-layer re-uploading teacher.
    DeepTeacher4,
    /// Single encoding with four `Rot⊗Rot; CNOT` blocks.
    EightGateQP,
    /// Dissipative QP whose data qubits feed two ancillas, combined into a third.
    DeepDissipativeQP,
    /// Two dissipative QPs on separate data pairs feeding an output perceptron.
    QnnTwoQP,
    /// Deep dissipative QP with three extra processing blocks on the data qubits.
    RandomDeepQP,
}

impl ArchitectureKind {
    /// Every kind, with re-uploading at its default student depth of two.
    pub const ALL: [ArchitectureKind; 7] = [
        ArchitectureKind::DissipativeQP,
        ArchitectureKind::Reuploading { layers: 2 },
        ArchitectureKind::DeepTeacher4,
        ArchitectureKind::EightGateQP,
        ArchitectureKind::DeepDissipativeQP,
        ArchitectureKind::QnnTwoQP,
        ArchitectureKind::RandomDeepQP,
    ];
}

/// Architecture plus data encoding; the unit the builders and the CLI speak in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Architecture {
    pub kind: ArchitectureKind,
    pub encoding: Encoding,
}

impl Architecture {
    pub fn new(kind: ArchitectureKind) -> Self {
        Architecture {
            kind,
            encoding: Encoding::RxAngle,
        }
    }

    pub fn with_encoding(kind: ArchitectureKind, encoding: Encoding) -> Self {
        Architecture { kind, encoding }
    }

    pub fn dissipative_qp() -> Self {
        Self::new(ArchitectureKind::DissipativeQP)
    }

    pub fn reuploading(layers: usize) -> Self {
        Self::new(ArchitectureKind::Reuploading { layers })
    }

    pub fn deep_teacher4() -> Self {
        Self::new(ArchitectureKind::DeepTeacher4)
    }

    /// Human-readable name; parses back through [`FromStr`].
    pub fn name(&self) -> String {
        let base = match self.kind {
            ArchitectureKind::DissipativeQP => "dissipative_qp".to_string(),
            ArchitectureKind::Reuploading { layers } => format!("reuploading:{layers}"),
            ArchitectureKind::DeepTeacher4 => "deep_teacher4".to_string(),
            ArchitectureKind::EightGateQP => "eight_gate_qp".to_string(),
            ArchitectureKind::DeepDissipativeQP => "deep_dissipative_qp".to_string(),
            ArchitectureKind::QnnTwoQP => "qnn_two_qp".to_string(),
            ArchitectureKind::RandomDeepQP => "random_deep_qp".to_string(),
        };
        match self.encoding {
            Encoding::RxAngle => base,
            enc => format!("{base}@{}", enc.name()),
        }
    }

    /// File-name-safe form of [`Architecture::name`].
    pub fn slug(&self) -> String {
        self.name().replace([':', '@'], "-")
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (base, encoding) = match s.split_once('@') {
            Some((b, e)) => (b, e.parse()?),
            None => (s, Encoding::RxAngle),
        };
        let kind = match base {
            "dissipative_qp" => ArchitectureKind::DissipativeQP,
            "deep_teacher4" => ArchitectureKind::DeepTeacher4,
            "eight_gate_qp" => ArchitectureKind::EightGateQP,
            "deep_dissipative_qp" => ArchitectureKind::DeepDissipativeQP,
            "qnn_two_qp" => ArchitectureKind::QnnTwoQP,
            "random_deep_qp" => ArchitectureKind::RandomDeepQP,
            other => {
                let layers = other
                    .strip_prefix("reuploading:")
                    .ok_or_else(|| Error::config(format!("unknown architecture `{other}`")))?;
                let layers: usize = layers
                    .parse()
                    .map_err(|_| Error::config(format!("invalid layer count `{layers}`")))?;
                if layers == 0 {
                    return Err(Error::config("reuploading needs at least one layer"));
                }
                ArchitectureKind::Reuploading { layers }
            }
        };
        Ok(Architecture { kind, encoding })
    }
}

impl Serialize for Architecture {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Architecture {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
