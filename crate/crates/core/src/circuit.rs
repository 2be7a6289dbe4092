//! Gate-level circuit representation with explicit layer structure.
//!
//! A [`Circuit`] is an ordered list of layers; gates within one layer act on
//! disjoint qubits, and the depth is the number of layers. Builders lay out
//! gates according to the schedules the synthesis module prescribes, so the
//! depth of a built circuit is the quantity the analytics report.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::Sign;

/// Errors from circuit assembly and serialization.
#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("gate qubit {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),
    #[error("cnot control and target coincide on qubit {0}")]
    ControlEqualsTarget(usize),
    #[error("layer contains overlapping gates on qubit {0}")]
    LayerOverlap(usize),
    #[error("invalid circuit data: {0}")]
    Invalid(String),
}

/// A single gate. CNOT qubits are (control, target).
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Gate {
    H { q: usize },
    Cnot { control: usize, target: usize },
    X { q: usize },
    Z { q: usize },
    Ry { q: usize, theta: f64 },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H { q } | Gate::X { q } | Gate::Z { q } | Gate::Ry { q, .. } => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    fn check(&self, n_qubits: usize) -> Result<(), CircuitError> {
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(CircuitError::ControlEqualsTarget(control));
            }
        }
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(CircuitError::QubitOutOfRange(q, n_qubits));
            }
        }
        Ok(())
    }
}

/// Gate totals by kind.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub hadamards: usize,
    pub cnots: usize,
    pub xs: usize,
    pub zs: usize,
    pub rotations: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.hadamards + self.cnots + self.xs + self.zs + self.rotations
    }

    fn add(&mut self, gate: &Gate) {
        match gate {
            Gate::H { .. } => self.hadamards += 1,
            Gate::Cnot { .. } => self.cnots += 1,
            Gate::X { .. } => self.xs += 1,
            Gate::Z { .. } => self.zs += 1,
            Gate::Ry { .. } => self.rotations += 1,
        }
    }
}

/// Layered circuit; immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    layers: Vec<Vec<Gate>>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Circuit {
        Circuit {
            n_qubits,
            layers: Vec::new(),
        }
    }

    pub fn from_layers(n_qubits: usize, layers: Vec<Vec<Gate>>) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(n_qubits);
        for layer in layers {
            c.push_layer(layer)?;
        }
        Ok(c)
    }

    /// Appends one layer, validating qubit ranges and in-layer disjointness.
    pub fn push_layer(&mut self, layer: Vec<Gate>) -> Result<(), CircuitError> {
        let mut used = vec![false; self.n_qubits];
        for gate in &layer {
            gate.check(self.n_qubits)?;
            for q in gate.qubits() {
                if used[q] {
                    return Err(CircuitError::LayerOverlap(q));
                }
                used[q] = true;
            }
        }
        self.layers.push(layer);
        Ok(())
    }

    /// Appends all layers of `other`, keeping its layer boundaries.
    pub fn extend(&mut self, other: Circuit) -> Result<(), CircuitError> {
        if other.n_qubits != self.n_qubits {
            return Err(CircuitError::Invalid(
                "cannot concatenate circuits of different widths".into(),
            ));
        }
        for layer in other.layers {
            self.push_layer(layer)?;
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<Gate>] {
        &self.layers
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flatten()
    }

    pub fn gate_counts(&self) -> GateCounts {
        self.counts_in(0..self.layers.len())
    }

    /// Gate totals inside a layer range.
    pub fn counts_in(&self, layers: std::ops::Range<usize>) -> GateCounts {
        let mut counts = GateCounts::default();
        for layer in &self.layers[layers] {
            for gate in layer {
                counts.add(gate);
            }
        }
        counts
    }

    /// OpenQASM-2 text. The header comment block records the qubit labeling;
    /// when `input_bits` is given, X gates preparing the requested product
    /// state from |0…0⟩ are emitted before the circuit proper.
    pub fn to_qasm(&self, qubit_labels: Option<&[String]>, input_bits: Option<&[Sign]>) -> String {
        let mut out = String::new();
        out.push_str("// qubit labeling:\n");
        for q in 0..self.n_qubits {
            match qubit_labels.and_then(|l| l.get(q)) {
                Some(label) => out.push_str(&format!("//   q[{q}] = {label}\n")),
                None => out.push_str(&format!("//   q[{q}]\n")),
            }
        }
        out.push_str("OPENQASM 2.0;\n");
        out.push_str("include \"qelib1.inc\";\n");
        out.push_str(&format!("qreg q[{}];\n", self.n_qubits));
        if let Some(bits) = input_bits {
            out.push_str("// input product state preparation\n");
            for (q, bit) in bits.iter().enumerate() {
                if *bit == Sign::Minus {
                    out.push_str(&format!("x q[{q}];\n"));
                }
            }
            out.push_str("// state-preparation unitary\n");
        }
        for layer in &self.layers {
            for gate in layer {
                match *gate {
                    Gate::H { q } => out.push_str(&format!("h q[{q}];\n")),
                    Gate::Cnot { control, target } => {
                        out.push_str(&format!("cx q[{control}],q[{target}];\n"))
                    }
                    Gate::X { q } => out.push_str(&format!("x q[{q}];\n")),
                    Gate::Z { q } => out.push_str(&format!("z q[{q}];\n")),
                    Gate::Ry { q, theta } => out.push_str(&format!("ry({theta}) q[{q}];\n")),
                }
            }
        }
        out
    }
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GateDto {
    kind: String,
    qubits: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDto {
    schema: String,
    n_qubits: usize,
    layers: Vec<Vec<GateDto>>,
}

impl Serialize for Circuit {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let dto = CircuitDto {
            schema: "v1".into(),
            n_qubits: self.n_qubits,
            layers: self
                .layers
                .iter()
                .map(|layer| {
                    layer
                        .iter()
                        .map(|g| match *g {
                            Gate::H { q } => GateDto { kind: "h".into(), qubits: vec![q], theta: None },
                            Gate::Cnot { control, target } => GateDto {
                                kind: "cnot".into(),
                                qubits: vec![control, target],
                                theta: None,
                            },
                            Gate::X { q } => GateDto { kind: "x".into(), qubits: vec![q], theta: None },
                            Gate::Z { q } => GateDto { kind: "z".into(), qubits: vec![q], theta: None },
                            Gate::Ry { q, theta } => GateDto {
                                kind: "ry".into(),
                                qubits: vec![q],
                                theta: Some(theta),
                            },
                        })
                        .collect()
                })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let dto = CircuitDto::deserialize(deserializer)?;
        if dto.schema != "v1" {
            return Err(D::Error::custom(format!("unsupported schema {:?}", dto.schema)));
        }
        let mut layers = Vec::with_capacity(dto.layers.len());
        for layer in dto.layers {
            let mut gates = Vec::with_capacity(layer.len());
            for g in layer {
                let gate = match (g.kind.as_str(), g.qubits.as_slice(), g.theta) {
                    ("h", &[q], None) => Gate::H { q },
                    ("cnot", &[control, target], None) => Gate::Cnot { control, target },
                    ("x", &[q], None) => Gate::X { q },
                    ("z", &[q], None) => Gate::Z { q },
                    ("ry", &[q], Some(theta)) => Gate::Ry { q, theta },
                    _ => {
                        return Err(D::Error::custom(format!(
                            "malformed gate record of kind {:?}",
                            g.kind
                        )))
                    }
                };
                gates.push(gate);
            }
            layers.push(gates);
        }
        Circuit::from_layers(dto.n_qubits, layers).map_err(D::Error::custom)
    }
}

/// Greedy list scheduler: each pushed gate lands on the earliest layer after
/// every previously placed gate that shares one of its qubits. Relative order
/// of gates on a common qubit is preserved, so the scheduled circuit equals
/// the pushed sequence.
pub(crate) struct ListScheduler {
    n_qubits: usize,
    layers: Vec<Vec<Gate>>,
    next_free: Vec<usize>,
}

impl ListScheduler {
    pub fn new(n_qubits: usize) -> ListScheduler {
        ListScheduler {
            n_qubits,
            layers: Vec::new(),
            next_free: vec![0; n_qubits],
        }
    }

    pub fn push(&mut self, gate: Gate) {
        let layer = gate.qubits().iter().map(|&q| self.next_free[q]).max().unwrap_or(0);
        if layer == self.layers.len() {
            self.layers.push(Vec::new());
        }
        for q in gate.qubits() {
            self.next_free[q] = layer + 1;
        }
        self.layers[layer].push(gate);
    }

    pub fn finish(self) -> Result<Circuit, CircuitError> {
        Circuit::from_layers(self.n_qubits, self.layers)
    }
}
