//! Circuit IR: layouts, layers of singles + multi-CZ gates, and whole circuits.

mod builder;
pub mod codec;
mod gate;
mod validate;

pub use builder::CircuitBuilder;
pub use gate::{mat, toffoli_convert, Mat2, MultiCz, MultiQubitGate, SingleQubitGate, Toffoli};
pub use validate::{validate, ValidationReport, Violation};

use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layout {
    AllToAll(usize),
    Line(usize),
    /// `rows` rows of `cols` qubits; id = row·cols + col.
    Lattice { rows: usize, cols: usize },
}

impl Layout {
    pub fn num_qubits(&self) -> usize {
        match *self {
            Layout::AllToAll(n) | Layout::Line(n) => n,
            Layout::Lattice { rows, cols } => rows * cols,
        }
    }

    pub fn id(&self, row: usize, col: usize) -> usize {
        match *self {
            Layout::Lattice { cols, .. } => row * cols + col,
            _ => col,
        }
    }

    /// (row, col) of a qubit; non-lattice layouts are a single row.
    pub fn coord(&self, q: usize) -> (usize, usize) {
        match *self {
            Layout::Lattice { cols, .. } => (q / cols, q % cols),
            _ => (0, q),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Layout::AllToAll(_) => "all_to_all",
            Layout::Line(_) => "line",
            Layout::Lattice { .. } => "lattice",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    Zero,
    One,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ancilla {
    pub q: usize,
    pub init: Init,
}

/// Singles act first, then the CZs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Layer {
    pub singles: Vec<SingleQubitGate>,
    pub czs: Vec<MultiCz>,
}

impl Layer {
    pub fn is_empty(&self) -> bool {
        self.singles.is_empty() && self.czs.is_empty()
    }

    pub fn find_cz(&self, support: &[usize]) -> Option<usize> {
        self.czs.iter().position(|g| g.support == support)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub layout: Layout,
    pub inputs: Vec<usize>,
    pub ancilla: Vec<Ancilla>,
    pub layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(layout: Layout) -> Self {
        Self {
            layout,
            inputs: Vec::new(),
            ancilla: Vec::new(),
            layers: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.layout.num_qubits()
    }

    /// Number of layers carrying at least one CZ.
    pub fn depth(&self) -> usize {
        self.layers.iter().filter(|l| !l.czs.is_empty()).count()
    }

    pub fn cz_count(&self) -> usize {
        self.layers.iter().map(|l| l.czs.len()).sum()
    }

    pub fn init_of(&self, q: usize) -> Init {
        self.ancilla
            .iter()
            .find(|a| a.q == q)
            .map_or(Init::Zero, |a| a.init)
    }

    /// Computational-basis start state for input assignment `x` (x[i] sets `inputs[i]`).
    pub fn initial_bits(&self, x: &[bool]) -> Result<Vec<bool>> {
        if x.len() != self.inputs.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} input bits, got {}",
                self.inputs.len(),
                x.len()
            )));
        }
        let mut bits = vec![false; self.num_qubits()];
        for a in &self.ancilla {
            bits[a.q] = a.init == Init::One;
        }
        for (&q, &b) in self.inputs.iter().zip(x) {
            bits[q] = b;
        }
        Ok(bits)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// `Ok(())` iff the validation report is empty.
    pub fn check(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidCircuit(report.to_string()))
        }
    }

    /// Runs `self` then `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch(format!(
                "{:?} vs {:?}",
                self.layout, other.layout
            )));
        }
        let mut out = self.clone();
        out.layers.extend(other.layers.iter().cloned());
        Ok(out)
    }

    /// Reversed layers with daggered singles. Each layer `M·S` becomes `S†·M`,
    /// i.e. two layers, then the result is normalized.
    pub fn inverse(&self) -> Circuit {
        let mut layers = Vec::with_capacity(2 * self.layers.len());
        for layer in self.layers.iter().rev() {
            layers.push(Layer {
                singles: vec![],
                czs: layer.czs.clone(),
            });
            layers.push(Layer {
                singles: layer.singles.iter().map(SingleQubitGate::dagger).collect(),
                czs: vec![],
            });
        }
        Circuit {
            layers,
            ..self.clone()
        }
        .normalized()
    }

    /// Folds each singles-only layer into the next layer's singles and drops
    /// empty layers. Unitary and depth are unchanged.
    pub fn normalized(&self) -> Circuit {
        let mut layers: Vec<Layer> = Vec::new();
        let mut pending: BTreeMap<usize, Mat2> = BTreeMap::new();
        for layer in &self.layers {
            for g in &layer.singles {
                compose_into(&mut pending, g);
            }
            if !layer.czs.is_empty() {
                layers.push(Layer {
                    singles: drain_pending(&mut pending),
                    czs: layer.czs.clone(),
                });
            }
        }
        let tail = drain_pending(&mut pending);
        if !tail.is_empty() {
            layers.push(Layer {
                singles: tail,
                czs: vec![],
            });
        }
        Circuit {
            layers,
            ..self.clone()
        }
    }

    /// Removes the CZ with exactly this support from `layer`.
    pub fn erase_cz(&self, layer: usize, support: &[usize]) -> Result<Circuit> {
        let not_found = || Error::GateNotFound {
            layer,
            support: support.to_vec(),
        };
        let l = self.layers.get(layer).ok_or_else(not_found)?;
        let idx = l.find_cz(support).ok_or_else(not_found)?;
        let mut out = self.clone();
        out.layers[layer].czs.remove(idx);
        Ok(out)
    }
}

pub(crate) fn compose_into(pending: &mut BTreeMap<usize, Mat2>, g: &SingleQubitGate) {
    let entry = pending.entry(g.target).or_insert_with(mat::identity);
    *entry = mat::mul(&g.u, entry);
}

pub(crate) fn drain_pending(pending: &mut BTreeMap<usize, Mat2>) -> Vec<SingleQubitGate> {
    std::mem::take(pending)
        .into_iter()
        .filter(|(_, u)| !mat::is_identity(u, 1e-14))
        .map(|(q, u)| SingleQubitGate::new(q, u))
        .collect()
}
