use super::{compose_into, drain_pending, mat, Ancilla, Circuit, Init, Layer, Layout, Mat2, MultiCz};
use super::{SingleQubitGate, Toffoli};
use std::collections::BTreeMap;

/// Accumulates single-qubit gates until the next CZ layer, so consecutive
/// singles on a qubit collapse into one matrix.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    circuit: Circuit,
    pending: BTreeMap<usize, Mat2>,
}

impl CircuitBuilder {
    pub fn new(layout: Layout) -> Self {
        Self {
            circuit: Circuit::new(layout),
            pending: BTreeMap::new(),
        }
    }

    pub fn inputs(mut self, inputs: Vec<usize>) -> Self {
        self.circuit.inputs = inputs;
        self
    }

    pub fn ancilla(&mut self, q: usize, init: Init) -> &mut Self {
        self.circuit.ancilla.push(Ancilla { q, init });
        self
    }

    pub fn single(&mut self, q: usize, u: Mat2) -> &mut Self {
        compose_into(&mut self.pending, &SingleQubitGate::new(q, u));
        self
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.single(q, mat::h())
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.single(q, mat::x())
    }

    /// One CZ layer; pending singles are emitted in front of it. An empty
    /// `supports` list is a no-op.
    pub fn cz_layer<I>(&mut self, supports: I) -> &mut Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let czs: Vec<MultiCz> = supports.into_iter().map(MultiCz::new).collect();
        if czs.is_empty() {
            return self;
        }
        let singles = drain_pending(&mut self.pending);
        self.circuit.layers.push(Layer { singles, czs });
        self
    }

    /// Parallel Toffolis lowered to H_t · CZ · H_t, all in one CZ layer.
    pub fn toffoli_layer(&mut self, gates: &[Toffoli]) -> &mut Self {
        for g in gates {
            self.h(g.target);
        }
        self.cz_layer(gates.iter().map(|g| g.cz().support));
        for g in gates {
            self.h(g.target);
        }
        self
    }

    /// Parallel CNOTs `(control, target)`.
    pub fn cnot_layer(&mut self, pairs: &[(usize, usize)]) -> &mut Self {
        let gates: Vec<Toffoli> = pairs
            .iter()
            .map(|&(c, t)| Toffoli {
                controls: vec![c],
                target: t,
            })
            .collect();
        self.toffoli_layer(&gates)
    }

    /// Appends another circuit's layers (pending singles are merged into its first layer).
    pub fn append_layers(&mut self, layers: &[Layer]) -> &mut Self {
        for layer in layers {
            for g in &layer.singles {
                compose_into(&mut self.pending, g);
            }
            if !layer.czs.is_empty() {
                let singles = drain_pending(&mut self.pending);
                self.circuit.layers.push(Layer {
                    singles,
                    czs: layer.czs.clone(),
                });
            }
        }
        self
    }

    pub fn depth(&self) -> usize {
        self.circuit.depth()
    }

    pub fn finish(mut self) -> Circuit {
        let tail = drain_pending(&mut self.pending);
        if !tail.is_empty() {
            self.circuit.layers.push(Layer {
                singles: tail,
                czs: vec![],
            });
        }
        self.circuit
    }
}
