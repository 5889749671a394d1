//! Exact statevector simulation and state metrics.
//!
//! Qubit `q` is bit `q` of a basis index (qubit 0 is the least significant bit).

mod dense;
mod density;
mod eigen;
mod metrics;
mod sparse;
mod success;

pub use dense::StateVector;
pub use density::{partial_trace, partial_trace_sparse, CMatrix, ReducedDensity, MAX_KEEP};
pub use eigen::{eigh, eigvalsh};
pub use metrics::{fidelity, pure_trace_distance, trace_distance, trace_norm, tv_distance};
pub use sparse::SparseState;
pub use success::{avg_success, f_eval, input_samples, Sampling, SuccessProfile, EXACT_INPUT_CAP};

use crate::circuit::{Circuit, Layer, Mat2};
use crate::{Error, Result};

pub const DEFAULT_QUBIT_CAP: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub qubit_cap: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

/// Common kernel interface of the dense and sparse backends.
pub trait Register {
    fn num_qubits(&self) -> usize;
    fn apply_single(&mut self, q: usize, u: &Mat2);
    /// Negates every amplitude whose bits under `mask` are all 1.
    fn apply_cz(&mut self, mask: u128);

    fn apply_layer(&mut self, layer: &Layer) {
        for g in &layer.singles {
            self.apply_single(g.target, &g.u);
        }
        for g in &layer.czs {
            self.apply_cz(g.mask());
        }
    }

    fn apply_layers(&mut self, layers: &[Layer]) {
        for layer in layers {
            self.apply_layer(layer);
        }
    }
}

pub fn bits_to_index(bits: &[bool]) -> u128 {
    bits.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &b)| if b { acc | (1u128 << i) } else { acc })
}

/// `x[i]` = bit `i` of `mask`.
pub fn bits_of(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (mask >> i) & 1 == 1).collect()
}

/// Dense simulation of `c` on input assignment `x`.
pub fn run(c: &Circuit, x: &[bool]) -> Result<StateVector> {
    run_with(c, x, &SimConfig::default())
}

pub fn run_with(c: &Circuit, x: &[bool], cfg: &SimConfig) -> Result<StateVector> {
    c.check()?;
    let n = c.num_qubits();
    if n > cfg.qubit_cap {
        return Err(Error::QubitCap {
            needed: n,
            cap: cfg.qubit_cap,
        });
    }
    let mut s = StateVector::basis(n, bits_to_index(&c.initial_bits(x)?) as usize);
    s.apply_layers(&c.layers);
    Ok(s)
}

/// Dense simulation from an arbitrary start state.
pub fn run_state(c: &Circuit, mut s: StateVector, cfg: &SimConfig) -> Result<StateVector> {
    c.check()?;
    if s.num_qubits() != c.num_qubits() {
        return Err(Error::DimensionMismatch {
            left: s.num_qubits(),
            right: c.num_qubits(),
        });
    }
    if s.num_qubits() > cfg.qubit_cap {
        return Err(Error::QubitCap {
            needed: s.num_qubits(),
            cap: cfg.qubit_cap,
        });
    }
    s.apply_layers(&c.layers);
    Ok(s)
}

/// Sparse simulation; handles up to 128 qubits as long as the support stays small.
pub fn run_sparse(c: &Circuit, x: &[bool]) -> Result<SparseState> {
    c.check()?;
    let mut s = SparseState::basis(c.num_qubits(), bits_to_index(&c.initial_bits(x)?));
    s.apply_layers(&c.layers);
    Ok(s)
}

/// Full unitary of an ancilla-free circuit whose inputs are all of its qubits,
/// in the input-ordered basis (column `x` is the image of input assignment `x`).
pub fn circuit_unitary(c: &Circuit) -> Result<CMatrix> {
    let n = c.num_qubits();
    if c.inputs.len() != n || n > 10 {
        return Err(Error::InvalidArgument(
            "circuit_unitary needs every qubit to be an input and at most 10 qubits".into(),
        ));
    }
    let dim = 1usize << n;
    let mut u = CMatrix::zeros(dim);
    for col in 0..dim {
        let out = run(c, &bits_of(col as u64, n))?;
        for (idx, &a) in out.amps().iter().enumerate() {
            // physical index -> input-ordered index
            let row = c
                .inputs
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &q)| acc | (((idx >> q) & 1) << i));
            u[(row, col)] = a;
        }
    }
    Ok(u)
}
