//! Seeded random circuit families for tests and experiments.

use crate::circuit::{mat, Circuit, Layer, Layout, MultiCz, SingleQubitGate};
use rand::seq::SliceRandom;
use rand::Rng;

fn random_singles<R: Rng + ?Sized>(rng: &mut R, qubits: usize) -> Vec<SingleQubitGate> {
    (0..qubits).map(|q| SingleQubitGate::new(q, mat::random_su2(rng))).collect()
}

/// Haar singles on every qubit, then a random set of disjoint (not necessarily
/// local) CZs; each of the `depth` layers has at least one CZ. A final singles
/// layer is appended. Every qubit is an input.
pub fn random_all_to_all<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> Circuit {
    let mut c = Circuit::new(Layout::AllToAll(n));
    c.inputs = (0..n).collect();
    for _ in 0..depth {
        let mut qubits: Vec<usize> = (0..n).collect();
        qubits.shuffle(rng);
        let mut czs = Vec::new();
        let mut rest = &qubits[..];
        while !rest.is_empty() {
            let size = rng.random_range(1..=rest.len());
            let (g, tail) = rest.split_at(size);
            if czs.is_empty() || rng.random_bool(0.7) {
                czs.push(MultiCz::new(g.to_vec()));
            }
            rest = tail;
        }
        c.layers.push(Layer {
            singles: random_singles(rng, n),
            czs,
        });
    }
    c.layers.push(Layer {
        singles: random_singles(rng, n),
        czs: vec![],
    });
    c
}

/// Random contiguous CZ intervals of length ≤ `max_support` on a line.
/// At least one gate per layer (when n ≥ 1).
pub fn random_line_czs<R: Rng + ?Sized>(rng: &mut R, n: usize, max_support: usize) -> Vec<MultiCz> {
    loop {
        let mut czs = Vec::new();
        let mut i = 0;
        while i < n {
            let len = rng.random_range(1..=max_support.max(1)).min(n - i);
            if len >= 2 && rng.random_bool(0.75) {
                czs.push(MultiCz::new((i..i + len).collect()));
            }
            i += len;
        }
        if !czs.is_empty() || n < 2 || max_support < 2 {
            return czs;
        }
    }
}

/// Line circuit with Haar singles before every CZ layer and at the end.
/// `inputs` lists the input qubits; the rest start in |0⟩.
pub fn random_line<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    inputs: Vec<usize>,
    depth: usize,
    max_support: usize,
) -> Circuit {
    let mut c = Circuit::new(Layout::Line(n));
    c.inputs = inputs;
    for _ in 0..depth {
        c.layers.push(Layer {
            singles: random_singles(rng, n),
            czs: random_line_czs(rng, n, max_support),
        });
    }
    c.layers.push(Layer {
        singles: random_singles(rng, n),
        czs: vec![],
    });
    c
}

/// Random circuit on any layout: CZ supports drawn from row or column
/// intervals for lattices, intervals for lines, arbitrary sets otherwise.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, layout: Layout, depth: usize, max_support: usize) -> Circuit {
    let n = layout.num_qubits();
    let mut c = Circuit::new(layout);
    c.inputs = (0..n).collect();
    for _ in 0..depth {
        let czs = match layout {
            Layout::Line(_) => random_line_czs(rng, n, max_support),
            Layout::AllToAll(_) => {
                let mut qubits: Vec<usize> = (0..n).collect();
                qubits.shuffle(rng);
                qubits
                    .chunks(rng.random_range(1..=max_support.max(1)))
                    .filter(|_| rng.random_bool(0.7))
                    .map(|g| MultiCz::new(g.to_vec()))
                    .collect()
            }
            Layout::Lattice { rows, cols } => {
                let mut czs: Vec<MultiCz> = Vec::new();
                let mut used = vec![false; n];
                for _ in 0..rows * cols {
                    let horizontal = rng.random_bool(0.5);
                    let (r, col) = (rng.random_range(0..rows), rng.random_range(0..cols));
                    let len = rng.random_range(1..=max_support.max(1));
                    let support: Vec<usize> = (0..len)
                        .map(|t| if horizontal { (r, col + t) } else { (r + t, col) })
                        .take_while(|&(rr, cc)| rr < rows && cc < cols)
                        .map(|(rr, cc)| layout.id(rr, cc))
                        .collect();
                    if support.len() >= 2 && support.iter().all(|&q| !used[q]) {
                        support.iter().for_each(|&q| used[q] = true);
                        czs.push(MultiCz::new(support));
                    }
                }
                czs
            }
        };
        c.layers.push(Layer {
            singles: random_singles(rng, n),
            czs,
        });
    }
    c
}
