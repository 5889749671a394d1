//! Exact depth-7d embedding of all-to-all circuits into an (n+1) × n lattice.
//!
//! Row 0 holds the original qubits (same ids); rows 1..=n are ancilla in |1⟩.
//! Each CZ gate of a layer gets its own row: its columns are swapped down,
//! the gate runs as one row-contiguous CZ over the |1⟩ bystanders, and the
//! columns are swapped back.

use crate::circuit::{Ancilla, Circuit, CircuitBuilder, Init, Layer, Layout, MultiCz, Toffoli};
use crate::{Error, Result};

/// CZ layers emitted per source CZ layer.
pub const DEPTH_FACTOR: usize = 7;

/// Row chosen for each CZ of a layer: sorted by leftmost support column, rows 1, 2, ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowAssignment {
    pub rows: Vec<(MultiCz, usize)>,
}

impl RowAssignment {
    pub fn for_layer(layer: &Layer, n: usize) -> Result<Self> {
        if layer.czs.len() > n {
            return Err(Error::InvalidArgument(format!(
                "layer has {} gates but only {n} ancilla rows",
                layer.czs.len()
            )));
        }
        let mut gates = layer.czs.clone();
        gates.sort_by_key(|g| g.support.first().copied());
        Ok(Self {
            rows: gates.into_iter().zip(1..).collect(),
        })
    }
}

fn lattice(n: usize) -> Layout {
    Layout::Lattice { rows: n + 1, cols: n }
}

/// CNOT(from → to) on one column as a single Toffoli controlled on the source
/// and every qubit strictly between; those must be |1⟩ when it runs.
pub fn long_range_cnot_gadget(n: usize, col: usize, from_row: usize, to_row: usize) -> Result<Vec<Layer>> {
    if from_row == to_row {
        return Err(Error::InvalidArgument("source and target rows are equal".into()));
    }
    if col >= n || from_row > n || to_row > n {
        return Err(Error::InvalidArgument("gadget coordinates outside the lattice".into()));
    }
    let mut b = CircuitBuilder::new(lattice(n));
    b.toffoli_layer(&[column_cnot(n, col, from_row, to_row)]);
    Ok(b.finish().layers)
}

fn column_cnot(n: usize, col: usize, from_row: usize, to_row: usize) -> Toffoli {
    let layout = lattice(n);
    let (lo, hi) = (from_row.min(to_row), from_row.max(to_row));
    Toffoli {
        controls: (lo..=hi).filter(|&r| r != to_row).map(|r| layout.id(r, col)).collect(),
        target: layout.id(to_row, col),
    }
}

/// Emits one source layer into `b`: singles on row 0, then 3 + 1 + 3 CZ layers.
fn emit_layer(b: &mut CircuitBuilder, layer: &Layer, n: usize) -> Result<()> {
    let layout = lattice(n);
    for g in &layer.singles {
        b.single(g.target, g.u);
    }
    if layer.czs.is_empty() {
        return Ok(());
    }
    let assignment = RowAssignment::for_layer(layer, n)?;
    let swaps: Vec<(usize, usize)> = assignment
        .rows
        .iter()
        .flat_map(|(g, row)| g.support.iter().map(move |&col| (col, *row)))
        .collect();
    let swap_phase = |b: &mut CircuitBuilder| {
        for down in [true, false, true] {
            let gates: Vec<Toffoli> = swaps
                .iter()
                .map(|&(col, row)| if down { column_cnot(n, col, 0, row) } else { column_cnot(n, col, row, 0) })
                .collect();
            b.toffoli_layer(&gates);
        }
    };
    swap_phase(b);
    b.cz_layer(assignment.rows.iter().map(|(g, row)| {
        let lo = *g.support.first().expect("validated CZ is nonempty");
        let hi = *g.support.last().expect("validated CZ is nonempty");
        (lo..=hi).map(|col| layout.id(*row, col)).collect::<Vec<_>>()
    }));
    swap_phase(b);
    Ok(())
}

/// Lattice fragment simulating one all-to-all layer.
pub fn embed_layer_2d(layer: &Layer, n: usize) -> Result<Vec<Layer>> {
    let mut b = CircuitBuilder::new(lattice(n));
    emit_layer(&mut b, layer, n)?;
    Ok(b.finish().layers)
}

/// Compiles an all-to-all circuit on n qubits to lattice(n+1, n) with depth 7d.
pub fn embed_circuit_2d(c: &Circuit) -> Result<Circuit> {
    let n = match c.layout {
        Layout::AllToAll(n) => n,
        other => {
            return Err(Error::LayoutMismatch(format!(
                "expected all_to_all, got {}",
                other.kind_name()
            )))
        }
    };
    c.check()?;
    let layout = lattice(n);
    let mut b = CircuitBuilder::new(layout).inputs(c.inputs.clone());
    for a in &c.ancilla {
        b.ancilla(a.q, a.init);
    }
    for q in n..layout.num_qubits() {
        b.ancilla(q, Init::One);
    }
    for layer in &c.layers {
        emit_layer(&mut b, layer, n)?;
    }
    let out = b.finish();
    debug_assert_eq!(out.depth(), DEPTH_FACTOR * c.depth());
    Ok(out)
}

/// The ancilla introduced by [`embed_circuit_2d`] (every qubit outside row 0).
pub fn lattice_ancilla(n: usize) -> Vec<Ancilla> {
    (n..n * (n + 1)).map(|q| Ancilla { q, init: Init::One }).collect()
}
