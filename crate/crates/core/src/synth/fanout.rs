use crate::circuit::{Circuit, CircuitBuilder, Init, Layout, Toffoli};
use crate::{Error, Result};

/// Blocks `(offset, size)` split at `head` = ⌈size/2⌉, grouped by recursion level.
fn split_levels(n: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let mut levels = Vec::new();
    let mut current = vec![(0usize, n)];
    while current.iter().any(|&(_, s)| s > 1) {
        let mut gates = Vec::new();
        let mut next = Vec::new();
        for (off, size) in current {
            if size < 2 {
                continue;
            }
            let head = size.div_ceil(2);
            gates.push((off, head, size));
            next.push((off, head));
            next.push((off + head, size - head));
        }
        levels.push(gates);
        current = next;
    }
    levels
}

/// Each level: X on the right half's first qubit, then a Toffoli controlled on
/// the whole left half (value b followed by |1⟩s) copies b into it.
fn fanout_layers(b: &mut CircuitBuilder, n: usize) -> Result<()> {
    for level in split_levels(n) {
        let mut gates = Vec::with_capacity(level.len());
        for (off, head, _) in level {
            b.x(off + head);
            gates.push(Toffoli::new((off..off + head).collect(), off + head)?);
        }
        b.toffoli_layer(&gates);
    }
    Ok(())
}

/// F_k on a line of 2^k qubits: maps |b, 1^{2^k−1}⟩ to |b^{2^k}⟩ in depth k.
/// Qubit 0 is the input; the rest are ancilla prepared in |1⟩.
pub fn restricted_fanout(k: usize) -> Result<Circuit> {
    if !(1..=7).contains(&k) {
        return Err(Error::InvalidArgument(format!("fan-out level k={k} must be in 1..=7")));
    }
    let n = 1usize << k;
    let mut b = CircuitBuilder::new(Layout::Line(n)).inputs(vec![0]);
    for q in 1..n {
        b.ancilla(q, Init::One);
    }
    fanout_layers(&mut b, n)?;
    Ok(b.finish())
}

/// (|0ⁿ⟩ + |1ⁿ⟩)/√2 on a line of n = 2^k qubits, depth k, no ancilla.
pub fn cat_1d(n: usize) -> Result<Circuit> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "cat_1d needs a power of two ≥ 2, got {n} (see cat_1d_general)"
        )));
    }
    cat_1d_general(n)
}

/// Cat state for any n ≥ 1 using uneven splits; depth ⌈log₂ n⌉.
pub fn cat_1d_general(n: usize) -> Result<Circuit> {
    if !(1..=128).contains(&n) {
        return Err(Error::InvalidArgument(format!("cat size {n} must be in 1..=128")));
    }
    let mut b = CircuitBuilder::new(Layout::Line(n));
    b.h(0);
    for q in 1..n {
        b.x(q);
    }
    fanout_layers(&mut b, n)?;
    Ok(b.finish())
}
