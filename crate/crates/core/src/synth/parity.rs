use crate::circuit::{Circuit, CircuitBuilder, Init, Layer, Layout, MultiCz, SingleQubitGate, Toffoli};
use crate::{Error, Result};
use std::collections::{BTreeMap, HashSet};

/// U_⊕ on a line of n+1 qubits with depth ≤ n and no ancilla.
///
/// The target b sits at position m = ⌈n/2⌉. Each side runs a prefix CNOT chain
/// toward b, then restores its qubits in reverse. The right side is delayed by
/// one layer when both sides would reach b together.
/// Inputs are listed as `[x_0, …, x_{n−1}, b]`.
pub fn parity_line(n: usize) -> Result<Circuit> {
    if !(1..=127).contains(&n) {
        return Err(Error::InvalidArgument(format!("parity_line needs 1 ≤ n ≤ 127, got {n}")));
    }
    let m = n.div_ceil(2);
    let r = n - m;
    let mut inputs: Vec<usize> = (0..m).chain(m + 1..=n).collect();
    inputs.push(m);

    let mut schedule: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    // left side, local index = qubit
    for t in 1..=m {
        schedule.entry(t).or_default().push((t - 1, t));
    }
    for j in 1..m {
        schedule.entry(m + j).or_default().push((m - 1 - j, m - j));
    }
    // right side, local index i ↦ qubit n − i
    let delay = usize::from(r == m);
    for t in 1..=r {
        schedule.entry(t + delay).or_default().push((n - t + 1, n - t));
    }
    for j in 1..r {
        schedule.entry(r + j + delay).or_default().push((m + 1 + j, m + j));
    }

    let mut b = CircuitBuilder::new(Layout::Line(n + 1)).inputs(inputs);
    for pairs in schedule.values() {
        b.cnot_layer(pairs);
    }
    Ok(b.finish())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Width2Parity {
    pub circuit: Circuit,
    /// c with depth ≤ c·log₂ n for every n ≥ 2.
    pub depth_constant: f64,
}

/// Width-2 U_⊕ of depth 14(⌈log₂ n⌉ − 1) + 3 ≤ 17·log₂ n.
///
/// Row 0 holds x at columns 0..n and b at column n; row 1 is |1⟩ ancilla.
/// A CNOT tree folds x into column n−1, one CNOT moves the result into b, then
/// the tree is undone. Non-adjacent tree CNOTs swap both endpoints into row 1,
/// run a row-1 Toffoli across the |1⟩ gap, and swap back.
pub fn parity_width2(n: usize) -> Result<Width2Parity> {
    if !(2..=63).contains(&n) {
        return Err(Error::InvalidArgument(format!("parity_width2 needs 2 ≤ n ≤ 63, got {n}")));
    }
    let layout = Layout::Lattice { rows: 2, cols: n + 1 };
    let top = |c: usize| layout.id(0, c);
    let bot = |c: usize| layout.id(1, c);

    let mut levels: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    while active.len() > 1 {
        let mut pairs = Vec::new();
        let mut keep = Vec::new();
        let mut i = active.len();
        while i >= 2 {
            pairs.push((active[i - 2], active[i - 1]));
            keep.push(active[i - 1]);
            i -= 2;
        }
        if i == 1 {
            keep.push(active[0]);
        }
        keep.sort_unstable();
        pairs.reverse();
        levels.push(pairs);
        active = keep;
    }

    let mut b = CircuitBuilder::new(layout).inputs((0..=n).map(top).collect());
    for c in 0..=n {
        b.ancilla(bot(c), Init::One);
    }
    let tree_level = |b: &mut CircuitBuilder, pairs: &[(usize, usize)]| {
        let (near, far): (Vec<_>, Vec<_>) = pairs.iter().partition(|(s, t)| t - s == 1);
        let swap_cols: Vec<usize> = far.iter().flat_map(|&&(s, t)| [s, t]).collect();
        let swap = |b: &mut CircuitBuilder| {
            for dir in [true, false, true] {
                let cnots: Vec<(usize, usize)> = swap_cols
                    .iter()
                    .map(|&c| if dir { (top(c), bot(c)) } else { (bot(c), top(c)) })
                    .collect();
                b.cnot_layer(&cnots);
            }
        };
        swap(b);
        let mut gates: Vec<Toffoli> = near
            .iter()
            .map(|&&(s, t)| Toffoli { controls: vec![top(s)], target: top(t) })
            .collect();
        gates.extend(far.iter().map(|&&(s, t)| Toffoli {
            controls: (s..t).map(bot).collect(),
            target: bot(t),
        }));
        b.toffoli_layer(&gates);
        swap(b);
    };
    for pairs in &levels {
        tree_level(&mut b, pairs);
    }
    b.cnot_layer(&[(top(n - 1), top(n))]);
    for pairs in levels.iter().rev() {
        tree_level(&mut b, pairs);
    }
    Ok(Width2Parity {
        circuit: b.finish(),
        depth_constant: 17.0,
    })
}

/// Qubit in the base's coordinates → qubit in the enlarged lattice.
fn remap_layers(layers: &[Layer], map: &dyn Fn(usize) -> usize, stretch: &dyn Fn(&[usize]) -> Vec<usize>) -> Vec<Layer> {
    layers
        .iter()
        .map(|l| Layer {
            singles: l.singles.iter().map(|g| SingleQubitGate::new(map(g.target), g.u)).collect(),
            czs: l.czs.iter().map(|g| MultiCz::new(stretch(&g.support))).collect(),
        })
        .collect()
}

fn lattice_dims(c: &Circuit) -> Result<(usize, usize)> {
    match c.layout {
        Layout::Lattice { rows, cols } => Ok((rows, cols)),
        Layout::Line(n) => Ok((1, n)),
        Layout::AllToAll(_) => Err(Error::Precondition("base must use a line or lattice layout".into())),
    }
}

/// Recursive thin-lattice parity on n = m^k inputs from a base U_⊕ circuit on
/// m inputs (inputs listed as `[x…, b]`; a line base is read as one lattice row).
///
/// Level j places m copies of level j−1 side by side, copies each block's
/// output bit straight down a column of |1⟩ qubits into a fresh base copy, and
/// runs that copy. The base is stretched by a monotone column map so input i
/// lands under block i's output; qubits skipped by the map are idle |1⟩ and
/// CZ supports extend over them. Depth is k·d + (k−1). Block outputs and their
/// copies are left holding intermediate parities.
pub fn parity_recursive_2d(n: usize, base: &Circuit) -> Result<Circuit> {
    base.check()?;
    let m = base
        .inputs
        .len()
        .checked_sub(1)
        .filter(|&m| m >= 2)
        .ok_or_else(|| Error::Precondition("base needs at least two x inputs plus b".into()))?;
    let mut k = 0;
    let mut size = 1usize;
    while size < n {
        size = size
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidArgument("n too large".into()))?;
        k += 1;
    }
    if size != n || k == 0 {
        return Err(Error::InvalidArgument(format!("n={n} is not a positive power of m={m}")));
    }

    let (base_rows, base_cols) = lattice_dims(base)?;
    let base_layout = Layout::Lattice { rows: base_rows, cols: base_cols };
    let base_coord = |q: usize| base_layout.coord(q);
    // input qubits of the base must sit under nothing but |1⟩ ancilla
    for &q in &base.inputs[..m] {
        let (r, c) = base_coord(q);
        for above in 0..r {
            if base.init_of(base_layout.id(above, c)) != Init::One
                || base.inputs.contains(&base_layout.id(above, c))
            {
                return Err(Error::Precondition(format!(
                    "base input {q} has a non-|1⟩ qubit above it in its column"
                )));
            }
        }
    }
    let base_cols_of_inputs: Vec<usize> = base.inputs[..m].iter().map(|&q| base_coord(q).1).collect();
    if base_cols_of_inputs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("base inputs must occupy strictly increasing columns".into()));
    }

    let mut block = Circuit {
        layout: base_layout,
        ..base.clone()
    };
    for _ in 1..k {
        block = recursive_level(&block, base, m)?;
    }
    Ok(block)
}

fn recursive_level(block: &Circuit, base: &Circuit, m: usize) -> Result<Circuit> {
    let (h, w) = lattice_dims(block)?;
    let (br, bc) = lattice_dims(base)?;
    let block_layout = Layout::Lattice { rows: h, cols: w };
    let base_layout = Layout::Lattice { rows: br, cols: bc };
    let out_q = *block.inputs.last().expect("block has b");
    let (out_r, out_c) = block_layout.coord(out_q);
    for r in out_r + 1..h {
        let q = block_layout.id(r, out_c);
        if block.init_of(q) != Init::One || block.inputs.contains(&q) {
            return Err(Error::Precondition(format!(
                "block output column has non-|1⟩ qubit at row {r}"
            )));
        }
    }

    // monotone base column map: input i → block i's output column
    let input_cols: Vec<usize> = base.inputs[..m].iter().map(|&q| base_layout.coord(q).1).collect();
    let mut phi = vec![0usize; bc];
    let mut next = 0usize;
    for (c, slot) in phi.iter_mut().enumerate() {
        *slot = match input_cols.iter().position(|&ic| ic == c) {
            Some(i) => {
                let target = i * w + out_c;
                if target < next {
                    return Err(Error::Precondition("base columns cannot be mapped monotonically".into()));
                }
                target
            }
            None => next,
        };
        next = *slot + 1;
    }
    let width = (m * w).max(next);
    let layout = Layout::Lattice { rows: h + br, cols: width };
    let block_map = |j: usize| {
        move |q: usize| {
            let (r, c) = block_layout.coord(q);
            layout.id(r, c + j * w)
        }
    };
    let base_map = |q: usize| {
        let (r, c) = base_layout.coord(q);
        layout.id(h + r, phi[c])
    };
    // Row supports stretch to the full mapped interval; column supports map pointwise.
    let base_stretch = |support: &[usize]| -> Vec<usize> {
        let mapped: Vec<usize> = support.iter().map(|&q| base_map(q)).collect();
        let rows: HashSet<usize> = mapped.iter().map(|&q| layout.coord(q).0).collect();
        if rows.len() == 1 && mapped.len() > 1 {
            let lo = *mapped.iter().min().unwrap();
            let hi = *mapped.iter().max().unwrap();
            (lo..=hi).collect()
        } else {
            mapped
        }
    };

    let mut inputs = Vec::with_capacity(m * (block.inputs.len() - 1) + 1);
    for j in 0..m {
        let map = block_map(j);
        inputs.extend(block.inputs[..block.inputs.len() - 1].iter().map(|&q| map(q)));
    }
    inputs.push(base_map(*base.inputs.last().unwrap()));

    let mut b = CircuitBuilder::new(layout).inputs(inputs.clone());
    let mut listed: HashSet<usize> = inputs.iter().copied().collect();
    let mut declare = |b: &mut CircuitBuilder, q: usize, init: Init| {
        if listed.insert(q) {
            b.ancilla(q, init);
        }
    };
    for j in 0..m {
        let map = block_map(j);
        for a in &block.ancilla {
            declare(&mut b, map(a.q), a.init);
        }
        declare(&mut b, map(out_q), Init::Zero);
        for q in 0..h * w {
            declare(&mut b, map(q), Init::One);
        }
    }
    for q in 0..br * bc {
        declare(&mut b, base_map(q), base.init_of(q));
    }
    for q in 0..layout.num_qubits() {
        declare(&mut b, q, Init::One);
    }

    // all blocks run in lockstep
    let mut merged: Vec<Layer> = vec![Layer::default(); block.layers.len()];
    for j in 0..m {
        let map = block_map(j);
        let mapped = remap_layers(&block.layers, &map, &|s: &[usize]| s.iter().map(|&q| map(q)).collect());
        for (dst, src) in merged.iter_mut().zip(mapped) {
            dst.singles.extend(src.singles);
            dst.czs.extend(src.czs);
        }
    }
    b.append_layers(&merged);

    let copies: Vec<Toffoli> = (0..m)
        .map(|j| {
            let dst = base_map(base.inputs[j]);
            let (dst_r, col) = layout.coord(dst);
            debug_assert_eq!(layout.id(out_r, col), block_map(j)(out_q));
            Toffoli {
                controls: (out_r..dst_r).map(|r| layout.id(r, col)).collect(),
                target: dst,
            }
        })
        .collect();
    b.toffoli_layer(&copies);

    b.append_layers(&remap_layers(&base.layers, &base_map, &base_stretch));
    let out = b.finish();
    out.check()?;
    Ok(out)
}
