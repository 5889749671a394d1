use super::{check_separable, forward_masks, Verdict};
use crate::circuit::{Circuit, Layer, Layout};
use crate::{Error, Result};
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Simple undirected graph on labelled vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    fn adjacency(&self) -> Result<BTreeMap<usize, BTreeSet<usize>>> {
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for &(a, b) in &self.edges {
            if a == b {
                return Err(Error::Precondition(format!("self-loop at vertex {a}")));
            }
            for (u, v) in [(a, b), (b, a)] {
                adj.get_mut(&u)
                    .ok_or_else(|| Error::InvalidArgument(format!("edge endpoint {u} is not a vertex")))?
                    .insert(v);
            }
        }
        Ok(adj)
    }

    fn components(adj: &BTreeMap<usize, BTreeSet<usize>>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in adj.keys() {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in &adj[&u] {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Independent set of size at least ⌈|V|/2⌉ in a forest of paths.
///
/// Each path is walked from its lowest-id endpoint, keeping every other vertex.
pub fn independent_set_deg2(g: &Graph) -> Result<Vec<usize>> {
    let adj = g.adjacency()?;
    if let Some((v, nb)) = adj.iter().find(|(_, nb)| nb.len() > 2) {
        return Err(Error::Precondition(format!("vertex {v} has degree {}", nb.len())));
    }
    let mut keep = Vec::new();
    for comp in Graph::components(&adj) {
        let edges: usize = comp.iter().map(|v| adj[v].len()).sum::<usize>() / 2;
        if edges >= comp.len() {
            return Err(Error::Precondition(format!("cycle through vertex {}", comp[0])));
        }
        let start = *comp.iter().find(|v| adj[*v].len() <= 1).expect("paths have endpoints");
        let (mut prev, mut cur, mut pos) = (usize::MAX, start, 0usize);
        loop {
            if pos % 2 == 0 {
                keep.push(cur);
            }
            match adj[&cur].iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                    pos += 1;
                }
                None => break,
            }
        }
    }
    keep.sort_unstable();
    Ok(keep)
}

// Lowest remaining degree first, ties by id.
fn greedy_independent_set(g: &Graph) -> Result<Vec<usize>> {
    let mut adj = g.adjacency()?;
    let mut keep = Vec::new();
    while let Some(v) = adj.iter().min_by_key(|(v, nb)| (nb.len(), **v)).map(|(v, _)| *v) {
        keep.push(v);
        let nb = adj.remove(&v).unwrap_or_default();
        for w in nb {
            if let Some(wn) = adj.remove(&w) {
                for x in wn {
                    if let Some(s) = adj.get_mut(&x) {
                        s.remove(&w);
                    }
                }
            }
        }
    }
    keep.sort_unstable();
    Ok(keep)
}

#[derive(Clone, Copy)]
struct Cone {
    origin: usize,
    mask: u128,
}

fn graph_of(cones: &[Cone], gates: &[u128]) -> Graph {
    let mut edges = BTreeSet::new();
    for &g in gates {
        let hit: Vec<usize> = cones.iter().filter(|c| c.mask & g != 0).map(|c| c.origin).collect();
        for (i, &a) in hit.iter().enumerate() {
            for &b in &hit[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    Graph {
        vertices: cones.iter().map(|c| c.origin).collect(),
        edges: edges.into_iter().collect(),
    }
}

// A₁/A₂/A₃ selection over disjoint cones against one layer's gates.
// Returns the kept origins and whether the A₂ graph needed the greedy fallback.
fn select_against(cones: &[Cone], gates: &[u128], allow_fallback: bool) -> Result<(Vec<usize>, bool)> {
    let mut keep = Vec::new();
    let mut good_hit = vec![false; cones.len()];
    for &g in gates {
        let contained = cones.iter().filter(|c| c.mask & !g == 0).map(|c| c.origin).min();
        if let Some(q) = contained {
            keep.push(q);
            for (i, c) in cones.iter().enumerate() {
                good_hit[i] |= c.mask & g != 0;
            }
        }
    }
    let mut a2 = Vec::new();
    for (i, c) in cones.iter().enumerate() {
        if good_hit[i] {
            continue;
        }
        if gates.iter().all(|&g| g & c.mask == 0) {
            keep.push(c.origin);
        } else {
            a2.push(*c);
        }
    }
    let g = graph_of(&a2, gates);
    let mut fallback = false;
    let indep = match independent_set_deg2(&g) {
        Ok(s) => s,
        Err(_) if allow_fallback => {
            fallback = true;
            greedy_independent_set(&g)?
        }
        Err(e) => return Err(e),
    };
    keep.extend(indep);
    keep.sort_unstable();
    Ok((keep, fallback))
}

fn layer_masks(layer: &Layer) -> Vec<u128> {
    layer.czs.iter().map(|g| g.mask()).collect()
}

fn cones_of(c: &Circuit, set: &[usize]) -> Vec<Cone> {
    set.iter()
        .zip(forward_masks(c, set))
        .map(|(&origin, mask)| Cone { origin, mask })
        .collect()
}

fn require_separable(c: &Circuit, set: &[usize]) -> Result<()> {
    match check_separable(c, set)?.verdict {
        Verdict::Separable => Ok(()),
        Verdict::Witness(i, j) => Err(Error::Precondition(format!(
            "circuit is not separable on the given set: cones of {i} and {j} intersect"
        ))),
    }
}

fn certify(c: &Circuit, layer: &Layer, kept: &[usize]) -> Result<()> {
    let mut d = c.clone();
    d.layers.push(layer.clone());
    match check_separable(&d, kept)?.verdict {
        Verdict::Separable => Ok(()),
        Verdict::Witness(i, j) => Err(Error::Verification(format!(
            "selection is not separable after the layer: cones of {i} and {j} intersect"
        ))),
    }
}

fn sorted_set(set: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = set.iter().copied().collect();
    s.into_iter().collect()
}

/// One-layer structure selection: keeps S ⊆ I with L·c S-separable and
/// |S| ≥ ⌈|I|/s⌉.
pub fn structure_select_1d(c: &Circuit, set: &[usize], layer: &Layer, s: usize) -> Result<Vec<usize>> {
    if s < 3 {
        return Err(Error::Precondition(format!("s = {s} is below 3")));
    }
    let set = sorted_set(set);
    require_separable(c, &set)?;
    let cones = cones_of(c, &set);
    let gates = layer_masks(layer);
    for (g, gate) in gates.iter().zip(&layer.czs) {
        let w = cones.iter().filter(|c| c.mask & g != 0).count();
        if w > s {
            return Err(Error::Precondition(format!(
                "gate {:?} has weight {w} > s = {s}",
                gate.support
            )));
        }
    }
    let (kept, _) = select_against(&cones, &gates, false)?;
    certify(c, layer, &kept)?;
    Ok(kept)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Width2Selection {
    pub kept: Vec<usize>,
    /// ⌈|I|/(8s²)⌉
    pub bound: usize,
    /// Set when an intersection graph was not a path forest and a greedy
    /// independent set was used instead.
    pub fallback: bool,
}

/// Width-2 lattice selection: row 0 gates, then row 1 gates, then column gates.
pub fn width2_structure_select(c: &Circuit, set: &[usize], layer: &Layer, s: usize) -> Result<Width2Selection> {
    let cols = match c.layout {
        Layout::Lattice { rows: 2, cols } => cols,
        ref other => {
            return Err(Error::Precondition(format!(
                "width-2 selection needs a 2-row lattice, got {}",
                other.kind_name()
            )))
        }
    };
    if s < 3 {
        return Err(Error::Precondition(format!("s = {s} is below 3")));
    }
    let set = sorted_set(set);
    require_separable(c, &set)?;
    let row_mask = |r: usize| -> u128 { (0..cols).fold(0, |m, col| m | 1u128 << (r * cols + col)) };
    let cones = cones_of(c, &set);
    let gates = layer_masks(layer);
    for g in &gates {
        let w = cones.iter().filter(|c| c.mask & g != 0).count();
        if w > s {
            return Err(Error::Precondition(format!("gate weight {w} > s = {s}")));
        }
    }

    let mut current = cones;
    let mut fallback = false;
    for r in 0..2 {
        let rm = row_mask(r);
        let phase: Vec<u128> = gates.iter().copied().filter(|g| g & !rm == 0 && g.count_ones() > 1).collect();
        let (touching, mut next): (Vec<Cone>, Vec<Cone>) = current.iter().partition(|c| c.mask & rm != 0);
        let (in_row, spanning): (Vec<Cone>, Vec<Cone>) = touching.iter().partition(|c| c.mask & !rm == 0);

        let (sel_in, fb_in) = select_against(&in_row, &phase, true)?;
        let g2 = graph_of(&spanning, &phase);
        let (sel_span, fb_span) = match independent_set_deg2(&g2) {
            Ok(v) => (v, false),
            Err(_) => (greedy_independent_set(&g2)?, true),
        };
        let (chosen, fb) = if sel_in.len() >= sel_span.len() {
            (sel_in, fb_in)
        } else {
            (sel_span, fb_span)
        };
        fallback |= fb;
        next.extend(touching.iter().filter(|c| chosen.binary_search(&c.origin).is_ok()));
        current = grow(next, &phase);
    }

    let (r0, r1) = (row_mask(0), row_mask(1));
    let col_gates: Vec<u128> = gates.iter().copied().filter(|g| g & r0 != 0 && g & r1 != 0).collect();
    let g = graph_of(&current, &col_gates);
    let (kept_cols, fb) = bipartite_larger_classes(&g)?;
    fallback |= fb;
    current.retain(|c| kept_cols.binary_search(&c.origin).is_ok());

    let mut kept: Vec<usize> = current.iter().map(|c| c.origin).collect();
    kept.sort_unstable();
    certify(c, layer, &kept)?;
    Ok(Width2Selection {
        kept,
        bound: set.len().div_ceil(8 * s * s),
        fallback,
    })
}

fn grow(cones: Vec<Cone>, gates: &[u128]) -> Vec<Cone> {
    cones
        .into_iter()
        .map(|c| Cone {
            origin: c.origin,
            mask: gates.iter().filter(|&&g| g & c.mask != 0).fold(c.mask, |m, g| m | g),
        })
        .collect()
}

// Larger colour class of each component; odd cycles fall back to greedy.
fn bipartite_larger_classes(g: &Graph) -> Result<(Vec<usize>, bool)> {
    let adj = g.adjacency()?;
    let mut keep = Vec::new();
    let mut fallback = false;
    for comp in Graph::components(&adj) {
        let mut colour: BTreeMap<usize, bool> = BTreeMap::new();
        colour.insert(comp[0], false);
        let mut stack = vec![comp[0]];
        let mut ok = true;
        while let Some(u) = stack.pop() {
            let cu = colour[&u];
            for &w in &adj[&u] {
                match colour.get(&w) {
                    Some(&cw) if cw == cu => ok = false,
                    Some(_) => {}
                    None => {
                        colour.insert(w, !cu);
                        stack.push(w);
                    }
                }
            }
        }
        if ok {
            let (a, b): (Vec<usize>, Vec<usize>) = comp.iter().partition(|v| !colour[*v]);
            keep.extend(if a.len() >= b.len() { a } else { b });
        } else {
            fallback = true;
            let sub = Graph {
                vertices: comp.clone(),
                edges: g.edges.iter().copied().filter(|(a, _)| comp.binary_search(a).is_ok()).collect(),
            };
            keep.extend(greedy_independent_set(&sub)?);
        }
    }
    keep.sort_unstable();
    Ok((keep, fallback))
}

/// Every other element of sorted `set` (positions 0, 2, 4, ...), with
/// pairwise-disjoint backward cones verified.
pub fn backward_disjoint_select(c: &Circuit, set: &[usize]) -> Result<Vec<usize>> {
    if !matches!(c.layout, Layout::Line(_)) {
        return Err(Error::Precondition(format!("expected line layout, got {}", c.layout.kind_name())));
    }
    let set = sorted_set(set);
    require_separable(c, &set)?;
    let picked: Vec<usize> = set.iter().copied().step_by(2).collect();
    let masks: Vec<u128> = picked
        .iter()
        .map(|&q| c.layers.iter().rev().fold(1u128 << q, super::spread))
        .collect();
    if let Some(((i, _), (j, _))) = picked.iter().zip(&masks).tuple_combinations().find(|((_, a), (_, b))| *a & *b != 0) {
        return Err(Error::Verification(format!("backward cones of {i} and {j} intersect")));
    }
    Ok(picked)
}
