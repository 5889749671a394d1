use super::{mat, Circuit, Layout, MultiCz};
use std::collections::HashSet;
use std::fmt;

pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub layer: Option<usize>,
    pub gate: Option<Vec<usize>>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.layer {
            write!(f, "layer {l}: ")?;
        }
        if let Some(g) = &self.gate {
            write!(f, "gate {g:?}: ")?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, layer: Option<usize>, gate: Option<Vec<usize>>, message: impl Into<String>) {
        self.violations.push(Violation {
            layer,
            gate,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Locality message for a support, or `None` if it is legal on `layout`.
pub(crate) fn locality_violation(layout: &Layout, support: &[usize]) -> Option<&'static str> {
    let contiguous = |v: &[usize]| v.windows(2).all(|w| w[1] == w[0] + 1);
    match *layout {
        Layout::AllToAll(_) => None,
        Layout::Line(_) => (!contiguous(support)).then_some("non-contiguous support on line"),
        Layout::Lattice { cols, .. } => {
            let rows: HashSet<usize> = support.iter().map(|q| q / cols).collect();
            let cols_set: HashSet<usize> = support.iter().map(|q| q % cols).collect();
            if rows.len() == 1 {
                (!contiguous(support)).then_some("non-contiguous support within row")
            } else if cols_set.len() == 1 {
                let col_rows: Vec<usize> = support.iter().map(|q| q / cols).collect();
                (!contiguous(&col_rows)).then_some("non-contiguous support within column")
            } else {
                Some("support spans neither a single row nor a single column")
            }
        }
    }
}

pub fn validate(c: &Circuit) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n = c.num_qubits();
    match c.layout {
        Layout::AllToAll(0) | Layout::Line(0) => r.push(None, None, "layout has zero qubits"),
        Layout::Lattice { rows, cols } if rows == 0 || cols == 0 => {
            r.push(None, None, "lattice dimensions must be positive")
        }
        _ => {}
    }
    if n > 128 {
        r.push(None, None, format!("{n} qubits exceeds the 128-qubit index limit"));
    }

    let mut seen = HashSet::new();
    for &q in &c.inputs {
        if q >= n {
            r.push(None, None, format!("input {q} out of range"));
        } else if !seen.insert(q) {
            r.push(None, None, format!("qubit {q} listed twice"));
        }
    }
    for a in &c.ancilla {
        if a.q >= n {
            r.push(None, None, format!("ancilla {} out of range", a.q));
        } else if !seen.insert(a.q) {
            r.push(None, None, format!("qubit {} listed twice (inputs and ancilla must be disjoint)", a.q));
        }
    }

    for (li, layer) in c.layers.iter().enumerate() {
        let mut targets = HashSet::new();
        for g in &layer.singles {
            let gate = Some(vec![g.target]);
            if g.target >= n {
                r.push(Some(li), gate, "single-qubit target out of range");
                continue;
            }
            if !targets.insert(g.target) {
                r.push(Some(li), gate.clone(), "two single-qubit gates on one qubit");
            }
            if !mat::is_unitary(&g.u, UNITARY_TOL) {
                r.push(Some(li), gate, "matrix is not unitary");
            }
        }
        let mut used = HashSet::new();
        for g in &layer.czs {
            check_cz(&mut r, c, li, g, &mut used);
        }
    }
    r
}

fn check_cz(r: &mut ValidationReport, c: &Circuit, li: usize, g: &MultiCz, used: &mut HashSet<usize>) {
    let gate = Some(g.support.clone());
    if g.support.is_empty() {
        r.push(Some(li), gate, "empty CZ support");
        return;
    }
    if g.support.windows(2).any(|w| w[0] >= w[1]) {
        r.push(Some(li), gate, "support not sorted and distinct");
        return;
    }
    if g.support.iter().any(|&q| q >= c.num_qubits()) {
        r.push(Some(li), gate, "support out of range");
        return;
    }
    if g.support.iter().any(|q| !used.insert(*q)) {
        r.push(Some(li), gate.clone(), "overlaps another CZ in the same layer");
    }
    if let Some(msg) = locality_violation(&c.layout, &g.support) {
        r.push(Some(li), gate, msg);
    }
}
