use super::{check_separable, forward_masks, spread, structure_select_1d};
use crate::circuit::{Circuit, Layer, Layout, MultiCz};
use crate::sim::{self, input_samples, partial_trace, CMatrix, Sampling, SimConfig, MAX_KEEP};
use crate::{Error, Result};
use serde::Serialize;

// Auto-computed empirical errors stay at desk scale.
const AUTO_EMPIRICAL_INPUTS: usize = 12;
const AUTO_EMPIRICAL_QUBITS: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErasedGate {
    pub layer: usize,
    pub support: Vec<usize>,
    /// Cones (or tracked inputs) the gate meets.
    pub weight: usize,
    /// Cones fully inside the support.
    pub contained: usize,
    /// 4·2^{-contained}
    pub erasure_bound: f64,
    /// 4·2^{-contained/2}, the bound that holds for pure output states.
    pub pure_state_bound: f64,
}

impl ErasedGate {
    fn new(layer: usize, support: Vec<usize>, weight: usize, contained: usize) -> Self {
        Self {
            layer,
            support,
            weight,
            contained,
            erasure_bound: 4.0 * 2f64.powi(-(contained as i32)),
            pure_state_bound: 4.0 * 2f64.powf(-(contained as f64) / 2.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictionReport {
    pub kind: &'static str,
    pub n: usize,
    pub d: usize,
    pub s: usize,
    pub epsilon: Option<f64>,
    pub surviving: Vec<usize>,
    /// Guaranteed lower bound on |surviving|.
    pub size_bound: usize,
    pub erased: Vec<ErasedGate>,
    /// Cumulative analytic error after each layer.
    pub layer_bounds: Vec<f64>,
    pub analytic_error_bound: f64,
    pub empirical_error: Option<f64>,
    pub separable: Option<bool>,
    /// max |E_x Tr_{I_d^c} ρ − 2^{-|I_d|} Id| entrywise.
    pub mixedness_deviation: Option<f64>,
    /// max over qubits of |backward cone ∩ I_d|, to compare against 2ds.
    pub max_backward_overlap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionOutcome {
    pub approx: Circuit,
    pub report: RestrictionReport,
}

pub fn erase_gate(c: &Circuit, layer: usize, gate: &MultiCz) -> Result<Circuit> {
    c.erase_cz(layer, &gate.support)
}

fn require_line(c: &Circuit) -> Result<()> {
    match c.layout {
        Layout::Line(_) => Ok(()),
        ref other => Err(Error::Precondition(format!("expected line layout, got {}", other.kind_name()))),
    }
}

/// ⌈log₂(n/ε)⌉
fn threshold(n: usize, epsilon: f64) -> usize {
    (n as f64 / epsilon).log2().ceil().max(1.0) as usize
}

/// Per layer: erase gates meeting at least s cones of the current set, then
/// keep a separable subset via the one-layer structure selection.
pub fn restriction_pipeline_1d(c: &Circuit, epsilon: f64) -> Result<RestrictionOutcome> {
    require_line(c)?;
    c.check()?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let n = c.inputs.len();
    if n == 0 {
        return Err(Error::Precondition("circuit has no inputs".into()));
    }
    // The structure selection needs s ≥ 3.
    let s = threshold(n, epsilon).max(3);
    let d = c.depth();

    let mut approx = Circuit {
        layers: Vec::with_capacity(c.layers.len()),
        ..c.clone()
    };
    let mut current: Vec<usize> = {
        let mut v = c.inputs.clone();
        v.sort_unstable();
        v
    };
    let mut erased = Vec::new();
    let mut layer_bounds = Vec::with_capacity(c.layers.len());
    let mut bound = 0.0;
    for (t, layer) in c.layers.iter().enumerate() {
        let cones = forward_masks(&approx, &current);
        let mut kept_layer = Layer {
            singles: layer.singles.clone(),
            czs: Vec::new(),
        };
        for g in &layer.czs {
            let m = g.mask();
            let weight = cones.iter().filter(|&&k| k & m != 0).count();
            if weight >= s {
                let contained = cones.iter().filter(|&&k| k & !m == 0).count();
                erased.push(ErasedGate::new(t, g.support.clone(), weight, contained));
            } else {
                kept_layer.czs.push(g.clone());
            }
        }
        current = structure_select_1d(&approx, &current, &kept_layer, s)?;
        approx.layers.push(kept_layer);
        if !layer.czs.is_empty() {
            bound += 16.0 * epsilon;
        }
        layer_bounds.push(bound);
    }

    let size_bound = n.div_ceil(s.pow(d as u32));
    if current.len() < size_bound {
        return Err(Error::Verification(format!(
            "kept {} inputs, below the guaranteed {size_bound}",
            current.len()
        )));
    }
    let separable = check_separable(&approx, &current)?.is_separable();
    if !separable {
        return Err(Error::Verification("pipeline output is not separable".into()));
    }
    let empirical_error = if n <= AUTO_EMPIRICAL_INPUTS && c.num_qubits() <= AUTO_EMPIRICAL_QUBITS {
        Some(empirical_error(c, &approx, Sampling::Exact)?)
    } else {
        None
    };
    Ok(RestrictionOutcome {
        approx,
        report: RestrictionReport {
            kind: "pipeline_1d",
            n,
            d,
            s,
            epsilon: Some(epsilon),
            surviving: current,
            size_bound,
            erased,
            layer_bounds,
            analytic_error_bound: 16.0 * d as f64 * epsilon,
            empirical_error,
            separable: Some(separable),
            mixedness_deviation: None,
            max_backward_overlap: None,
        },
    })
}

/// E_x ‖ρ_approx − ρ_c‖₁ over full pure output states.
pub fn empirical_error(c: &Circuit, approx: &Circuit, sampling: Sampling) -> Result<f64> {
    if c.inputs != approx.inputs || c.num_qubits() != approx.num_qubits() {
        return Err(Error::LayoutMismatch("circuits differ in inputs or size".into()));
    }
    let cfg = SimConfig::default();
    let xs = input_samples(c.inputs.len(), sampling)?;
    let mut total = 0.0;
    for x in &xs {
        let a = sim::run_with(c, x, &cfg)?;
        let b = sim::run_with(approx, x, &cfg)?;
        total += sim::pure_trace_distance(&a, &b)?;
    }
    Ok(total / xs.len() as f64)
}

fn contiguous_inputs(c: &Circuit) -> Result<(usize, usize)> {
    let mut v = c.inputs.clone();
    v.sort_unstable();
    match (v.first(), v.last()) {
        (Some(&lo), Some(&hi)) if hi - lo + 1 == v.len() => Ok((lo, hi + 1)),
        (None, _) => Err(Error::Precondition("circuit has no inputs".into())),
        _ => Err(Error::Precondition("inputs are not contiguous".into())),
    }
}

/// Contiguous-input restriction: erase gates with at least `s` qubits in the
/// tracked interval, then drop the interval qubits touched by straddling gates.
pub fn contiguous_restriction(c: &Circuit, s: usize) -> Result<RestrictionOutcome> {
    require_line(c)?;
    c.check()?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    let (mut lo, mut hi) = contiguous_inputs(c)?;
    let n = hi - lo;
    let d = c.depth();
    let interval = |lo: usize, hi: usize| -> u128 { (lo..hi).fold(0, |m, q| m | 1u128 << q) };

    let mut approx = Circuit {
        layers: Vec::with_capacity(c.layers.len()),
        ..c.clone()
    };
    let mut erased = Vec::new();
    let mut layer_bounds = Vec::new();
    let mut t = 0usize;
    for (idx, layer) in c.layers.iter().enumerate() {
        let it = interval(lo, hi);
        let mut kept = Layer {
            singles: layer.singles.clone(),
            czs: Vec::new(),
        };
        let (mut new_lo, mut new_hi) = (lo, hi);
        for g in &layer.czs {
            let m = g.mask();
            let inside = (m & it).count_ones() as usize;
            if inside >= s {
                erased.push(ErasedGate::new(idx, g.support.clone(), inside, inside));
                continue;
            }
            if inside > 0 && m & !it != 0 {
                let first = *g.support.first().expect("non-empty support");
                let last = *g.support.last().expect("non-empty support");
                if first < lo {
                    new_lo = new_lo.max(last + 1);
                } else {
                    new_hi = new_hi.min(first);
                }
            }
            kept.czs.push(g.clone());
        }
        lo = new_lo;
        hi = new_hi.max(lo);
        approx.layers.push(kept);
        if !layer.czs.is_empty() {
            t += 1;
        }
        layer_bounds.push(4.0 * t as f64 * n as f64 * 2f64.powf(-(s as f64) / 2.0));
    }
    let surviving: Vec<usize> = (lo..hi).collect();
    let size_bound = n.saturating_sub(2 * d * s);
    if surviving.len() < size_bound {
        return Err(Error::Verification(format!(
            "interval shrank to {}, below n − 2ds = {size_bound}",
            surviving.len()
        )));
    }

    let final_mask = interval(lo, hi);
    let max_backward_overlap = (0..approx.num_qubits())
        .map(|q| {
            let b = approx.layers.iter().rev().fold(1u128 << q, spread);
            (b & final_mask).count_ones() as usize
        })
        .max()
        .unwrap_or(0);

    let small = n <= AUTO_EMPIRICAL_INPUTS && c.num_qubits() <= AUTO_EMPIRICAL_QUBITS;
    let mixedness_deviation = if small && !surviving.is_empty() && surviving.len() <= MAX_KEEP {
        Some(mixedness_deviation(&approx, &surviving)?)
    } else {
        None
    };
    let empirical_error = if small {
        Some(output_function_distance(c, &approx, Sampling::Exact)?)
    } else {
        None
    };
    Ok(RestrictionOutcome {
        approx,
        report: RestrictionReport {
            kind: "contiguous",
            n,
            d,
            s,
            epsilon: None,
            surviving,
            size_bound,
            erased,
            analytic_error_bound: layer_bounds.last().copied().unwrap_or(0.0),
            layer_bounds,
            empirical_error,
            separable: None,
            mixedness_deviation,
            max_backward_overlap: Some(max_backward_overlap),
        },
    })
}

/// Entrywise distance of E_x Tr_{keep^c} ρ^x from the maximally mixed state on `keep`.
pub(crate) fn mixedness_deviation(c: &Circuit, keep: &[usize]) -> Result<f64> {
    let cfg = SimConfig::default();
    let xs = input_samples(c.inputs.len(), Sampling::Exact)?;
    let dim = 1usize << keep.len();
    let mut avg = CMatrix::zeros(dim);
    for x in &xs {
        let st = sim::run_with(c, x, &cfg)?;
        avg = avg.add(&partial_trace(&st, keep)?.matrix)?;
    }
    let avg = avg.scale(1.0 / xs.len() as f64);
    Ok(avg.max_abs_diff(&CMatrix::identity(dim).scale(1.0 / dim as f64)))
}

/// max over qubits q of ‖f_c^q − f_approx^q‖₂ with f^q(x) = Pr[q reads 1].
pub fn output_function_distance(c: &Circuit, approx: &Circuit, sampling: Sampling) -> Result<f64> {
    if c.inputs != approx.inputs || c.num_qubits() != approx.num_qubits() {
        return Err(Error::LayoutMismatch("circuits differ in inputs or size".into()));
    }
    let cfg = SimConfig::default();
    let xs = input_samples(c.inputs.len(), sampling)?;
    let nq = c.num_qubits();
    let mut sq = vec![0.0; nq];
    for x in &xs {
        let a = sim::run_with(c, x, &cfg)?;
        let b = sim::run_with(approx, x, &cfg)?;
        for (q, acc) in sq.iter_mut().enumerate() {
            let diff = a.prob_one(q) - b.prob_one(q);
            *acc += diff * diff;
        }
    }
    Ok(sq.iter().map(|v| (v / xs.len() as f64).sqrt()).fold(0.0, f64::max))
}
