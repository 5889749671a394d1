use super::bounds::{contiguous_parity_bound, majority_bound, parity_bound, BoundKind, BoundReport};
use super::{bits_to_u64, majority, parity};
use crate::circuit::{Circuit, CircuitBuilder, Layout};
use crate::cone::{backward_disjoint_select, backward_lightcone, restriction_pipeline_1d};
use crate::families::random_line;
use crate::sim::{self, avg_success, circuit_unitary, input_samples, tv_distance, CMatrix, Sampling, SimConfig};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

const EXACT_INPUTS: usize = 12;
const MC_SAMPLES: usize = 4096;

fn sampling_for(n: usize, seed: u64) -> Sampling {
    if n <= EXACT_INPUTS {
        Sampling::Exact
    } else {
        Sampling::MonteCarlo {
            samples: MC_SAMPLES,
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Parity,
    Majority,
}

impl Target {
    pub fn eval(self, x: &[bool]) -> bool {
        let m = bits_to_u64(x);
        match self {
            Target::Parity => parity(m),
            Target::Majority => majority(x.len())(m),
        }
    }
}

/// Average success of `output` against `target`, compared with the analytic
/// right-hand side selected by `kind`.
pub fn bound_experiment(
    c: &Circuit,
    output: usize,
    target: Target,
    kind: BoundKind,
    seed: u64,
) -> Result<BoundReport> {
    let n = c.inputs.len();
    // Depth-0 circuits are depth-1 circuits for the bound.
    let d = c.depth().max(1);
    let analytic = match kind {
        BoundKind::Parity => parity_bound(n, d),
        BoundKind::ContiguousParity => contiguous_parity_bound(n, d),
        BoundKind::Majority => majority_bound(n, d),
        other => {
            return Err(Error::InvalidArgument(format!(
                "{} is not a success-probability bound",
                other.name()
            )))
        }
    };
    let f = move |x: &[bool]| target.eval(x);
    let prof = avg_success(c, &f, output, sampling_for(n, seed), &SimConfig::default())?;
    Ok(BoundReport::new(kind, n, c.depth(), analytic, prof.average))
}

fn same_shape(c: &Circuit, approx: &Circuit) -> Result<()> {
    if c.inputs != approx.inputs || c.num_qubits() != approx.num_qubits() {
        return Err(Error::LayoutMismatch("circuits differ in inputs or size".into()));
    }
    Ok(())
}

/// E_x TV(output distribution of c, of approx) on `outputs`, against 8dε.
pub fn tv_gap(c: &Circuit, approx: &Circuit, outputs: &[usize], epsilon: f64) -> Result<BoundReport> {
    same_shape(c, approx)?;
    if outputs.is_empty() || outputs.iter().any(|&q| q >= c.num_qubits()) {
        return Err(Error::InvalidArgument(format!("bad output set {outputs:?}")));
    }
    let cfg = SimConfig::default();
    let xs = input_samples(c.inputs.len(), sampling_for(c.inputs.len(), 0))?;
    let mut total = 0.0;
    for x in &xs {
        let p = sim::run_with(c, x, &cfg)?.marginal(outputs);
        let q = sim::run_with(approx, x, &cfg)?.marginal(outputs);
        total += tv_distance(&p, &q)?;
    }
    let d = c.depth();
    Ok(BoundReport::new(
        BoundKind::TvGap,
        c.inputs.len(),
        d,
        8.0 * d as f64 * epsilon,
        total / xs.len() as f64,
    )
    .with_epsilon(epsilon))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseGap {
    /// Diagonal of D.
    pub phases: Vec<Complex64>,
    /// ‖U − V·D‖_F² / dim
    pub gap: f64,
}

/// D takes the phases of diag(V†U); zero diagonal entries get phase 1.
pub fn unitary_phase_gap(u: &CMatrix, v: &CMatrix) -> Result<PhaseGap> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    if u.dim() > 1 << 10 {
        return Err(Error::InvalidArgument(format!("dimension {} exceeds 1024", u.dim())));
    }
    if !u.is_unitary(1e-9) || !v.is_unitary(1e-9) {
        return Err(Error::NotUnitary);
    }
    let w = v.dagger().matmul(u)?;
    let dim = u.dim();
    let phases: Vec<Complex64> = (0..dim)
        .map(|i| {
            let z = w[(i, i)];
            if z.norm() <= 1e-12 {
                Complex64::new(1.0, 0.0)
            } else {
                z / z.norm()
            }
        })
        .collect();
    let mut vd = v.clone();
    for j in 0..dim {
        for i in 0..dim {
            vd[(i, j)] = v[(i, j)] * phases[j];
        }
    }
    let gap = u.sub(&vd)?.frobenius_sqr() / dim as f64;
    Ok(PhaseGap { phases, gap })
}

/// Phase gap between the unitaries of two ancilla-free circuits, against 16dε.
pub fn unitary_gap(c: &Circuit, approx: &Circuit, epsilon: f64) -> Result<BoundReport> {
    same_shape(c, approx)?;
    let g = unitary_phase_gap(&circuit_unitary(c)?, &circuit_unitary(approx)?)?;
    let d = c.depth();
    Ok(
        BoundReport::new(BoundKind::UnitaryGap, c.inputs.len(), d, 16.0 * d as f64 * epsilon, g.gap)
            .with_epsilon(epsilon),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NekomataReport {
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
    /// Inputs with disjoint backward cones in the restricted circuit.
    pub t: Vec<usize>,
    /// E_x[Tr(Π_x^I ρ^x)·Tr(Π_x̄^I ρ^x)]
    pub product_quantity: f64,
    /// The same product on T alone for the restricted circuit; at most 4^{-|T|}.
    pub restricted_t_product: f64,
    /// 4^{-|T|} + 32dε
    pub analytic: f64,
    /// 1/8 − 2^{−2|T|−1} − 16dε
    pub distance_lower_bound: f64,
    /// (1/4 − Q)/2, the bound on E_x‖ρ^x − σ^x‖₁ implied by the measured Q.
    pub q_implied_lower_bound: f64,
    pub report: BoundReport,
}

// E_x of Pr[qubits read x]·Pr[qubits read x̄], x restricted to `positions` of the input vector.
fn product_quantity(c: &Circuit, qubits: &[usize], positions: &[usize]) -> Result<f64> {
    let cfg = SimConfig::default();
    let xs = input_samples(c.inputs.len(), Sampling::Exact)?;
    let full = (1usize << qubits.len()) - 1;
    let mut total = 0.0;
    for x in &xs {
        let dist = sim::run_with(c, x, &cfg)?.marginal(qubits);
        let k = positions
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &p)| acc | (usize::from(x[p]) << j));
        total += dist[k] * dist[full ^ k];
    }
    Ok(total / xs.len() as f64)
}

/// Proof quantities for a line circuit measured on its inputs.
pub fn nekomata_distance(c: &Circuit, epsilon: f64) -> Result<NekomataReport> {
    let n = c.inputs.len();
    if n > EXACT_INPUTS {
        return Err(Error::InvalidArgument(format!("{n} inputs exceeds the exact cap {EXACT_INPUTS}")));
    }
    let q = product_quantity(c, &c.inputs, &(0..n).collect::<Vec<_>>())?;
    let out = restriction_pipeline_1d(c, epsilon)?;
    let t = backward_disjoint_select(&out.approx, &out.report.surviving)?;
    let positions: Vec<usize> = t
        .iter()
        .map(|q| c.inputs.iter().position(|i| i == q).expect("T is a subset of the inputs"))
        .collect();
    let restricted_t_product = product_quantity(&out.approx, &t, &positions)?;
    let d = c.depth();
    let tz = t.len() as i32;
    let analytic = 4f64.powi(-tz) + 32.0 * d as f64 * epsilon;
    let mut report = BoundReport::new(BoundKind::Nekomata, n, d, analytic, q).with_epsilon(epsilon);
    report.k = Some(t.len());
    report.s = Some(out.report.s);
    Ok(NekomataReport {
        n,
        d,
        epsilon,
        product_quantity: q,
        restricted_t_product,
        analytic,
        distance_lower_bound: 0.125 - 2f64.powi(-2 * tz - 1) - 16.0 * d as f64 * epsilon,
        q_implied_lower_bound: (0.25 - q) / 2.0,
        t,
        report,
    })
}

/// Line circuit mapping |x⟩|0⟩ to (|x⟩|0⟩ + |x̄⟩|1⟩)/√2, with the ancilla at
/// qubit 0 and inputs 1..=n, using only neighbour CNOTs.
pub fn exact_cat_line(n: usize) -> Result<Circuit> {
    if !(1..=126).contains(&n) {
        return Err(Error::InvalidArgument(format!("n={n} must be in 1..=126")));
    }
    let mut b = CircuitBuilder::new(Layout::Line(n + 1)).inputs((1..=n).collect());
    b.h(0);
    // qubit i holds x_i ⊕ x_{i−1}, then a ripple from the ancilla restores x_i ⊕ a
    for i in (2..=n).rev() {
        b.cnot_layer(&[(i - 1, i)]);
    }
    for i in 1..=n {
        b.cnot_layer(&[(i - 1, i)]);
    }
    let c = b.finish();
    c.check()?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub name: String,
    pub circuit: Circuit,
    pub output: usize,
    pub seed: u64,
}

/// Seeded random line circuits on n inputs with CZ supports ≤ 3, read at the middle qubit.
pub fn parity_family(depth: usize, n: usize, count: usize, seed: u64) -> Vec<FamilyMember> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_add(i);
            let mut rng = StdRng::seed_from_u64(s);
            FamilyMember {
                name: format!("line_d{depth}_n{n}_{i}"),
                circuit: random_line(&mut rng, n, (0..n).collect(), depth, 3),
                output: n / 2,
                seed: s,
            }
        })
        .collect()
}

/// Line circuits whose output qubit n−1 never sees input 0 (every CZ on qubit 0 is dropped).
pub fn missing_cone_family(n: usize, depth: usize, count: usize, seed: u64) -> Result<Vec<FamilyMember>> {
    if n < 2 {
        return Err(Error::InvalidArgument("missing-cone family needs n ≥ 2".into()));
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let mut rng = StdRng::seed_from_u64(s);
        let mut c = random_line(&mut rng, n, (0..n).collect(), depth, 3);
        for l in &mut c.layers {
            l.czs.retain(|g| !g.contains(0));
        }
        let cone = backward_lightcone(&c, n - 1)?;
        if cone.contains(0) {
            return Err(Error::Verification("output cone still reaches input 0".into()));
        }
        out.push(FamilyMember {
            name: format!("missing_cone_d{depth}_n{n}_{i}"),
            circuit: c,
            output: n - 1,
            seed: s,
        });
    }
    Ok(out)
}

/// Depth-1 and depth-2 line families plus missing-cone controls, against the parity bound.
pub fn parity_suite(seed: u64) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for d in [1, 2] {
        for n in [4, 6, 8] {
            let mut members = parity_family(d, n, 4, seed ^ (d as u64) << 32 ^ (n as u64) << 40);
            members.extend(missing_cone_family(n, d, 2, seed ^ 0x5eed ^ (n as u64) << 40)?);
            for m in members {
                let r = bound_experiment(&m.circuit, m.output, Target::Parity, BoundKind::Parity, m.seed)?;
                reports.push(r.labelled("parity", m.name, Some(m.seed)));
            }
        }
    }
    Ok(reports)
}

pub fn majority_suite(seed: u64) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for d in [1, 2] {
        for n in [3, 5, 7, 9] {
            for m in parity_family(d, n, 3, seed ^ (d as u64) << 32 ^ (n as u64) << 40) {
                let r = bound_experiment(&m.circuit, m.output, Target::Majority, BoundKind::Majority, m.seed)?;
                reports.push(r.labelled("majority", m.name.replace("line", "maj"), Some(m.seed)));
            }
        }
    }
    Ok(reports)
}

/// Pipeline pairs (C, C̃) and identical-circuit controls for the TV and unitary gaps.
pub fn gap_suite(seed: u64) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for d in [1, 2] {
        for n in [4, 5, 6] {
            for m in parity_family(d, n, 2, seed ^ (d as u64) << 32 ^ (n as u64) << 40) {
                let all: Vec<usize> = (0..n).collect();
                for eps in [0.05, 0.5, 0.9] {
                    let approx = restriction_pipeline_1d(&m.circuit, eps)?.approx;
                    let tag = format!("{}_eps{eps}", m.name);
                    reports.push(tv_gap(&m.circuit, &approx, &all, eps)?.labelled("tv_gap", tag.clone(), Some(m.seed)));
                    reports.push(unitary_gap(&m.circuit, &approx, eps)?.labelled("unitary_gap", tag, Some(m.seed)));
                }
                let ctl = format!("{}_identical", m.name);
                reports.push(tv_gap(&m.circuit, &m.circuit, &all, 0.05)?.labelled("tv_gap", ctl.clone(), Some(m.seed)));
                reports.push(unitary_gap(&m.circuit, &m.circuit, 0.05)?.labelled("unitary_gap", ctl, Some(m.seed)));
            }
        }
    }
    Ok(reports)
}

pub fn nekomata_suite(seed: u64) -> Result<Vec<NekomataReport>> {
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        let mut r = nekomata_distance(&exact_cat_line(n)?, 0.05)?;
        r.report = r.report.labelled("nekomata", format!("exact_cat_n{n}"), None);
        out.push(r);
    }
    for d in [1, 2] {
        for n in [4, 6, 8] {
            for m in parity_family(d, n, 2, seed ^ (d as u64) << 32 ^ (n as u64) << 40) {
                let mut r = nekomata_distance(&m.circuit, 0.05)?;
                r.report = r.report.labelled("nekomata", m.name, Some(m.seed));
                out.push(r);
            }
        }
    }
    Ok(out)
}
