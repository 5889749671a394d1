use crate::circuit::{mat, Circuit, CircuitBuilder, Layout, Mat2, Toffoli};
use crate::sim::{run_with, SimConfig};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeCalibration {
    pub p: f64,
    pub a: Complex64,
    pub b: Complex64,
    /// Iteration count actually used.
    pub k: usize,
    /// ⌈√2 / (4π(√(2p) − 1))⌉
    pub k_formula: usize,
    pub theta: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl AmplitudeCalibration {
    /// True when `k` had to exceed the closed-form value to keep |α|² + |β|² ≤ 1.
    pub fn raised(&self) -> bool {
        self.k > self.k_formula
    }
}

/// Rotation amplitudes with aα = bβ = sin(π/(4k+2)).
///
/// Starts at k = ⌈√2/(4π(√(2p) − 1))⌉ and increases k until |α|² + |β|² ≤ 1;
/// the closed-form k alone does not guarantee feasibility near the amplitude
/// lower bound.
pub fn amplitude_calibration(p: f64, a: Complex64, b: Complex64) -> Result<AmplitudeCalibration> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!("p={p} must lie in (1/2, 1]")));
    }
    let floor = (2.0 * p).sqrt() - 1.0;
    for (name, z) in [("a", a), ("b", b)] {
        if z.norm() < floor {
            return Err(Error::InvalidArgument(format!(
                "|{name}| = {} is below √(2p) − 1 = {floor}",
                z.norm()
            )));
        }
    }
    let k_formula = (2f64.sqrt() / (4.0 * PI * floor)).ceil().max(1.0) as usize;
    let mut k = k_formula;
    loop {
        let theta = PI / (4 * k + 2) as f64;
        let s = theta.sin();
        if s * s * (1.0 / a.norm_sqr() + 1.0 / b.norm_sqr()) <= 1.0 {
            return Ok(AmplitudeCalibration {
                p,
                a,
                b,
                k,
                k_formula,
                theta,
                alpha: Complex64::from(s) / a,
                beta: Complex64::from(s) / b,
            });
        }
        k += 1;
    }
}

/// Qubit positions inside the circuit returned by [`build_c2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct C2Layout {
    pub n_cat: usize,
    pub n_anc: usize,
    pub q0: usize,
    pub q1: usize,
    pub flag: usize,
}

impl C2Layout {
    pub fn new(n_cat: usize, n_anc: usize) -> Self {
        let base = n_cat + n_anc;
        Self {
            n_cat,
            n_anc,
            q0: base,
            q1: base + 1,
            flag: base + 2,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.flag + 1
    }
}

/// Unitary taking |0⟩ to r|0⟩ + z|1⟩ with r real.
fn prep(r: f64, z: Complex64) -> Mat2 {
    [r.into(), -z.conj(), z, r.into()]
}

/// Appends Q ⊗ X_flag and the two flag Toffolis to `c1`.
///
/// `c1` lives on n_cat + n_anc qubits, cat register first, and must produce
/// a|0…0⟩ + b|1^{n_cat}0^{n_anc}⟩ + (orthogonal rest) with a, b equal to the
/// calibration's amplitudes. Q prepares α|00⟩ + γ|01⟩ + β|11⟩ on (q0, q1).
/// The flag ends in |0⟩ exactly on |0…0⟩|00⟩ and on |1^{n_cat}0^{n_anc}⟩|11⟩.
pub fn build_c2(c1: &Circuit, n_cat: usize, cal: &AmplitudeCalibration) -> Result<Circuit> {
    let total = c1.num_qubits();
    if n_cat == 0 || n_cat > total {
        return Err(Error::InvalidArgument(format!("n_cat={n_cat} out of range for {total} qubits")));
    }
    if !c1.inputs.is_empty() {
        return Err(Error::Precondition("c1 must be a state-preparation circuit without inputs".into()));
    }
    let cfg = SimConfig { qubit_cap: 20 };
    let out = run_with(c1, &[], &cfg)?;
    let a = out.amps()[0];
    let b = out.amps()[(1usize << n_cat) - 1];
    if (a - cal.a).norm() > 1e-8 || (b - cal.b).norm() > 1e-8 {
        return Err(Error::Verification(format!(
            "c1 amplitudes ({a}, {b}) differ from calibration ({}, {})",
            cal.a, cal.b
        )));
    }

    let lay = C2Layout::new(n_cat, total - n_cat);
    let mut bld = CircuitBuilder::new(Layout::AllToAll(lay.num_qubits()));
    bld.append_layers(&c1.layers);
    for g in &c1.ancilla {
        bld.ancilla(g.q, g.init);
    }

    let (alpha, beta) = (cal.alpha, cal.beta);
    let gamma = (1.0 - alpha.norm_sqr() - beta.norm_sqr()).max(0.0).sqrt();
    let r0 = (alpha.norm_sqr() + gamma * gamma).sqrt();
    // Ry(φ)·CZ·Ry(φ) on q1 is Ry(2φ) when q0 = 0 and Z when q0 = 1; the Z sign
    // is pre-compensated in the q0 amplitude.
    let half = 0.5 * gamma.atan2(alpha.norm());
    bld.single(lay.q0, prep(r0, -beta));
    bld.cnot_layer(&[(lay.q0, lay.q1)]);
    bld.single(lay.q1, mat::ry(half));
    bld.cz_layer([vec![lay.q0, lay.q1]]);
    bld.single(lay.q1, mat::ry(half));
    bld.single(lay.q1, mat::diag(Complex64::from_polar(1.0, alpha.arg()), 1.0.into()));
    bld.x(lay.flag);

    let cat: Vec<usize> = (0..n_cat).collect();
    let anc: Vec<usize> = (n_cat..total).collect();
    let all: Vec<usize> = (0..total).chain([lay.q0, lay.q1]).collect();
    for &q in &all {
        bld.x(q);
    }
    bld.toffoli_layer(&[Toffoli::new(all.clone(), lay.flag)?]);
    for &q in &all {
        bld.x(q);
    }
    for &q in &anc {
        bld.x(q);
    }
    let ones: Vec<usize> = cat.iter().chain(&anc).copied().chain([lay.q0, lay.q1]).collect();
    bld.toffoli_layer(&[Toffoli::new(ones, lay.flag)?]);
    for &q in &anc {
        bld.x(q);
    }
    let c2 = bld.finish();
    c2.check()?;
    Ok(c2)
}

/// Approximate cat preparation on n_cat + n_anc qubits (all-to-all) with
/// a = b = `amp` on |0…0⟩ and |1^{n_cat}0^{n_anc}⟩. Needs amp ≤ 1/√2, with
/// equality when there are no ancilla.
pub fn toy_approx_cat(n_cat: usize, n_anc: usize, amp: f64) -> Result<Circuit> {
    let max = std::f64::consts::FRAC_1_SQRT_2;
    if n_cat == 0 || !(amp > 0.0 && amp <= max + 1e-15) || (n_anc == 0 && (amp - max).abs() > 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "cannot reach amplitude {amp} with {n_cat} cat and {n_anc} ancilla qubits"
        )));
    }
    let mut b = CircuitBuilder::new(Layout::AllToAll(n_cat + n_anc));
    b.single(0, mat::ry(std::f64::consts::FRAC_PI_4));
    for q in 1..n_cat {
        b.cnot_layer(&[(q - 1, q)]);
    }
    if n_anc > 0 {
        let zeta = ((2f64.sqrt() * amp).min(1.0).powf(1.0 / n_anc as f64)).acos();
        for q in n_cat..n_cat + n_anc {
            b.single(q, mat::ry(zeta));
        }
    }
    Ok(b.finish())
}
