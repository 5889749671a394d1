use crate::circuit::{mat, Circuit, CircuitBuilder, Init, Layout};
use crate::sim::{partial_trace_sparse, run_sparse, trace_distance, ReducedDensity};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CounterexampleSpec {
    /// Number of (input, ancilla-pair) groups; the lattice is 2 × 2k.
    pub k: usize,
    pub delta: f64,
}

impl CounterexampleSpec {
    /// 4√(δᵏ(1 − δᵏ))
    pub fn predicted_error(&self) -> f64 {
        let dk = self.delta.powi(self.k as i32);
        4.0 * (dk * (1.0 - dk)).max(0.0).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub spec: CounterexampleSpec,
    /// C followed by a CZ over the whole ancilla row.
    pub d: Circuit,
    pub d_without_cz: Circuit,
    pub predicted_error: f64,
}

/// Width-2 circuit whose final row CZ has weight n = 2k yet cannot be erased
/// cheaply.
///
/// For pair i, a = (0,2i) holds input z, b = (1,2i) and c = (1,2i+1) start
/// in |0⟩; (0,2i+1) is an untouched input. C prepares
/// √δ|z⟩|11⟩ + √(1−δ)|z⟩|0⟩|z⟩ on (a,b,c): rotate b, CNOT b→c, then a
/// Toffoli on (a, ¬b) → c. The three qubits form an L, so that Toffoli's CCZ
/// is built from nearest-neighbour CNOTs (a→b, b→c) and T/T† phases.
pub fn appendix_d_counterexample(spec: CounterexampleSpec) -> Result<Counterexample> {
    let CounterexampleSpec { k, delta } = spec;
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidArgument(format!("k={k} must be in 1..=6")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("delta={delta} must lie in (0, 1)")));
    }
    let layout = Layout::Lattice { rows: 2, cols: 2 * k };
    let a = |i: usize| layout.id(0, 2 * i);
    let b = |i: usize| layout.id(1, 2 * i);
    let c = |i: usize| layout.id(1, 2 * i + 1);

    let mut bld = CircuitBuilder::new(layout).inputs((0..2 * k).map(|col| layout.id(0, col)).collect());
    for col in 0..2 * k {
        bld.ancilla(layout.id(1, col), Init::Zero);
    }
    let pairs: Vec<usize> = (0..k).collect();
    let theta = delta.sqrt().asin();
    for &i in &pairs {
        bld.single(b(i), mat::ry(theta));
    }
    let cnot = |bld: &mut CircuitBuilder, f: &dyn Fn(usize) -> (usize, usize)| {
        let layer: Vec<(usize, usize)> = pairs.iter().map(|&i| f(i)).collect();
        bld.cnot_layer(&layer);
    };
    cnot(&mut bld, &|i| (b(i), c(i)));

    // Toffoli(a, ¬b → c) = X_b · H_c · CCZ(a,b,c) · H_c · X_b
    for &i in &pairs {
        bld.x(b(i));
        bld.h(c(i));
        bld.single(a(i), mat::t());
        bld.single(b(i), mat::t());
        bld.single(c(i), mat::t());
    }
    let phase_steps: [(bool, Option<(bool, bool)>); 8] = [
        // (CNOT a→b if true else b→c, phase after: (on b?, dagger?))
        (true, Some((true, true))),
        (false, Some((false, false))),
        (true, None),
        (false, Some((false, true))),
        (true, None),
        (false, Some((false, true))),
        (true, None),
        (false, None),
    ];
    for (a_to_b, phase) in phase_steps {
        if a_to_b {
            cnot(&mut bld, &|i| (a(i), b(i)));
        } else {
            cnot(&mut bld, &|i| (b(i), c(i)));
        }
        if let Some((on_b, dagger)) = phase {
            let u = if dagger { mat::tdg() } else { mat::t() };
            for &i in &pairs {
                bld.single(if on_b { b(i) } else { c(i) }, u);
            }
        }
    }
    for &i in &pairs {
        bld.h(c(i));
        bld.x(b(i));
    }
    let d_without_cz = bld.finish();
    let mut d = d_without_cz.clone();
    d.layers.push(crate::circuit::Layer {
        singles: vec![],
        czs: vec![crate::circuit::MultiCz::new((0..2 * k).map(|col| layout.id(1, col)).collect())],
    });
    d.check()?;
    Ok(Counterexample {
        spec,
        d,
        d_without_cz,
        predicted_error: spec.predicted_error(),
    })
}

/// ‖Tr_row0 φ_x − CZ (Tr_row0 φ_x) CZ‖₁ for input `x`, via the eigensolver.
pub fn reduced_state_error(ce: &Counterexample, x: &[bool]) -> Result<f64> {
    let state = run_sparse(&ce.d_without_cz, x)?;
    let cols = 2 * ce.spec.k;
    let row1: Vec<usize> = (0..cols).map(|c| cols + c).collect();
    let rho = partial_trace_sparse(&state, &row1)?;
    let flipped = conjugate_by_cz(&rho);
    trace_distance(&rho, &flipped)
}

/// CZ over every kept qubit: flips the sign of row and column 2^k − 1.
fn conjugate_by_cz(rho: &ReducedDensity) -> ReducedDensity {
    let mut out = rho.clone();
    let last = rho.matrix.dim() - 1;
    for j in 0..rho.matrix.dim() {
        if j != last {
            out.matrix[(last, j)] = -out.matrix[(last, j)];
            out.matrix[(j, last)] = -out.matrix[(j, last)];
        }
    }
    out
}
