use super::{eigvalsh, CMatrix, ReducedDensity, StateVector};
use crate::{Error, Result};

/// |⟨a|b⟩|²
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

/// ‖|a⟩⟨a| − |b⟩⟨b|‖₁ = 2√(1 − |⟨a|b⟩|²) for unit vectors.
pub fn pure_trace_distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(2.0 * (1.0 - fidelity(a, b)?).max(0.0).sqrt())
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(eigvalsh(m)?.iter().map(|w| w.abs()).sum())
}

/// Unnormalized trace distance ‖a − b‖₁ (ranges over [0, 2]).
pub fn trace_distance(a: &ReducedDensity, b: &ReducedDensity) -> Result<f64> {
    if a.kept != b.kept {
        return Err(Error::InvalidArgument(format!(
            "kept sets differ: {:?} vs {:?}",
            a.kept, b.kept
        )));
    }
    trace_norm(&a.matrix.sub(&b.matrix)?)
}

pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    for d in [p, q] {
        let total: f64 = d.iter().sum();
        if (total - 1.0).abs() > 1e-9 || d.iter().any(|&v| v < -1e-12) {
            return Err(Error::NotNormalized(total));
        }
    }
    Ok((0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()).min(1.0))
}
