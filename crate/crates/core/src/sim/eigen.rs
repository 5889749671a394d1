//! Hermitian eigendecomposition, backed by nalgebra.

use super::CMatrix;
use crate::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub const MAX_DIM: usize = 1024;
const MAX_ITERS: usize = 10_000;

/// Eigenvalues in ascending order.
pub fn eigvalsh(m: &CMatrix) -> Result<Vec<f64>> {
    check(m)?;
    // Identically zero rows contribute eigenvalue 0 and never mix with the
    // rest, so they are split off first.
    let live: Vec<usize> = (0..m.dim())
        .filter(|&i| (0..m.dim()).any(|j| m[(i, j)].norm_sqr() > 0.0))
        .collect();
    let sub = DMatrix::from_fn(live.len(), live.len(), |a, b| m[(live[a], live[b])]);
    let mut w = decompose(sub, false)?.0;
    w.resize(m.dim(), 0.0);
    w.sort_by(f64::total_cmp);
    Ok(w)
}

/// Eigenvalues (ascending) and the unitary whose columns are the eigenvectors.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check(m)?;
    let n = m.dim();
    let (w, v) = decompose(DMatrix::from_fn(n, n, |i, j| m[(i, j)]), true)?;
    let v = v.expect("vectors requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]));
    let mut sorted = CMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            sorted[(r, new)] = v[(r, old)];
        }
    }
    Ok((order.iter().map(|&i| w[i]).collect(), sorted))
}

fn check(m: &CMatrix) -> Result<()> {
    if m.dim() > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "eigensolver dimension {} exceeds {MAX_DIM}",
            m.dim()
        )));
    }
    let scale = m.frobenius_sqr().sqrt().max(1.0);
    if !m.is_hermitian(1e-10 * scale) {
        return Err(Error::InvalidArgument("matrix is not Hermitian".into()));
    }
    Ok(())
}

type Decomposition = (Vec<f64>, Option<DMatrix<Complex64>>);

fn decompose(a: DMatrix<Complex64>, vectors: bool) -> Result<Decomposition> {
    if a.nrows() == 0 {
        return Ok((Vec::new(), vectors.then(|| DMatrix::zeros(0, 0))));
    }
    if !vectors {
        return Ok((a.symmetric_eigenvalues().iter().copied().collect(), None));
    }
    let eig = SymmetricEigen::try_new(a, f64::EPSILON, MAX_ITERS).ok_or(Error::NotConverged(MAX_ITERS))?;
    Ok((eig.eigenvalues.iter().copied().collect(), Some(eig.eigenvectors)))
}
