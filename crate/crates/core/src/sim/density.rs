use super::{SparseState, StateVector};
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::ops::{Index, IndexMut};

/// Largest kept set for a reduced density (2^10 = 1024 rows).
pub const MAX_KEEP: usize = 10;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// |v⟩⟨v|
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(m)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add(&self, other: &CMatrix) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.dagger()
            .matmul(self)
            .map(|p| p.max_abs_diff(&CMatrix::identity(self.dim)) <= tol)
            .unwrap_or(false)
    }

    fn same_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Density matrix on `kept`; bit `j` of a row index is qubit `kept[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensity {
    pub kept: Vec<usize>,
    pub matrix: CMatrix,
}

impl ReducedDensity {
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

pub fn partial_trace(s: &StateVector, keep: &[usize]) -> Result<ReducedDensity> {
    trace_out(
        s.num_qubits(),
        s.amps()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, &a)| (i as u128, a)),
        keep,
    )
}

pub fn partial_trace_sparse(s: &SparseState, keep: &[usize]) -> Result<ReducedDensity> {
    trace_out(s.num_qubits(), s.iter(), keep)
}

fn trace_out(
    n: usize,
    amps: impl Iterator<Item = (u128, Complex64)>,
    keep: &[usize],
) -> Result<ReducedDensity> {
    if keep.len() > MAX_KEEP {
        return Err(Error::InvalidArgument(format!(
            "cannot keep {} qubits (max {MAX_KEEP})",
            keep.len()
        )));
    }
    let mut seen = 0u128;
    for &q in keep {
        if q >= n || seen & (1u128 << q) != 0 {
            return Err(Error::InvalidArgument(format!("bad kept qubit {q}")));
        }
        seen |= 1u128 << q;
    }
    let keep_mask = seen;
    let mut groups: HashMap<u128, Vec<(usize, Complex64)>> = HashMap::new();
    for (i, a) in amps {
        let k = keep
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &q)| acc | ((((i >> q) & 1) as usize) << j));
        groups.entry(i & !keep_mask).or_default().push((k, a));
    }
    let mut m = CMatrix::zeros(1usize << keep.len());
    for entries in groups.values() {
        for &(k1, a1) in entries {
            for &(k2, a2) in entries {
                m[(k1, k2)] += a1 * a2.conj();
            }
        }
    }
    Ok(ReducedDensity {
        kept: keep.to_vec(),
        matrix: m,
    })
}
