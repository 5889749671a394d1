//! Reference implementations used only by tests. They work from the gate
//! definitions with full matrices and explicit path enumeration, sharing no
//! code with the library kernels.
#![allow(dead_code)]

use num_complex::Complex64;
use qac_core::circuit::{Circuit, Mat2};

pub type Matrix = Vec<Vec<Complex64>>;

fn bit(i: usize, q: usize) -> usize {
    (i >> q) & 1
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0.into() } else { 0.0.into() }).collect())
        .collect()
}

/// u acting on qubit q of n, as a 2ⁿ × 2ⁿ matrix built entry by entry.
pub fn single_matrix(n: usize, q: usize, u: &Mat2) -> Matrix {
    let dim = 1 << n;
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if (i ^ j) & !(1 << q) != 0 {
                        0.0.into()
                    } else {
                        u[2 * bit(i, q) + bit(j, q)]
                    }
                })
                .collect()
        })
        .collect()
}

pub fn cz_matrix(n: usize, support: &[usize]) -> Matrix {
    let dim = 1 << n;
    let mut m = identity(dim);
    for (i, row) in m.iter_mut().enumerate() {
        if support.iter().all(|&q| bit(i, q) == 1) {
            row[i] = (-1.0).into();
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn apply(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Full unitary of the circuit on its physical qubits.
pub fn circuit_matrix(c: &Circuit) -> Matrix {
    let n = c.num_qubits();
    let mut u = identity(1 << n);
    for layer in &c.layers {
        for g in &layer.singles {
            u = matmul(&single_matrix(n, g.target, &g.u), &u);
        }
        for g in &layer.czs {
            u = matmul(&cz_matrix(n, &g.support), &u);
        }
    }
    u
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Forward light-cone by enumerating every path i₀ → i₁ → … through the first
/// `upto` layers, where a step from layer t may move to any qubit sharing a
/// CZ with the current one (or stay).
pub fn cone_by_paths(c: &Circuit, q: usize, upto: usize) -> Vec<usize> {
    let mut ends = std::collections::BTreeSet::new();
    fn walk(c: &Circuit, at: usize, t: usize, upto: usize, ends: &mut std::collections::BTreeSet<usize>) {
        if t == upto {
            ends.insert(at);
            return;
        }
        let next: Vec<usize> = c.layers[t]
            .czs
            .iter()
            .find(|g| g.support.contains(&at))
            .map_or_else(|| vec![at], |g| g.support.clone());
        for nq in next {
            walk(c, nq, t + 1, upto, ends);
        }
    }
    walk(c, q, 0, upto, &mut ends);
    ends.into_iter().collect()
}

/// Fourier coefficient by the inner-product definition on ±1 outputs.
pub fn fourier_coefficient(f: &dyn Fn(u64) -> bool, n: usize, s: u64) -> f64 {
    let total: f64 = (0..1u64 << n)
        .map(|x| {
            let fx = if f(x) { -1.0 } else { 1.0 };
            let chi = if (x & s).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            fx * chi
        })
        .sum();
    total / (1u64 << n) as f64
}

pub fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
