use super::Register;
use crate::circuit::Mat2;
use crate::{Error, Result};
use num_complex::Complex64;

pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    pub fn from_amps(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let s = Self {
            num_qubits: amps.len().trailing_zeros() as usize,
            amps,
        };
        let n2 = s.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(s)
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability of measuring 1 on qubit `q`.
    pub fn prob_one(&self, q: usize) -> f64 {
        let m = 1usize << q;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Measurement distribution of `qubits`; outcome bit `j` is `qubits[j]`.
    pub fn marginal(&self, qubits: &[usize]) -> Vec<f64> {
        let mut p = vec![0.0; 1usize << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let k = qubits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, &q)| acc | (((i >> q) & 1) << j));
            p[k] += a.norm_sqr();
        }
        p
    }

    /// `self ⊗ other` with `self` on the low qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for b in &other.amps {
            amps.extend(self.amps.iter().map(|a| a * b));
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amps,
        }
    }
}

impl Register for StateVector {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn apply_single(&mut self, q: usize, u: &Mat2) {
        let step = 1usize << q;
        for block in self.amps.chunks_mut(step << 1) {
            let (lo, hi) = block.split_at_mut(step);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = u[0] * x + u[1] * y;
                *b = u[2] * x + u[3] * y;
            }
        }
    }

    fn apply_cz(&mut self, mask: u128) {
        let mask = mask as usize;
        let last = self.amps.len() - 1;
        // visit every superset of `mask` in increasing order
        let mut i = mask;
        loop {
            self.amps[i] = -self.amps[i];
            if i == last {
                break;
            }
            i = (i + 1) | mask;
        }
    }
}
