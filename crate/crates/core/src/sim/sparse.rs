use super::{Register, StateVector};
use crate::circuit::Mat2;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;

/// Amplitudes below this magnitude squared are dropped after each gate.
const PRUNE: f64 = 1e-28;

/// Hash-map state for circuits with many qubits but few live basis states.
#[derive(Clone, Debug, Default)]
pub struct SparseState {
    num_qubits: usize,
    amps: HashMap<u128, Complex64>,
}

impl SparseState {
    pub fn basis(num_qubits: usize, index: u128) -> Self {
        assert!(num_qubits <= 128, "sparse backend holds at most 128 qubits");
        let mut amps = HashMap::new();
        amps.insert(index, Complex64::new(1.0, 0.0));
        Self { num_qubits, amps }
    }

    pub fn from_map(num_qubits: usize, amps: HashMap<u128, Complex64>) -> Self {
        Self { num_qubits, amps }
    }

    pub fn from_dense(s: &StateVector) -> Self {
        let amps = s
            .amps()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > PRUNE)
            .map(|(i, &a)| (i as u128, a))
            .collect();
        Self {
            num_qubits: s.num_qubits(),
            amps,
        }
    }

    pub fn to_dense(&self) -> Result<StateVector> {
        if self.num_qubits > 26 {
            return Err(Error::QubitCap {
                needed: self.num_qubits,
                cap: 26,
            });
        }
        let mut v = vec![Complex64::new(0.0, 0.0); 1usize << self.num_qubits];
        for (&i, &a) in &self.amps {
            v[i as usize] = a;
        }
        StateVector::from_amps(v)
    }

    pub fn amplitude(&self, index: u128) -> Complex64 {
        self.amps.get(&index).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, Complex64)> + '_ {
        self.amps.iter().map(|(&i, &a)| (i, a))
    }

    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Complex64::norm_sqr).sum()
    }

    pub fn inner(&self, other: &SparseState) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .map(|(i, a)| a.conj() * other.amplitude(*i))
            .sum())
    }

    pub fn prob_one(&self, q: usize) -> f64 {
        let m = 1u128 << q;
        self.amps
            .iter()
            .filter(|(i, _)| *i & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

impl Register for SparseState {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn apply_single(&mut self, q: usize, u: &Mat2) {
        let m = 1u128 << q;
        let zero = |z: Complex64| z.norm_sqr() == 0.0;
        if zero(u[1]) && zero(u[2]) {
            for (i, a) in self.amps.iter_mut() {
                *a *= if i & m == 0 { u[0] } else { u[3] };
            }
            return;
        }
        if zero(u[0]) && zero(u[3]) {
            self.amps = self
                .amps
                .drain()
                .map(|(i, a)| if i & m == 0 { (i | m, u[2] * a) } else { (i & !m, u[1] * a) })
                .collect();
            return;
        }
        let mut out: HashMap<u128, Complex64> = HashMap::with_capacity(self.amps.len() * 2);
        for (i, a) in self.amps.drain() {
            let (i0, i1) = (i & !m, i | m);
            let b = usize::from(i & m != 0);
            *out.entry(i0).or_default() += u[b] * a;
            *out.entry(i1).or_default() += u[2 + b] * a;
        }
        out.retain(|_, a| a.norm_sqr() > PRUNE);
        self.amps = out;
    }

    fn apply_cz(&mut self, mask: u128) {
        for (i, a) in self.amps.iter_mut() {
            if i & mask == mask {
                *a = -*a;
            }
        }
    }
}
