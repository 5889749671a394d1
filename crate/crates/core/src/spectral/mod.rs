//! Boolean Fourier analysis and instance-level checks of the average-case bounds.
//!
//! Fourier coefficients use the ±1 output encoding: f̂(S) = E_x[(−1)^{f(x)} χ_S(x)]
//! with χ_S(x) = (−1)^{Σ_{i∈S} x_i}. Bit i of x is x_i.

mod bounds;
mod experiments;

pub use bounds::{
    balanced_assignment_prob, contiguous_parity_bound, majority_bound, majority_weight1_closed, parity_bound,
    BoundKind, BoundReport, CsvRow,
};
pub use experiments::{
    bound_experiment, exact_cat_line, gap_suite, majority_suite, missing_cone_family, nekomata_distance,
    nekomata_suite, parity_family, parity_suite, tv_gap, unitary_gap, unitary_phase_gap, FamilyMember,
    NekomataReport, PhaseGap, Target,
};

use crate::{Error, Result};
use serde::Serialize;

pub const MAX_VARS: usize = 16;
const PARSEVAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierSpectrum {
    pub n: usize,
    /// Indexed by subset mask.
    pub coefficients: Vec<f64>,
}

impl FourierSpectrum {
    pub fn coefficient(&self, subset: u64) -> f64 {
        self.coefficients[subset as usize]
    }

    /// Σ_S f̂(S)²
    pub fn total_weight(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }
}

/// Σ f̂(S)² over subsets whose size satisfies `pred`.
pub fn weight(spec: &FourierSpectrum, pred: impl Fn(usize) -> bool) -> f64 {
    spec.coefficients
        .iter()
        .enumerate()
        .filter(|(s, _)| pred(s.count_ones() as usize))
        .map(|(_, c)| c * c)
        .sum()
}

/// Spectrum of a Boolean function via the fast Walsh–Hadamard transform.
pub fn spectrum(f: &dyn Fn(u64) -> bool, n: usize) -> Result<FourierSpectrum> {
    check_vars(n)?;
    let values: Vec<f64> = (0..1u64 << n).map(|x| if f(x) { -1.0 } else { 1.0 }).collect();
    spectrum_of_values(values)
}

/// Spectrum of a real-valued function given as its table of 2ⁿ values.
pub fn spectrum_of_values(mut values: Vec<f64>) -> Result<FourierSpectrum> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("table length {len} is not a power of two")));
    }
    let n = len.trailing_zeros() as usize;
    check_vars(n)?;
    let mean_sq = values.iter().map(|v| v * v).sum::<f64>() / len as f64;
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    for v in &mut values {
        *v /= len as f64;
    }
    let spec = FourierSpectrum { n, coefficients: values };
    let total = spec.total_weight();
    if (total - mean_sq).abs() > PARSEVAL_TOL * mean_sq.max(1.0) {
        return Err(Error::Verification(format!("Parseval failed: {total} vs {mean_sq}")));
    }
    Ok(spec)
}

fn check_vars(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::InvalidArgument(format!("{n} variables exceeds the cap {MAX_VARS}")));
    }
    Ok(())
}

pub fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// MAJ_n for odd n.
pub fn majority(n: usize) -> impl Fn(u64) -> bool {
    move |x| 2 * (x.count_ones() as usize) > n
}

pub fn bits_to_u64(x: &[bool]) -> u64 {
    x.iter().enumerate().fold(0, |m, (i, &b)| m | (u64::from(b) << i))
}
