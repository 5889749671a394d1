use super::{bits_of, run_with, SimConfig};
use crate::circuit::Circuit;
use crate::{Error, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Largest input count evaluated by full enumeration.
pub const EXACT_INPUT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuccessProfile {
    /// (x, f_C(x)) for every evaluated input.
    pub table: Vec<(Vec<bool>, f64)>,
    /// E_x[f(x)·f_C(x) + (1 − f(x))·(1 − f_C(x))]
    pub average: f64,
    pub sampling: Sampling,
}

/// Probability that measuring `output` after running on `x` gives 1.
pub fn f_eval(c: &Circuit, x: &[bool], output: usize, cfg: &SimConfig) -> Result<f64> {
    if output >= c.num_qubits() {
        return Err(Error::InvalidArgument(format!("output qubit {output} out of range")));
    }
    Ok(run_with(c, x, cfg)?.prob_one(output).clamp(0.0, 1.0))
}

pub fn avg_success(
    c: &Circuit,
    f: &dyn Fn(&[bool]) -> bool,
    output: usize,
    sampling: Sampling,
    cfg: &SimConfig,
) -> Result<SuccessProfile> {
    let xs = input_samples(c.inputs.len(), sampling)?;
    let mut table = Vec::with_capacity(xs.len());
    let mut total = 0.0;
    for x in xs {
        let p = f_eval(c, &x, output, cfg)?;
        total += if f(&x) { p } else { 1.0 - p };
        table.push((x, p));
    }
    let average = total / table.len() as f64;
    Ok(SuccessProfile {
        table,
        average,
        sampling,
    })
}

/// Every input for `Exact`, or seeded uniform samples.
pub fn input_samples(n: usize, sampling: Sampling) -> Result<Vec<Vec<bool>>> {
    match sampling {
        Sampling::Exact if n > EXACT_INPUT_CAP => Err(Error::InvalidArgument(format!(
            "{n} inputs exceeds the exact-enumeration cap {EXACT_INPUT_CAP}; use sampling"
        ))),
        Sampling::Exact => Ok((0..1u64 << n).map(|m| bits_of(m, n)).collect()),
        Sampling::MonteCarlo { samples: 0, .. } => Err(Error::InvalidArgument("sample count must be positive".into())),
        Sampling::MonteCarlo { samples, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            Ok((0..samples).map(|_| (0..n).map(|_| rng.random::<bool>()).collect()).collect())
        }
    }
}
