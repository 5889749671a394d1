use crate::{Error, Result};
use serde::Serialize;

/// Π_{i=1}^{m} (2i−1)/(2i) = C(2m, m)/4^m
fn central_ratio(m: usize) -> f64 {
    (1..=m).map(|i| (2 * i - 1) as f64 / (2 * i) as f64).product()
}

/// W^{=1}(MAJ_n) = 4n/4ⁿ · C(n−1, (n−1)/2)² for odd n ≥ 3.
pub fn majority_weight1_closed(n: usize) -> Result<f64> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("n={n} must be odd and at least 3")));
    }
    let r = central_ratio((n - 1) / 2);
    Ok(n as f64 * r * r)
}

/// C(m, m/2)/2^m for even m ≥ 2.
pub fn balanced_assignment_prob(m: usize) -> Result<f64> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidArgument(format!("m={m} must be even and at least 2")));
    }
    Ok(central_ratio(m / 2))
}

fn decay(n: usize, d: usize) -> f64 {
    2f64.powf(-(n as f64).powf(1.0 / d as f64) / 6.0)
}

/// 1/2 + 4√2·d·2^{−n^{1/d}/6}
pub fn parity_bound(n: usize, d: usize) -> f64 {
    0.5 + 4.0 * 2f64.sqrt() * d as f64 * decay(n, d)
}

/// 1/2 + 8dn·2^{−n/(10d)}
pub fn contiguous_parity_bound(n: usize, d: usize) -> f64 {
    0.5 + 8.0 * d as f64 * n as f64 * 2f64.powf(-(n as f64) / (10.0 * d as f64))
}

/// 1 − 0.045/√n + 2√(2d)·2^{−n^{1/d}/6}
pub fn majority_bound(n: usize, d: usize) -> f64 {
    1.0 - 0.045 / (n as f64).sqrt() + 2.0 * (2.0 * d as f64).sqrt() * decay(n, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Parity,
    ContiguousParity,
    Majority,
    TvGap,
    UnitaryGap,
    Nekomata,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Parity => "parity",
            BoundKind::ContiguousParity => "contiguous_parity",
            BoundKind::Majority => "majority",
            BoundKind::TvGap => "tv_gap",
            BoundKind::UnitaryGap => "unitary_gap",
            BoundKind::Nekomata => "nekomata",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub suite: String,
    pub name: String,
    pub bound: BoundKind,
    pub n: usize,
    pub d: usize,
    pub epsilon: Option<f64>,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub analytic: f64,
    pub empirical: f64,
    pub satisfied: bool,
    pub seed: Option<u64>,
}

/// One CSV line: suite,name,n,d,epsilon,analytic,empirical,satisfied,seed
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsvRow {
    pub suite: String,
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub epsilon: Option<f64>,
    pub analytic: f64,
    pub empirical: f64,
    pub satisfied: bool,
    pub seed: Option<u64>,
}

impl BoundReport {
    pub fn new(bound: BoundKind, n: usize, d: usize, analytic: f64, empirical: f64) -> Self {
        Self {
            suite: String::new(),
            name: bound.name().to_string(),
            bound,
            n,
            d,
            epsilon: None,
            s: None,
            k: None,
            analytic,
            empirical,
            satisfied: empirical <= analytic + 1e-9,
            seed: None,
        }
    }

    pub fn labelled(mut self, suite: &str, name: impl Into<String>, seed: Option<u64>) -> Self {
        self.suite = suite.to_string();
        self.name = name.into();
        self.seed = seed;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            suite: self.suite.clone(),
            name: self.name.clone(),
            n: self.n,
            d: self.d,
            epsilon: self.epsilon,
            analytic: self.analytic,
            empirical: self.empirical,
            satisfied: self.satisfied,
            seed: self.seed,
        }
    }
}
