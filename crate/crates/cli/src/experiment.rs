use crate::output::Output;
use crate::{Cli, CliError, CliResult};
use clap::{Subcommand, ValueEnum};
use qac_core::circuit::codec;
use qac_core::cone::restriction_pipeline_1d;
use qac_core::spectral::{self, BoundKind, BoundReport, NekomataReport, Target};
use qac_core::{Circuit, Error};
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoolFn {
    Parity,
    Maj,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Success against PARITY vs the analytic bound; shipped families unless --input.
    ParityBound {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output qubit (default: the middle input).
        #[arg(long)]
        output: Option<usize>,
        /// Use the contiguous-input bound instead.
        #[arg(long)]
        contiguous: bool,
    },
    MajorityBound {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<usize>,
    },
    /// E_x TV distance of output distributions vs 8dε.
    TvGap {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Approximating circuit (default: restriction of --input at ε).
        #[arg(long)]
        approx: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        /// Measured qubits (default: the inputs).
        #[arg(long, value_delimiter = ',')]
        outputs: Option<Vec<usize>>,
    },
    /// Phase-corrected unitary distance vs 16dε.
    UnitaryGap {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        approx: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// Cat-test product quantity vs 4^{-|T|} + 32dε.
    Nekomata {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// Fourier weight by level of PARITY_n or MAJ_n.
    Fourier {
        #[arg(long = "fn", value_enum)]
        function: BoolFn,
        #[arg(long)]
        n: usize,
    },
}

fn load(path: &Path, cli: &Cli) -> CliResult<Circuit> {
    let c = codec::read_file(path)?;
    if c.num_qubits() > cli.qubit_cap {
        return Err(Error::QubitCap {
            needed: c.num_qubits(),
            cap: cli.qubit_cap,
        }
        .into());
    }
    Ok(c)
}

fn label(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("circuit").to_string()
}

fn bound(cli: &Cli, path: &Path, output: Option<usize>, target: Target, kind: BoundKind) -> CliResult<Vec<BoundReport>> {
    let c = load(path, cli)?;
    let output = match output {
        Some(q) => q,
        None => *c
            .inputs
            .get(c.inputs.len() / 2)
            .ok_or_else(|| CliError::Usage("circuit has no inputs; pass --output".into()))?,
    };
    let r = spectral::bound_experiment(&c, output, target, kind, cli.seed)?;
    Ok(vec![r.labelled(kind.name(), label(path), Some(cli.seed))])
}

fn approx_for(cli: &Cli, c: &Circuit, approx: &Option<PathBuf>, epsilon: f64) -> CliResult<Circuit> {
    Ok(match approx {
        Some(p) => load(p, cli)?,
        None => restriction_pipeline_1d(c, epsilon)?.approx,
    })
}

fn suite_filter(seed: u64, suite: &str) -> CliResult<Vec<BoundReport>> {
    Ok(spectral::gap_suite(seed)?.into_iter().filter(|r| r.suite == suite).collect())
}

fn emit_reports(cli: &Cli, out: &Output, suite: &str, reports: &[BoundReport], extra: serde_json::Value) -> CliResult {
    // deterministic rows carry the run seed too
    let reports: Vec<BoundReport> = reports
        .iter()
        .cloned()
        .map(|mut r| {
            r.seed.get_or_insert(cli.seed);
            r
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &reports {
        w.serialize(r.csv_row()).map_err(|e| CliError::Domain(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Domain(e.to_string()))?;
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r.empirical.is_nan() || r.empirical > r.analytic + cli.tol)
        .map(|r| r.name.as_str())
        .collect();
    let mut fields = json!({
        "suite": suite,
        "tol": cli.tol,
        "all_satisfied": failing.is_empty(),
        "reports": reports,
    });
    if let (Some(f), serde_json::Value::Object(extra)) = (fields.as_object_mut(), extra) {
        f.extend(extra);
    }
    out.emit("experiment", &text, fields)?;
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(format!("{} report(s) unsatisfied: {}", failing.len(), failing.join(", "))))
    }
}

fn nekomata_json(r: &NekomataReport) -> serde_json::Value {
    json!({
        "name": r.report.name,
        "n": r.n,
        "d": r.d,
        "epsilon": r.epsilon,
        "t": r.t,
        "product_quantity": r.product_quantity,
        "restricted_t_product": r.restricted_t_product,
        "analytic": r.analytic,
        "distance_lower_bound": r.distance_lower_bound,
        "q_implied_lower_bound": r.q_implied_lower_bound,
    })
}

fn fourier(out: &Output, function: BoolFn, n: usize) -> CliResult {
    let spec = match function {
        BoolFn::Parity => spectral::spectrum(&spectral::parity, n)?,
        BoolFn::Maj => {
            if n % 2 == 0 {
                return Err(CliError::Usage(format!("majority needs odd n, got {n}")));
            }
            spectral::spectrum(&spectral::majority(n), n)?
        }
    };
    let levels: Vec<f64> = (0..=n).map(|k| spectral::weight(&spec, |s| s == k)).collect();
    let name = match function {
        BoolFn::Parity => "parity",
        BoolFn::Maj => "maj",
    };
    let text: String = levels.iter().enumerate().map(|(k, w)| format!("W^{{={k}}} = {w}\n")).collect();
    out.emit(
        "experiment",
        &text,
        json!({ "suite": "fourier", "fn": name, "n": n, "levels": levels, "total_weight": spec.total_weight() }),
    )
}

pub fn run(cli: &Cli, suite: &Suite, out: &Output) -> CliResult {
    let none = json!({});
    match suite {
        Suite::ParityBound { input, output, contiguous } => {
            let kind = if *contiguous { BoundKind::ContiguousParity } else { BoundKind::Parity };
            let reports = match input {
                Some(p) => bound(cli, p, *output, Target::Parity, kind)?,
                None if *contiguous => {
                    return Err(CliError::Usage("--contiguous needs --input".into()));
                }
                None => spectral::parity_suite(cli.seed)?,
            };
            emit_reports(cli, out, "parity-bound", &reports, none)
        }
        Suite::MajorityBound { input, output } => {
            let reports = match input {
                Some(p) => bound(cli, p, *output, Target::Majority, BoundKind::Majority)?,
                None => spectral::majority_suite(cli.seed)?,
            };
            emit_reports(cli, out, "majority-bound", &reports, none)
        }
        Suite::TvGap { input, approx, epsilon, outputs } => {
            let reports = match input {
                Some(p) => {
                    let c = load(p, cli)?;
                    let a = approx_for(cli, &c, approx, *epsilon)?;
                    let outputs = outputs.clone().unwrap_or_else(|| c.inputs.clone());
                    let r = spectral::tv_gap(&c, &a, &outputs, *epsilon)?;
                    vec![r.labelled("tv_gap", label(p), Some(cli.seed))]
                }
                None => suite_filter(cli.seed, "tv_gap")?,
            };
            emit_reports(cli, out, "tv-gap", &reports, none)
        }
        Suite::UnitaryGap { input, approx, epsilon } => {
            let reports = match input {
                Some(p) => {
                    let c = load(p, cli)?;
                    let a = approx_for(cli, &c, approx, *epsilon)?;
                    let r = spectral::unitary_gap(&c, &a, *epsilon)?;
                    vec![r.labelled("unitary_gap", label(p), Some(cli.seed))]
                }
                None => suite_filter(cli.seed, "unitary_gap")?,
            };
            emit_reports(cli, out, "unitary-gap", &reports, none)
        }
        Suite::Nekomata { input, epsilon } => {
            let full = match input {
                Some(p) => {
                    let mut r = spectral::nekomata_distance(&load(p, cli)?, *epsilon)?;
                    r.report = r.report.labelled("nekomata", label(p), Some(cli.seed));
                    vec![r]
                }
                None => spectral::nekomata_suite(cli.seed)?,
            };
            let reports: Vec<BoundReport> = full.iter().map(|r| r.report.clone()).collect();
            let details: Vec<_> = full.iter().map(nekomata_json).collect();
            emit_reports(cli, out, "nekomata", &reports, json!({ "nekomata": details }))
        }
        Suite::Fourier { function, n } => fourier(out, *function, *n),
    }
}
