use crate::output::{fmt_set, Output};
use crate::{Cli, CliError, CliResult};
use clap::Subcommand;
use qac_core::circuit::codec;
use qac_core::cone::{self, RestrictionOutcome, Verdict};
use qac_core::Circuit;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Circuit file.
    pub input: PathBuf,
    #[command(subcommand)]
    pub what: What,
}

#[derive(Debug, Subcommand)]
pub enum What {
    /// Forward (default) or backward light-cone of one qubit.
    Lightcone {
        #[arg(long)]
        qubit: usize,
        #[arg(long)]
        backward: bool,
        /// Forward cone after this many layers (default: all).
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Pairwise disjointness of forward cones; --set defaults to the inputs.
    Separable {
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// Layer-by-layer restriction of a line circuit at error ε.
    Restrict {
        #[arg(long)]
        epsilon: f64,
        /// Also write the restricted circuit, report embedded.
        #[arg(long)]
        approx_out: Option<PathBuf>,
    },
    /// Restriction of a contiguous input interval with threshold s.
    ContiguousRestrict {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        approx_out: Option<PathBuf>,
    },
    /// Width-2 structure selection against layer --layer.
    Width2Select {
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[arg(long)]
        layer: usize,
        #[arg(long)]
        s: usize,
    },
}

fn restriction(what: &str, outcome: RestrictionOutcome, approx_out: Option<&Path>, out: &Output) -> CliResult {
    let RestrictionOutcome { approx, report } = outcome;
    if let Some(p) = approx_out {
        std::fs::write(p, codec::to_json_with_report(&approx, &report)?)?;
    }
    let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6e}"));
    let text = format!(
        "{}: n={} d={} s={}\nsurviving {} (|S| = {}, guaranteed ≥ {})\nerased {} gate(s); analytic error bound {:.6e}; empirical {}",
        report.kind,
        report.n,
        report.d,
        report.s,
        fmt_set(&report.surviving),
        report.surviving.len(),
        report.size_bound,
        report.erased.len(),
        report.analytic_error_bound,
        opt(report.empirical_error),
    );
    let approx: Value = serde_json::from_str(&codec::to_json(&approx)).map_err(|e| CliError::Domain(e.to_string()))?;
    let report = serde_json::to_value(&report).map_err(|e| CliError::Domain(e.to_string()))?;
    out.emit("analyze", &text, json!({ "what": what, "report": report, "approx": approx }))
}

fn set_or_inputs(c: &Circuit, set: &Option<Vec<usize>>) -> Vec<usize> {
    set.clone().unwrap_or_else(|| c.inputs.clone())
}

pub fn run(_cli: &Cli, args: &Args, out: &Output) -> CliResult {
    let c = codec::read_file(&args.input)?;
    match &args.what {
        What::Lightcone { qubit, backward, upto } => {
            let lc = if *backward {
                cone::backward_lightcone(&c, *qubit)?
            } else {
                cone::forward_lightcone(&c, *qubit, upto.unwrap_or(c.layers.len()))?
            };
            let dir = if *backward { "backward" } else { "forward" };
            out.emit(
                "analyze",
                &fmt_set(&lc.members),
                json!({ "what": "lightcone", "qubit": qubit, "direction": dir, "members": lc.members }),
            )
        }
        What::Separable { set } => {
            let cert = cone::check_separable(&c, &set_or_inputs(&c, set))?;
            let text = match cert.verdict {
                Verdict::Separable => format!("separable: {}", fmt_set(&cert.inputs)),
                Verdict::Witness(a, b) => format!("not separable: witness ({a},{b})"),
            };
            let cert = serde_json::to_value(&cert).map_err(|e| CliError::Domain(e.to_string()))?;
            out.emit("analyze", &text, json!({ "what": "separable", "certificate": cert }))
        }
        What::Restrict { epsilon, approx_out } => {
            restriction("restrict", cone::restriction_pipeline_1d(&c, *epsilon)?, approx_out.as_deref(), out)
        }
        What::ContiguousRestrict { s, approx_out } => {
            restriction("contiguous-restrict", cone::contiguous_restriction(&c, *s)?, approx_out.as_deref(), out)
        }
        What::Width2Select { set, layer, s } => {
            let next = c
                .layers
                .get(*layer)
                .ok_or_else(|| CliError::Usage(format!("layer {layer} out of range (circuit has {})", c.layers.len())))?;
            let mut prefix = c.clone();
            prefix.layers.truncate(*layer);
            let sel = cone::width2_structure_select(&prefix, &set_or_inputs(&c, set), next, *s)?;
            let text = format!(
                "kept {} (|S| = {}, bound {}){}",
                fmt_set(&sel.kept),
                sel.kept.len(),
                sel.bound,
                if sel.fallback { "; greedy fallback used" } else { "" }
            );
            let sel = serde_json::to_value(&sel).map_err(|e| CliError::Domain(e.to_string()))?;
            out.emit("analyze", &text, json!({ "what": "width2-select", "selection": sel }))
        }
    }
}
