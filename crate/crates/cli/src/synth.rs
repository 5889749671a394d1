use crate::output::Output;
use crate::{Cli, CliError, CliResult};
use clap::{Subcommand, ValueEnum};
use qac_core::circuit::codec;
use qac_core::synth::{self, CounterexampleSpec};
use qac_core::Circuit;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Width2,
    Line,
}

#[derive(Debug, Subcommand)]
pub enum Kind {
    /// Cat state on a line, n a power of two.
    Cat1d {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
    },
    ParityLine {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
    },
    ParityWidth2 {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
    },
    /// Recursive 2D parity; n must be a power of the base size.
    ParityRecursive {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
        #[arg(long, value_enum, default_value_t = Base::Width2)]
        base: Base,
        #[arg(long, default_value_t = 2)]
        base_n: u16,
    },
    /// Fanout of one bit to 2^k qubits in depth k.
    Fanout {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        k: u16,
    },
    /// Width-2 counterexample; writes the circuit and its CZ-free twin.
    AppendixD {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: f64,
    },
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("circuit");
    path.with_file_name(format!("{stem}{suffix}.json"))
}

fn summary(name: &str, path: &Path, c: &Circuit) -> (String, serde_json::Value) {
    (
        format!("{name}: {} qubits, depth {} -> {}", c.num_qubits(), c.depth(), path.display()),
        json!({
            "path": path.display().to_string(),
            "layout": c.layout.kind_name(),
            "qubits": c.num_qubits(),
            "depth": c.depth(),
            "cz_count": c.cz_count(),
        }),
    )
}

pub fn run(cli: &Cli, kind: &Kind, out: &Output) -> CliResult {
    let path = cli
        .out
        .clone()
        .ok_or_else(|| CliError::Usage("synth needs --out <circuit file>".into()))?;
    let (name, circuit) = match *kind {
        Kind::Cat1d { n } => ("cat1d", synth::cat_1d(n.into())?),
        Kind::ParityLine { n } => ("parity-line", synth::parity_line(n.into())?),
        Kind::ParityWidth2 { n } => ("parity-width2", synth::parity_width2(n.into())?.circuit),
        Kind::ParityRecursive { n, base, base_n } => {
            let base = match base {
                Base::Width2 => synth::parity_width2(base_n.into())?.circuit,
                Base::Line => synth::parity_line(base_n.into())?,
            };
            ("parity-recursive", synth::parity_recursive_2d(n.into(), &base)?)
        }
        Kind::Fanout { k } => ("fanout", synth::restricted_fanout(k.into())?),
        Kind::AppendixD { k, delta } => {
            let ce = synth::appendix_d_counterexample(CounterexampleSpec { k, delta })?;
            let twin = sibling(&path, "_without_cz");
            codec::write_file(&path, &ce.d)?;
            codec::write_file(&twin, &ce.d_without_cz)?;
            let (line, mut fields) = summary("appendix-d", &path, &ce.d);
            fields["kind"] = json!("appendix-d");
            fields["without_cz_path"] = json!(twin.display().to_string());
            fields["predicted_error"] = json!(ce.predicted_error);
            let text = format!(
                "{line}\nwithout final CZ -> {}\npredicted error 4√(δ^k(1−δ^k)) = {}",
                twin.display(),
                ce.predicted_error
            );
            return out.emit("synth", &text, fields);
        }
    };
    codec::write_file(&path, &circuit)?;
    let (text, mut fields) = summary(name, &path, &circuit);
    fields["kind"] = json!(name);
    out.emit("synth", &text, fields)
}
