use crate::output::Output;
use crate::{Cli, CliError, CliResult};
use num_complex::Complex64;
use qac_core::circuit::codec;
use qac_core::compile::{embed_circuit_2d, DEPTH_FACTOR};
use qac_core::sim::{run_state, Register, SimConfig, SparseState, StateVector};
use qac_core::Circuit;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;
use std::collections::HashMap;
use std::path::PathBuf;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// All-to-all circuit file.
    pub input: PathBuf,
    /// Check fidelity against the source circuit on seeded random states.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 10)]
    pub states: usize,
}

/// Row-0 amplitudes with every lattice ancilla in |1⟩.
fn embed(amps: &[Complex64], n: usize) -> SparseState {
    let anc = ((1u128 << (n * (n + 1))) - 1) & !((1u128 << n) - 1);
    let map: HashMap<u128, Complex64> = amps.iter().enumerate().map(|(i, &a)| (i as u128 | anc, a)).collect();
    SparseState::from_map(n * (n + 1), map)
}

fn min_fidelity(c: &Circuit, compiled: &Circuit, cli: &Cli, states: usize) -> CliResult<f64> {
    let n = c.num_qubits();
    if n * (n + 1) > 128 {
        return Err(CliError::Domain(format!("verification supports n ≤ 10, got {n}")));
    }
    let cfg = SimConfig { qubit_cap: cli.qubit_cap };
    let mut rng = StdRng::seed_from_u64(cli.seed);
    let mut worst = 1.0f64;
    for _ in 0..states {
        let mut v: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        let want = run_state(c, StateVector::from_amps(v.clone())?, &cfg)?;
        let mut got = embed(&v, n);
        got.apply_layers(&compiled.layers);
        worst = worst.min(embed(want.amps(), n).inner(&got)?.norm_sqr());
    }
    Ok(worst)
}

pub fn run(cli: &Cli, args: &Args, out: &Output) -> CliResult {
    let path = cli
        .out
        .clone()
        .ok_or_else(|| CliError::Usage("compile needs --out <circuit file>".into()))?;
    let c = codec::read_file(&args.input)?;
    let compiled = embed_circuit_2d(&c)?;
    codec::write_file(&path, &compiled)?;
    let d = c.depth();
    let mut text = format!(
        "compiled depth {} = {DEPTH_FACTOR}·{d} on {} qubits -> {}",
        compiled.depth(),
        compiled.num_qubits(),
        path.display()
    );
    let mut fields = json!({
        "input": args.input.display().to_string(),
        "path": path.display().to_string(),
        "input_depth": d,
        "depth": compiled.depth(),
        "depth_factor": DEPTH_FACTOR,
        "qubits": compiled.num_qubits(),
        "cz_count": compiled.cz_count(),
    });
    if args.verify {
        let f = min_fidelity(&c, &compiled, cli, args.states)?;
        let ok = f >= 1.0 - cli.tol;
        text += &format!("\nverify: min fidelity {f:.12} over {} states ({})", args.states, if ok { "ok" } else { "FAILED" });
        fields["verify"] = json!({ "states": args.states, "min_fidelity": f, "tol": cli.tol, "ok": ok });
        out.emit("compile", &text, fields)?;
        if !ok {
            return Err(CliError::Domain(format!("fidelity {f} below 1 − {}", cli.tol)));
        }
        return Ok(());
    }
    out.emit("compile", &text, fields)
}
