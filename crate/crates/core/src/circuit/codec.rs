//! JSON interchange format.

use super::{Ancilla, Circuit, Init, Layer, Layout, MultiCz, SingleQubitGate};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCircuit {
    layout: WireLayout,
    inputs: Vec<usize>,
    #[serde(default)]
    ancilla: Vec<WireAncilla>,
    #[serde(default)]
    layers: Vec<WireLayer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    restriction_report: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireLayout {
    kind: WireKind,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rows: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum WireKind {
    AllToAll,
    Line,
    Lattice,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireAncilla {
    q: usize,
    init: Init,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireLayer {
    #[serde(default)]
    singles: Vec<WireSingle>,
    #[serde(default)]
    czs: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireSingle {
    q: usize,
    u: [[f64; 2]; 4],
}

impl From<&Circuit> for WireCircuit {
    fn from(c: &Circuit) -> Self {
        let layout = match c.layout {
            Layout::AllToAll(n) => WireLayout { kind: WireKind::AllToAll, n, rows: None },
            Layout::Line(n) => WireLayout { kind: WireKind::Line, n, rows: None },
            Layout::Lattice { rows, cols } => WireLayout {
                kind: WireKind::Lattice,
                n: cols,
                rows: Some(rows),
            },
        };
        WireCircuit {
            layout,
            inputs: c.inputs.clone(),
            ancilla: c.ancilla.iter().map(|a| WireAncilla { q: a.q, init: a.init }).collect(),
            layers: c
                .layers
                .iter()
                .map(|l| WireLayer {
                    singles: l
                        .singles
                        .iter()
                        .map(|g| WireSingle {
                            q: g.target,
                            u: g.u.map(|z| [z.re, z.im]),
                        })
                        .collect(),
                    czs: l.czs.iter().map(|g| g.support.clone()).collect(),
                })
                .collect(),
            restriction_report: None,
        }
    }
}

impl TryFrom<WireCircuit> for Circuit {
    type Error = Error;

    fn try_from(w: WireCircuit) -> Result<Circuit> {
        let schema = |path: &str, message: &str| Error::Schema {
            path: path.into(),
            message: message.into(),
        };
        let layout = match (w.layout.kind, w.layout.rows) {
            (WireKind::AllToAll, None) => Layout::AllToAll(w.layout.n),
            (WireKind::Line, None) => Layout::Line(w.layout.n),
            (WireKind::Lattice, Some(rows)) => Layout::Lattice { rows, cols: w.layout.n },
            (WireKind::Lattice, None) => return Err(schema("layout.rows", "lattice layout requires `rows`")),
            (_, Some(_)) => return Err(schema("layout.rows", "`rows` is only valid for lattice layouts")),
        };
        Ok(Circuit {
            layout,
            inputs: w.inputs,
            ancilla: w.ancilla.into_iter().map(|a| Ancilla { q: a.q, init: a.init }).collect(),
            layers: w
                .layers
                .into_iter()
                .map(|l| Layer {
                    singles: l
                        .singles
                        .into_iter()
                        .map(|s| SingleQubitGate::new(s.q, s.u.map(|[re, im]| Complex64::new(re, im))))
                        .collect(),
                    czs: l.czs.into_iter().map(|support| MultiCz { support }).collect(),
                })
                .collect(),
        })
    }
}

fn parse(text: &str) -> Result<WireCircuit> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Decodes without validating; supports are taken as written.
pub fn decode_unchecked(text: &str) -> Result<Circuit> {
    parse(text)?.try_into()
}

/// Decodes and validates.
pub fn from_json(text: &str) -> Result<Circuit> {
    let c = decode_unchecked(text)?;
    c.check()?;
    Ok(c)
}

/// Decodes a circuit and the optional embedded `restriction_report` object.
pub fn from_json_with_report(text: &str) -> Result<(Circuit, Option<serde_json::Value>)> {
    let mut wire = parse(text)?;
    let report = wire.restriction_report.take();
    let c: Circuit = wire.try_into()?;
    c.check()?;
    Ok((c, report))
}

pub fn to_json(c: &Circuit) -> String {
    serde_json::to_string_pretty(&WireCircuit::from(c)).expect("circuit serialization is infallible")
}

pub fn to_json_with_report<R: Serialize>(c: &Circuit, report: &R) -> Result<String> {
    let mut wire = WireCircuit::from(c);
    wire.restriction_report = Some(
        serde_json::to_value(report).map_err(|e| Error::InvalidArgument(e.to_string()))?,
    );
    Ok(serde_json::to_string_pretty(&wire).expect("circuit serialization is infallible"))
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Circuit> {
    from_json(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: impl AsRef<Path>, c: &Circuit) -> Result<()> {
    std::fs::write(path, to_json(c))?;
    Ok(())
}
