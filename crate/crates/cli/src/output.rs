use crate::{Cli, CliError, CliResult, Format};
use serde_json::{json, Value};
use std::path::PathBuf;

/// Emits one payload per command: text, or a single JSON report document.
pub struct Output {
    pub format: Format,
    seed: u64,
    report_path: Option<PathBuf>,
}

impl Output {
    pub fn new(cli: &Cli) -> Self {
        Self {
            format: cli.format,
            seed: cli.seed,
            report_path: cli.out.clone(),
        }
    }

    /// Never redirects to --out.
    pub fn into_stdout(mut self) -> Self {
        self.report_path = None;
        self
    }

    /// `fields` must be a JSON object; `command` and `seed` are added to it.
    pub fn emit(&self, command: &str, text: &str, fields: Value) -> CliResult {
        let body = match self.format {
            Format::Text => text.trim_end().to_string() + "\n",
            Format::JsonReport => {
                let mut doc = json!({ "command": command, "seed": self.seed });
                if let (Some(doc), Value::Object(extra)) = (doc.as_object_mut(), fields) {
                    doc.extend(extra);
                }
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Domain(e.to_string()))? + "\n"
            }
        };
        match &self.report_path {
            Some(path) => std::fs::write(path, body)?,
            None => print!("{body}"),
        }
        Ok(())
    }
}

pub fn fmt_set(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}
