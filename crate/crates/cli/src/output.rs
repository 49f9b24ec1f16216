use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::args::Command;

pub const PROVENANCE_PREFIX: &str = "# provenance: ";

/// Enough to regenerate an artifact: tool version and the full command
/// configuration, seeds included.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config: Command,
}

impl Provenance {
    pub fn new(config: &Command) -> Self {
        Self {
            tool: "cylmob".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(self).expect("provenance serializes")
    }
}

/// A command result. JSON bodies are pre-rendered so field order is kept.
pub enum Artifact {
    Json(String),
    /// CSV or plain text; extra `#` comment lines go after the provenance line.
    Text { comments: Vec<String>, body: String },
}

impl Artifact {
    pub fn json<T: Serialize>(value: &T) -> Self {
        Artifact::Json(serde_json::to_string(value).expect("records serialize"))
    }

    pub fn text(body: String) -> Self {
        Artifact::Text { comments: Vec::new(), body }
    }
}

/// JSON to stdout stays a bare record with the provenance line on stderr;
/// JSON files wrap the record as `{"provenance": …, "result": …}`. Text
/// artifacts always start with the provenance comment line.
pub fn emit(artifact: &Artifact, provenance: &Provenance, out: Option<&Path>) -> Result<()> {
    let header = format!("{PROVENANCE_PREFIX}{}", provenance.to_json());
    let (stdout_text, file_text) = match artifact {
        Artifact::Json(body) => (
            format!("{body}\n"),
            format!("{{\"provenance\":{},\"result\":{body}}}\n", provenance.to_json()),
        ),
        Artifact::Text { comments, body } => {
            let mut text = format!("{header}\n");
            for c in comments {
                text.push_str("# ");
                text.push_str(c);
                text.push('\n');
            }
            text.push_str(body);
            (text.clone(), text)
        }
    };
    match out {
        Some(path) => fs::write(path, file_text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            if matches!(artifact, Artifact::Json(_)) {
                eprintln!("{header}");
            }
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(stdout_text.as_bytes()).context("writing stdout")?;
        }
    }
    Ok(())
}

/// Recovers the configuration from a JSON envelope or a text artifact.
pub fn read_provenance(path: &Path) -> Result<Provenance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        #[derive(Deserialize)]
        struct Envelope {
            provenance: Provenance,
        }
        let env: Envelope = serde_json::from_str(trimmed).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
        return Ok(env.provenance);
    }
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix(PROVENANCE_PREFIX))
        .ok_or_else(|| bad_input(format!("{} has no provenance header", path.display())))?;
    serde_json::from_str(line).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn bad_input(msg: String) -> anyhow::Error {
    cylmob::Error::Parse(msg).into()
}

/// 2 for invalid input, 3 for an exceeded budget, 4 for I/O, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<cylmob::Error>() {
            return match e {
                cylmob::Error::BudgetExceeded { .. } => 3,
                cylmob::Error::Parse(_)
                | cylmob::Error::InvalidParameters(_)
                | cylmob::Error::DimensionMismatch { .. }
                | cylmob::Error::ShapeMismatch { .. } => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 4;
        }
    }
    1
}
