//! Output directory layout, atomic file writes, and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::CliError;

/// Environment variable overriding the default output root.
pub const OUT_ROOT_ENV: &str = "DISCORD_SCOPE_OUT";

/// Resolve the output directory: an explicit `--out` wins; otherwise
/// `<root>/<command>/<timestamp>/` under the env-configured or default root.
pub fn resolve_out_dir(explicit: Option<&Path>, command: &str) -> Result<PathBuf, CliError> {
    let dir = match explicit {
        Some(d) => d.to_path_buf(),
        None => {
            let root = std::env::var_os(OUT_ROOT_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("out"));
            let stamp = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0);
            root.join(command).join(format!("{stamp}"))
        }
    };
    fs::create_dir_all(&dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

/// Write a file atomically: contents land under a temporary name in the
/// same directory and are renamed into place, so a failed run never leaves
/// a partial output behind.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    {
        let mut f =
            fs::File::create(&tmp).map_err(|e| CliError::io(format!("{}: {e}", tmp.display())))?;
        f.write_all(contents)
            .map_err(|e| CliError::io(format!("{}: {e}", tmp.display())))?;
        f.sync_all()
            .map_err(|e| CliError::io(format!("{}: {e}", tmp.display())))?;
    }
    fs::rename(&tmp, path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::io(format!("serialize {}: {e}", path.display())))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Incrementally built CSV document with a fixed header.
pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Csv {
        Csv {
            buf: format!("{}\n", header.join(",")),
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[CsvField]) {
        assert_eq!(fields.len(), self.columns, "csv row arity");
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            match f {
                CsvField::Float(v) => {
                    // Shortest round-trip representation; '.' decimal point,
                    // locale-independent.
                    self.buf.push_str(&format!("{v}"));
                }
                CsvField::Int(v) => self.buf.push_str(&format!("{v}")),
                CsvField::Bool(v) => self.buf.push_str(if *v { "1" } else { "0" }),
                CsvField::Str(s) => self.buf.push_str(s),
            }
        }
        self.buf.push('\n');
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, self.buf.as_bytes())
    }
}

pub enum CsvField<'a> {
    Float(f64),
    Int(i64),
    Bool(bool),
    #[allow(dead_code)]
    Str(&'a str),
}

/// Provenance record written next to every command's outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub spec_path: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
    pub tool_version: String,
    pub wall_time_ms: u128,
}

impl RunManifest {
    pub fn new(command: &str, spec_path: &Path, parameters: serde_json::Value) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            spec_path: spec_path.display().to_string(),
            parameters,
            seed: None,
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: 0,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        write_json(&dir.join("manifest.json"), self)
    }
}
