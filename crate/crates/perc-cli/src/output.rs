//! Output plumbing: CSV/JSON writers with a reproducibility header.
//!
//! Every output file begins with comment lines carrying the tool version,
//! the fully resolved configuration and the seed, so a file identifies the
//! run that produced it. Bare rows go to stdout when no file is requested.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Resolved run configuration echoed into output headers.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub seed: u64,
}

impl RunContext {
    pub fn new(command: &str, seed: u64) -> Self {
        Self { command: command.to_string(), config: Vec::new(), seed }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    fn config_line(&self) -> String {
        self.config
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn header_lines(&self) -> Vec<String> {
        vec![
            format!("# perc {VERSION}"),
            format!("# command: {}", self.command),
            format!("# config: {}", self.config_line()),
            format!("# seed: {}", self.seed),
        ]
    }

    pub fn meta_json(&self) -> serde_json::Value {
        let config: serde_json::Map<String, serde_json::Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::json!({
            "version": VERSION,
            "command": self.command,
            "config": config,
            "seed": self.seed,
        })
    }
}

/// Writes header + column line + rows to the file; when no path is given,
/// only the rows go to stdout.
pub fn write_csv(
    path: Option<&Path>,
    ctx: &RunContext,
    columns: &[&str],
    rows: &[Vec<String>],
) -> io::Result<()> {
    match path {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            for line in ctx.header_lines() {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", columns.join(","))?;
            for row in rows {
                writeln!(out, "{}", row.join(","))?;
            }
            out.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for row in rows {
                writeln!(out, "{}", row.join(","))?;
            }
            Ok(())
        }
    }
}

/// Writes {"meta": ..., "report": ...}; pretty-printed to files, compact to
/// stdout.
pub fn write_json(
    path: Option<&Path>,
    ctx: &RunContext,
    report: serde_json::Value,
) -> io::Result<()> {
    let doc = serde_json::json!({ "meta": ctx.meta_json(), "report": report });
    match path {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
            out.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            serde_json::to_writer(&mut out, &doc)?;
            writeln!(out)?;
            Ok(())
        }
    }
}
