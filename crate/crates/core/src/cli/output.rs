use std::fmt::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

use super::args::Format;
use super::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::ARTIFACT_VERSION;

/// Tabular results plus structured results and diagnostics.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub results: Value,
    pub diagnostics: Value,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
            results: Value::Null,
            diagnostics: json!({}),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Rows as an array of objects keyed by column, for the json form.
    pub fn rows_json(&self) -> Value {
        let rows = self.rows.iter().map(|r| {
            let obj = self.columns.iter().zip(r).map(|(c, v)| {
                let val = v
                    .parse::<f64>()
                    .map(Value::from)
                    .unwrap_or_else(|_| Value::from(v.as_str()));
                (c.to_string(), val)
            });
            Value::Object(obj.collect())
        });
        Value::Array(rows.collect())
    }
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// CSV form: `#` header lines (version, timestamp, config, diagnostics), then the table.
pub fn render_csv(cfg: &ExperimentConfig, report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {ARTIFACT_VERSION}");
    let _ = writeln!(out, "# generated_unix: {}", timestamp());
    let _ = writeln!(
        out,
        "# config: {}",
        serde_json::to_string(cfg).unwrap_or_default()
    );
    let _ = writeln!(
        out,
        "# diagnostics: {}",
        serde_json::to_string(&report.diagnostics).unwrap_or_default()
    );
    let _ = writeln!(out, "{}", report.columns.join(","));
    for r in &report.rows {
        let _ = writeln!(out, "{}", r.join(","));
    }
    out
}

/// JSON form: a single object `{config, results, diagnostics}`.
pub fn render_json(cfg: &ExperimentConfig, report: &Report) -> String {
    let results = if report.results.is_null() {
        report.rows_json()
    } else {
        report.results.clone()
    };
    let mut diagnostics = report.diagnostics.clone();
    if let Value::Object(map) = &mut diagnostics {
        map.insert("artifact_version".into(), ARTIFACT_VERSION.into());
        map.insert("generated_unix".into(), timestamp().into());
    }
    let doc = json!({ "config": cfg, "results": results, "diagnostics": diagnostics });
    let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
    s.push('\n');
    s
}

pub fn render(cfg: &ExperimentConfig, report: &Report) -> String {
    match cfg.output.format {
        Format::Csv => render_csv(cfg, report),
        Format::Json => render_json(cfg, report),
    }
}

/// Writes `text` to `path` through a temporary file, or to stdout.
pub fn emit(path: Option<&str>, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(format!("cannot write output: {e}"));
    match path {
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(io)
        }
        Some(p) => {
            let p = Path::new(p);
            let tmp = p.with_extension(format!("partial-{}", std::process::id()));
            std::fs::write(&tmp, text).map_err(io)?;
            std::fs::rename(&tmp, p).map_err(io)
        }
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
