//! CSV and JSON rendering of run results.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::Result;
use crate::run::RunOutput;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// CSV with `#`-prefixed metadata lines before the header and a `#` footer.
pub fn render_csv(out: &RunOutput) -> String {
    let m = &out.metadata;
    let mut s = String::new();
    s.push_str(&format!("# {} {}\n", m.tool, m.version));
    s.push_str(&format!("# mode: {}\n", m.mode));
    s.push_str(&format!("# length_unit: {}\n", m.length_unit));
    if let Some(g) = &m.grid {
        s.push_str(&format!("# grid: {}\n", serde_json::to_string(g).unwrap_or_default()));
    }
    for w in &m.warnings {
        s.push_str(&format!("# warning: {w}\n"));
    }
    s.push_str("# config:\n");
    for line in m.config.lines() {
        s.push_str(&format!("#   {line}\n"));
    }
    s.push_str(&out.columns.join(","));
    s.push('\n');
    for row in &out.rows {
        let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    for (k, v) in &out.footer {
        s.push_str(&format!("# {k}: {}\n", format_value(*v)));
    }
    s
}

/// One JSON document: metadata, column arrays in table order, footer.
pub fn render_json(out: &RunOutput) -> String {
    let mut columns = Map::new();
    for (i, name) in out.columns.iter().enumerate() {
        let col: Vec<Value> = out.rows.iter().map(|r| json!(r[i])).collect();
        columns.insert((*name).to_string(), Value::Array(col));
    }
    let mut footer = Map::new();
    for (k, v) in &out.footer {
        footer.insert((*k).to_string(), json!(v));
    }
    let doc = json!({
        "metadata": out.metadata,
        "columns": columns,
        "footer": footer,
    });
    let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
    s.push('\n');
    s
}

pub fn render(out: &RunOutput, format: Format) -> String {
    match format {
        Format::Csv => render_csv(out),
        Format::Json => render_json(out),
    }
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn write(out: &RunOutput, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(out, format);
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
