//! CSV and JSON rendering with a metadata header on every document.
//!
//! CSV: `# key: value` header lines, one header row, one record per line.
//! JSON: `{"metadata": {...}, "columns": [...], "records": [{...}, ...]}`
//! holding the same records.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig, SCHEMA_VERSION};
use crate::{CliError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    /// File stem, e.g. `probabilities` or `frame_t5`.
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Units line echoed in the header.
    pub units: String,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str], units: impl Into<String>) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            units: units.into(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Values of one column.
    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

/// `f64` as a JSON number; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub program: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub scenario: String,
    pub config_sha256: String,
    pub units: String,
    pub content: String,
}

impl Metadata {
    pub fn for_table(config: &RunConfig, table: &Table) -> Self {
        Metadata {
            program: "sudden-quench",
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            scenario: config.scenario.to_string(),
            config_sha256: config.hash(),
            units: table.units.clone(),
            content: table.name.clone(),
        }
    }

    fn pairs(&self) -> [(&'static str, String); 7] {
        [
            ("program", self.program.to_string()),
            ("version", self.version.to_string()),
            ("schema_version", self.schema_version.to_string()),
            ("scenario", self.scenario.clone()),
            ("config_sha256", self.config_sha256.clone()),
            ("units", self.units.clone()),
            ("content", self.content.clone()),
        ]
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => "nan".into(),
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(table: &Table, meta: &Metadata, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for (k, v) in meta.pairs() {
                out.push_str(&format!("# {k}: {v}\n"));
            }
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(csv_cell).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = table.columns.iter().cloned().zip(row.iter().cloned()).collect();
                    Value::Object(obj)
                })
                .collect();
            let doc = serde_json::json!({
                "metadata": meta,
                "columns": table.columns,
                "records": records,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
            s.push('\n');
            s
        }
    }
}

/// Write every table to `dir` as `<name>.<ext>`, or concatenate them on
/// standard output when `dir` is `None`.
pub fn emit(tables: &[Table], config: &RunConfig, dir: Option<&Path>) -> Result<()> {
    let rendered: Vec<(String, String)> = tables
        .iter()
        .map(|t| (format!("{}.{}", t.name, config.format.extension()), render(t, &Metadata::for_table(config, t), config.format)))
        .collect();
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|source| CliError::Io { context: format!("creating {}", dir.display()), source })?;
            for (file, body) in rendered {
                let path = dir.join(file);
                std::fs::write(&path, body)
                    .map_err(|source| CliError::Io { context: format!("writing {}", path.display()), source })?;
            }
        }
        None => {
            let bodies: Vec<String> = rendered.into_iter().map(|(_, b)| b).collect();
            print!("{}", bodies.join("\n"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scenario;

    fn sample() -> (Table, Metadata) {
        let mut t = Table::new("probabilities", &["kappa", "label", "p"], "hbar=1");
        t.push(vec![num(0.5), Value::from("a,b"), num(0.25)]);
        t.push(vec![num(1.0), Value::from("c"), num(f64::NAN)]);
        let meta = Metadata::for_table(&RunConfig::new(Scenario::Pt), &t);
        (t, meta)
    }

    #[test]
    fn csv_has_header_and_records() {
        let (t, meta) = sample();
        let csv = render(&t, &meta, Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.iter().filter(|l| l.starts_with("# ")).count(), 7);
        assert!(csv.contains("# schema_version: 1\n"));
        assert_eq!(lines[7], "kappa,label,p");
        assert_eq!(lines[8], "0.5,\"a,b\",0.25");
        assert_eq!(lines[9], "1.0,c,nan");
    }

    #[test]
    fn json_mirrors_csv_records() {
        let (t, meta) = sample();
        let doc: Value = serde_json::from_str(&render(&t, &meta, Format::Json)).unwrap();
        assert_eq!(doc["metadata"]["content"], "probabilities");
        assert_eq!(doc["records"].as_array().unwrap().len(), 2);
        assert_eq!(doc["records"][0]["p"], 0.25);
        assert!(doc["records"][1]["p"].is_null());
        assert_eq!(t.column("kappa").unwrap().len(), 2);
    }
}
