//! CSV and JSON writers with a metadata header.
//!
//! CSV files open with `# cohprobe <version>`, then `#! key = value`
//! informational lines and `# key = value` lines holding every flag needed to
//! reproduce the data. Floats are written in shortest round-trip form.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::cli::Format;
use crate::config::MAGIC;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Maybe(Option<f64>),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Self::Num(v) | Self::Maybe(Some(v)) => format!("{v:?}"),
            Self::Maybe(None) => String::new(),
            Self::Bool(b) => b.to_string(),
            Self::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Num(v) | Self::Maybe(Some(v)) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Self::Maybe(None) => Value::Null,
            Self::Bool(b) => Value::Bool(*b),
            Self::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Rows under a versioned column schema.
#[derive(Debug, Clone)]
pub struct Table {
    pub schema: &'static str,
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Default)]
pub struct Metadata {
    /// Descriptive entries, not read back by `--config`.
    pub info: Vec<(String, String)>,
    /// Flags that reproduce the run, `command` first.
    pub flags: Vec<(String, String)>,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        Self {
            info: Vec::new(),
            flags: vec![("command".into(), command.into())],
        }
    }

    pub fn flag(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.flags.push((key.into(), value.to_string()));
        self
    }

    pub fn info(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.info.push((key.into(), value.to_string()));
        self
    }
}

pub fn render(table: &Table, meta: &Metadata, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => render_csv(table, meta),
        Format::Json => render_json(table, meta),
    }
}

fn render_csv(table: &Table, meta: &Metadata) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    writeln!(buf, "{MAGIC} {}", cohprobe::VERSION).expect("write to memory");
    writeln!(buf, "#! schema = {}", table.schema).expect("write to memory");
    for (k, v) in &meta.info {
        writeln!(buf, "#! {k} = {v}").expect("write to memory");
    }
    for (k, v) in &meta.flags {
        writeln!(buf, "# {k} = {v}").expect("write to memory");
    }
    let mut w = csv::Writer::from_writer(buf);
    w.write_record(table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv))?;
    }
    w.into_inner()
        .map_err(|e| CliError::Numerical(format!("csv buffer: {e}")))
}

fn render_json(table: &Table, meta: &Metadata) -> Result<Vec<u8>> {
    let pairs = |v: &[(String, String)]| -> Map<String, Value> {
        v.iter().map(|(k, x)| (k.clone(), Value::String(x.clone()))).collect()
    };
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
        .collect();
    let doc = json!({
        "cohprobe": cohprobe::VERSION,
        "schema": table.schema,
        "info": pairs(&meta.info),
        "flags": pairs(&meta.flags),
        "columns": table.columns,
        "rows": rows,
    });
    let mut buf = serde_json::to_vec_pretty(&doc)?;
    buf.push(b'\n');
    Ok(buf)
}

/// Writes to `path`, or to standard output when it is `None`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout().write_all(bytes).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}
