use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
}

/// Scientific notation with 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => sci(*x),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    /// Why the row could not be computed.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Row>,
}

impl Table {
    pub fn write_csv(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.cells.iter().map(Cell::text)).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = Map::new();
                for (k, c) in self.header.iter().zip(&r.cells) {
                    obj.insert((*k).to_string(), c.json());
                }
                if let Some(n) = &r.note {
                    obj.insert("note".into(), Value::String(n.clone()));
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<(), CliError> {
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(n) = &r.note {
                eprintln!("warning: row {i}: {n}");
            }
        }
        match format {
            Format::Csv => with_sink(path, |w| self.write_csv(w)),
            Format::Json => emit_json(&self.to_json(), path),
        }
    }
}

pub fn emit_json(v: &Value, path: Option<&Path>) -> Result<(), CliError> {
    with_sink(path, |mut w| {
        serde_json::to_writer_pretty(&mut w, v).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    })
}

pub fn emit_text(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    with_sink(path, |w| Ok(w.write_all(text.as_bytes())?))
}

fn with_sink(
    path: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}
