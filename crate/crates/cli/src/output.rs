//! Output records: a self-describing header and a table of rows, written as
//! CSV (with `#` header lines) or JSON `{"header": {...}, "rows": [...]}`.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub theory: String,
    /// λ (oscillator) or g (Coulomb).
    pub coupling: f64,
    pub kappa0: f64,
    pub zeta: Option<f64>,
    pub zeta_s: Option<f64>,
    pub zeta_a: Option<f64>,
    pub tol: f64,
    pub columns: Vec<String>,
    /// Command-specific scalars, e.g. the energy of a sampled state.
    pub meta: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record<R> {
    pub header: Header,
    pub rows: Vec<R>,
}

/// `spectrum` rows: kind is `level`, `density` or `atom`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub kind: String,
    pub n: Option<usize>,
    pub energy: f64,
    /// Q²ₙ of a level or the mass of the atom.
    pub weight: Option<f64>,
    pub density: Option<f64>,
    /// `even` or `odd` for full-line extensions.
    pub parity: Option<String>,
    pub multiplicity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub energy: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionRow {
    pub position: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreenRow {
    pub re_w: f64,
    pub im_w: f64,
    pub p1: f64,
    pub p2: f64,
    pub re_g: f64,
    pub im_g: f64,
}

pub fn columns<R: Serialize>(sample: &R) -> Vec<String> {
    match serde_json::to_value(sample) {
        Ok(Value::Object(m)) => m.keys().cloned().collect(),
        _ => Vec::new(),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn header_value(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        other => cell(other),
    }
}

impl<R: Serialize> Record<R> {
    pub fn write_json(&self, mut w: impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)
    }

    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        let header = serde_json::to_value(&self.header)?;
        if let Value::Object(m) = header {
            for (k, v) in m {
                match (k.as_str(), v) {
                    ("columns", _) => {}
                    ("meta", Value::Object(meta)) => {
                        for (mk, mv) in meta {
                            writeln!(w, "# {mk}: {}", header_value(&mv))?;
                        }
                    }
                    (_, v) => writeln!(w, "# {k}: {}", header_value(&v))?,
                }
            }
        }
        let mut out = csv::Writer::from_writer(&mut w);
        out.write_record(&self.header.columns)?;
        for row in &self.rows {
            let cells: Vec<String> = match serde_json::to_value(row)? {
                Value::Object(m) => m.values().map(cell).collect(),
                other => vec![cell(&other)],
            };
            out.write_record(&cells)?;
        }
        out.flush()?;
        Ok(())
    }
}
