//! Records and their JSON-lines, CSV and aligned-text renderings.
//!
//! Reals are carried as [`DoubleDouble`]. At single and double precision they
//! are written as JSON numbers (shortest round-trip form) and with 17
//! significant digits in CSV and text. At extended precision they are
//! written everywhere as the shortest decimal string that parses back to
//! the same double-double value.
//! Complex values become `{"re": …, "im": …}` in JSON and `name_re`,
//! `name_im` columns in CSV.

use std::io::Write;

use gentrig::{DoubleDouble, Real};
use num_complex::Complex;
use serde_json::{Map, Number, Value as Json};

use crate::config::{Format, Precision};
use crate::error::{CliError, CliResult};

type D = DoubleDouble;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Text(String),
    Real(D),
    Complex(D, D),
    List(Vec<String>),
}

impl Value {
    pub fn real<T: Real>(x: T) -> Self {
        let (h, l) = x.parts();
        Value::Real(D::new(h, l))
    }

    pub fn complex<T: Real>(z: Complex<T>) -> Self {
        let (rh, rl) = z.re.parts();
        let (ih, il) = z.im.parts();
        Value::Complex(D::new(rh, rl), D::new(ih, il))
    }

    pub fn opt_real<T: Real>(x: Option<T>) -> Self {
        x.map_or(Value::Null, Value::real)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }
}

/// Named fields in output order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.fields.push((key.to_string(), v));
        self
    }

    pub fn push(&mut self, key: &str, v: Value) {
        self.fields.push((key.to_string(), v));
    }

    pub fn fields(&self) -> &[(String, Value)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

fn real_string(x: D, precision: Precision) -> String {
    if !x.hi().is_finite() {
        return x.hi().to_string();
    }
    match precision {
        Precision::Extended => x.to_roundtrip_string(),
        _ => format!("{:.16e}", x.hi()),
    }
}

fn real_json(x: D, precision: Precision) -> Json {
    match precision {
        Precision::Extended => Json::String(real_string(x, precision)),
        _ => Number::from_f64(x.hi()).map_or_else(|| Json::String(x.hi().to_string()), Json::Number),
    }
}

fn to_json(v: &Value, precision: Precision) -> Json {
    match v {
        Value::Null => Json::Null,
        Value::Bool(b) => Json::Bool(*b),
        Value::Int(i) => Json::from(*i),
        Value::Text(s) => Json::String(s.clone()),
        Value::Real(x) => real_json(*x, precision),
        Value::Complex(re, im) => {
            let mut m = Map::new();
            m.insert("re".into(), real_json(*re, precision));
            m.insert("im".into(), real_json(*im, precision));
            Json::Object(m)
        }
        Value::List(xs) => Json::Array(xs.iter().cloned().map(Json::String).collect()),
    }
}

/// The record as a JSON object with fields in record order.
pub fn record_json(r: &Record, precision: Precision) -> Json {
    Json::Object(r.fields.iter().map(|(k, v)| (k.clone(), to_json(v, precision))).collect())
}

/// Flat `(column, cell)` pairs; complex values take two columns.
fn flat_cells(r: &Record, precision: Precision) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (k, v) in &r.fields {
        match v {
            Value::Complex(re, im) => {
                out.push((format!("{k}_re"), real_string(*re, precision)));
                out.push((format!("{k}_im"), real_string(*im, precision)));
            }
            Value::Null => out.push((k.clone(), String::new())),
            Value::Bool(b) => out.push((k.clone(), b.to_string())),
            Value::Int(i) => out.push((k.clone(), i.to_string())),
            Value::Text(s) => out.push((k.clone(), s.clone())),
            Value::Real(x) => out.push((k.clone(), real_string(*x, precision))),
            Value::List(xs) => out.push((k.clone(), xs.join(" "))),
        }
    }
    out
}

/// Writes records as they arrive (JSON, CSV) or at [`Emitter::finish`] (text).
pub struct Emitter<W: Write> {
    format: Format,
    precision: Precision,
    out: W,
    columns: Option<Vec<String>>,
    pending: Vec<Vec<(String, String)>>,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format, precision: Precision) -> Self {
        Emitter { format, precision, out, columns: None, pending: Vec::new() }
    }

    pub fn emit(&mut self, r: &Record) -> CliResult<()> {
        match self.format {
            Format::Json => {
                let line = serde_json::to_string(&record_json(r, self.precision))
                    .map_err(|e| CliError::Assertion(format!("json encoding: {e}")))?;
                writeln!(self.out, "{line}")?;
            }
            Format::Csv => {
                let cells = flat_cells(r, self.precision);
                if self.columns.is_none() {
                    let cols: Vec<String> = cells.iter().map(|(k, _)| k.clone()).collect();
                    self.write_csv_row(&cols)?;
                    self.columns = Some(cols);
                }
                let cols = self.columns.clone().unwrap_or_default();
                let row: Vec<String> = cols
                    .iter()
                    .map(|c| cells.iter().find(|(k, _)| k == c).map(|(_, v)| v.clone()).unwrap_or_default())
                    .collect();
                self.write_csv_row(&row)?;
            }
            Format::Text => self.pending.push(flat_cells(r, self.precision)),
        }
        Ok(())
    }

    fn write_csv_row(&mut self, row: &[String]) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(row).map_err(|e| CliError::Assertion(format!("csv encoding: {e}")))?;
        let bytes = w.into_inner().map_err(|e| CliError::Assertion(format!("csv encoding: {e}")))?;
        self.out.write_all(&bytes)?;
        Ok(())
    }

    /// Flushes buffered text output and returns the writer.
    pub fn finish(mut self) -> CliResult<W> {
        if self.format == Format::Text {
            let rows = std::mem::take(&mut self.pending);
            match rows.as_slice() {
                [] => {}
                [one] => {
                    let w = one.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                    for (k, v) in one {
                        let v = if v.is_empty() { "-" } else { v };
                        writeln!(self.out, "{k:<w$}  {v}")?;
                    }
                }
                many => {
                    let cols: Vec<String> = many[0].iter().map(|(k, _)| k.clone()).collect();
                    let table: Vec<Vec<String>> = many
                        .iter()
                        .map(|r| {
                            cols.iter()
                                .map(|c| match r.iter().find(|(k, _)| k == c).map(|(_, v)| v.as_str()) {
                                    Some("") | None => "-".to_string(),
                                    Some(v) => v.to_string(),
                                })
                                .collect()
                        })
                        .collect();
                    let widths: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .map(|(i, c)| table.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.chars().count()))
                        .collect();
                    let line = |cells: &[String]| {
                        cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
                    };
                    writeln!(self.out, "{}", line(&cols))?;
                    for r in &table {
                        writeln!(self.out, "{}", line(r))?;
                    }
                }
            }
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format, precision: Precision, rs: &[Record]) -> String {
        let mut e = Emitter::new(Vec::new(), format, precision);
        for r in rs {
            e.emit(r).unwrap();
        }
        String::from_utf8(e.finish().unwrap()).unwrap()
    }

    fn sample() -> Record {
        Record::new()
            .with("fn", Value::text("phi"))
            .with("z", Value::complex(Complex::new(2.0_f64, -0.5)))
            .with("value", Value::real(D::PI))
            .with("error_bound", Value::Null)
    }

    #[test]
    fn json_lines() {
        let s = render(Format::Json, Precision::Double, &[sample(), sample()]);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            r#"{"fn":"phi","z":{"re":2.0,"im":-0.5},"value":3.141592653589793,"error_bound":null}"#
        );
        let s = render(Format::Json, Precision::Extended, &[sample()]);
        let v: Json = serde_json::from_str(&s).unwrap();
        let back: D = v["value"].as_str().unwrap().parse().unwrap();
        assert_eq!(back, D::PI);
    }

    #[test]
    fn csv_columns() {
        let s = render(Format::Csv, Precision::Double, &[sample()]);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("fn,z_re,z_im,value,error_bound"));
        assert_eq!(lines.next(), Some("phi,2.0000000000000000e0,-5.0000000000000000e-1,3.1415926535897931e0,"));
    }

    #[test]
    fn text_layouts() {
        let s = render(Format::Text, Precision::Double, &[sample()]);
        assert!(s.starts_with("fn           phi\n"), "{s}");
        let s = render(Format::Text, Precision::Double, &[sample(), sample()]);
        assert_eq!(s.lines().count(), 3);
    }
}
