//! JSON and CSV rendering.
//!
//! JSON documents are `{"command", "params", "rows"}` on one line with every
//! float written to 17 significant digits, so a parse and re-emit reproduces
//! the same bytes.

use std::io;

use pade_core::{ScalarRepr, SupError};
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::Value;

use crate::error::CliError;

struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` with the 17-digit float format.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Io(io::Error::other(e)))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// `(re, im)` cells of a scalar.
pub fn scalar_cells(s: &ScalarRepr) -> [String; 2] {
    match s {
        ScalarRepr::Float { re, im } => [float(*re), float(*im)],
        ScalarRepr::Exact { re, im } => [re.clone(), im.clone()],
    }
}

pub fn sup_cell(s: &SupError) -> String {
    match s {
        SupError::Value(v) => float(*v),
        SupError::Pole => "pole".into(),
        SupError::NotNormal => "not-normal".into(),
    }
}

pub fn opt_cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// A rendered command result.
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub rows: Vec<Value>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Document<'a> {
    command: &'a str,
    params: &'a Value,
    rows: &'a [Value],
}

impl Report {
    pub fn json(&self) -> Result<String, CliError> {
        let mut text = to_json(&Document { command: self.command, params: &self.params, rows: &self.rows })?;
        text.push('\n');
        Ok(text)
    }

    pub fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io_err = |e: csv::Error| CliError::Io(io::Error::other(e));
        w.write_record(&self.csv_header).map_err(io_err)?;
        for row in &self.csv_rows {
            w.write_record(row).map_err(io_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("CSV cells are UTF-8"))
    }
}
