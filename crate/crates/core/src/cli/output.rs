//! CSV and JSON emission. Every CSV starts with the schema line
//! [`SCHEMA_LINE`], then `#` metadata lines, then a header row.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SCHEMA_LINE: &str = "# buffon-convex v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A table row with a fixed column order.
pub trait Row {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Shortest round-tripping decimal; identical on every run and platform.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

pub fn write_csv<R: Row, W: Write>(out: W, metadata: &[String], rows: &[R]) -> Result<()> {
    let mut out = out;
    writeln!(out, "{SCHEMA_LINE}").map_err(io_err)?;
    for line in metadata {
        writeln!(out, "# {line}").map_err(io_err)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::header()).map_err(io_err)?;
    for row in rows {
        w.write_record(row.fields()).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

pub fn write_rows<R: Row + Serialize, W: Write>(
    out: W,
    format: Format,
    metadata: &[String],
    rows: &[R],
) -> Result<()> {
    match format {
        Format::Csv => write_csv(out, metadata, rows),
        Format::Json => write_json(out, rows),
    }
}

pub fn to_csv_string<R: Row>(metadata: &[String], rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, metadata, rows).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}
