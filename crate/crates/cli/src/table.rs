//! Typed CSV tables with a fixed number format.
//!
//! Reals are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64`, so parsing a table and writing it again
//! reproduces the original bytes.

use std::io::{Read, Write};

use serde_json::{Map, Value as Json};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Real(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn opt(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Real)
    }

    pub fn flag(b: bool) -> Self {
        Cell::Int(b as i64)
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Real(x) => format_real(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn parse(field: &str) -> Self {
        if field.is_empty() {
            Cell::Empty
        } else if let Ok(i) = field.parse::<i64>() {
            Cell::Int(i)
        } else if let Ok(x) = field.parse::<f64>() {
            Cell::Real(x)
        } else {
            Cell::Text(field.to_string())
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Cell::Real(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            _ => None,
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Cell::Empty => Json::Null,
            Cell::Real(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Cell::Int(i) => Json::from(*i),
            Cell::Text(s) => Json::from(s.clone()),
        }
    }
}

/// 17 significant digits in scientific notation; `NaN` and `inf` as Rust spells them.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| Ok(rec?.iter().map(Cell::parse).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { header, rows })
    }

    /// One JSON object per row, keyed by column name.
    pub fn to_json(&self) -> Json {
        Json::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Json> = self
                        .header
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    Json::Object(obj)
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut t = Table::new(["t", "r", "flag", "label"]);
        t.push(vec![Cell::Real(0.1), Cell::Real(1.0 / 3.0), Cell::Int(1), Cell::Text("ex1".into())]);
        t.push(vec![Cell::Real(-0.0), Cell::Empty, Cell::Int(0), Cell::Real(f64::NAN)]);
        t.push(vec![Cell::Real(1e-300), Cell::Real(f64::INFINITY), Cell::Int(-3), Cell::Text("a b".into())]);
        let mut first = Vec::new();
        t.write_csv(&mut first).unwrap();
        let back = Table::read_csv(first.as_slice()).unwrap();
        let mut second = Vec::new();
        back.write_csv(&mut second).unwrap();
        assert_eq!(first, second);
        assert_eq!(back.rows[0][1], Cell::Real(1.0 / 3.0));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_real(0.5), "5.0000000000000000e-1");
        assert_eq!(format_real(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
