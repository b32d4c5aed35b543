//! CSV and JSON rendering. Every float is written with 17 significant
//! digits so values round-trip exactly.

use std::io::{self, Write};

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::ser::Formatter;

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Bool(bool),
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) => s.serialize_f64(*v),
            Cell::Int(v) => s.serialize_u64(*v as u64),
            Cell::Bool(v) => s.serialize_bool(*v),
        }
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// serde_json formatter that writes floats through [`format_float`].
struct SigFigs;

impl Formatter for SigFigs {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_float(value).as_bytes())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

struct RowObject<'a> {
    columns: &'a [&'static str],
    cells: &'a [Cell],
}

impl Serialize for RowObject<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.columns.len()))?;
        for (k, v) in self.columns.iter().zip(self.cells) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Header line then one record per row, LF-terminated.
    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }

    /// A JSON array with one object per line.
    pub fn to_json(&self) -> io::Result<Vec<u8>> {
        let mut out = b"[\n".to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.extend_from_slice(b",\n");
            }
            let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigs);
            RowObject {
                columns: &self.columns,
                cells: row,
            }
            .serialize(&mut ser)
            .map_err(io::Error::from)?;
        }
        out.extend_from_slice(b"\n]\n");
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["t", "x", "ok", "n"]);
        t.push(vec![
            Cell::Num(0.25),
            Cell::Num(-1e-300),
            Cell::Bool(true),
            Cell::Int(3),
        ]);
        t.push(vec![
            Cell::Num(0.1),
            Cell::Num(f64::NAN),
            Cell::Bool(false),
            Cell::Int(0),
        ]);
        t
    }

    #[test]
    fn floats_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            -2.5e-17,
            6.02214076e23,
            f64::MIN_POSITIVE,
            33.5,
        ] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_float(0.25), "2.5000000000000000e-1");
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(sample().to_csv().unwrap()).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], "t,x,ok,n");
        assert_eq!(
            lines[1],
            "2.5000000000000000e-1,-1.0000000000000000e-300,true,3"
        );
        assert_eq!(lines.len(), 4);
        assert!(lines[3].is_empty());
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_layout() {
        let text = String::from_utf8(sample().to_json().unwrap()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let rows = value.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["t"].as_f64(), Some(0.25));
        assert_eq!(rows[0]["ok"].as_bool(), Some(true));
        assert_eq!(rows[0]["n"].as_u64(), Some(3));
        assert!(rows[1]["x"].is_null());
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("[\n{\"t\":2.5000000000000000e-1,"));
    }
}
