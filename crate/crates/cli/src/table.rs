//! Row tables with CSV and JSON emission.

use std::io::Write;

use num_bigint::BigUint;
use serde_json::{Map, Number, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(String),
    Real(f64),
    Bool(bool),
    Str(String),
    Empty,
}

impl Cell {
    pub fn int(n: impl ToString) -> Cell {
        Cell::Int(n.to_string())
    }

    pub fn big(n: &BigUint) -> Cell {
        Cell::Int(n.to_string())
    }

    pub fn str(s: impl ToString) -> Cell {
        Cell::Str(s.to_string())
    }

    pub fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Cell) -> Cell {
        v.map_or(Cell::Empty, f)
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Str(s) => s.clone(),
            Cell::Real(x) => real(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(s) => s
                .parse::<Number>()
                .map_or(Value::String(s.clone()), Value::Number),
            Cell::Real(x) if x.is_finite() => real(*x)
                .parse::<Number>()
                .map_or(Value::Null, Value::Number),
            Cell::Real(x) => Value::String(real(*x)),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Twelve significant digits, positional notation for moderate magnitudes.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.11e}");
    let rounded: f64 = sci.parse().expect("formatted float parses");
    if (1e-4..1e15).contains(&rounded.abs()) {
        rounded.to_string()
    } else {
        let (mantissa, exp) = sci.split_once('e').expect("scientific");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        w.flush()
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &rows)?;
        writeln!(out)
    }
}
