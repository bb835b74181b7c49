//! Tabular reports rendered as CSV or as a JSON array of objects.

use std::io::Write;

use ricci_core::{Rational, Scalar};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Bool(bool),
    /// Rendered `p/q` (or `p` when integral).
    Exact(Rational),
    /// Rendered with the shortest representation that round-trips.
    Decimal(f64),
    Empty,
}

impl Cell {
    pub fn decimal_of(r: &Rational) -> Self {
        Cell::Decimal(r.to_f64())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Exact(r) => r.to_string(),
            Cell::Decimal(f) => Number::from_f64(*f).map_or_else(|| f.to_string(), |n| n.to_string()),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Exact(r) => Value::String(r.to_string()),
            Cell::Decimal(f) => Number::from_f64(*f).map_or(Value::Null, Value::Number),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Exact(r)
    }
}

impl From<&Rational> for Cell {
    fn from(r: &Rational) -> Self {
        Cell::Exact(r.clone())
    }
}

impl From<f64> for Cell {
    fn from(f: f64) -> Self {
        Cell::Decimal(f)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// A row with `fill` in `column` and every other cell empty except the
    /// leading `keys`.
    pub fn push_error(&mut self, keys: Vec<Cell>, column: &str, fill: Cell) {
        let mut row = keys;
        row.resize(self.columns.len(), Cell::Empty);
        if let Some(i) = self.columns.iter().position(|c| *c == column) {
            row[i] = fill;
        }
        self.rows.push(row);
    }
}

pub fn serialize_report(table: &Table, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.flush()
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| ((*k).to_owned(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ricci_core::rat;

    fn render(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        serialize_report(t, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_csv_is_header_only() {
        let t = Table::new(&["x", "y"]);
        assert_eq!(render(&t, Format::Csv), "x,y\n");
        assert_eq!(render(&t, Format::Json), "[]\n");
    }

    #[test]
    fn cells_render_exactly_and_as_decimals() {
        let mut t = Table::new(&["k", "k_decimal", "flag", "note"]);
        let k = rat(2, 3);
        t.push(vec![(&k).into(), Cell::decimal_of(&k), true.into(), Cell::Empty]);
        assert_eq!(render(&t, Format::Csv), "k,k_decimal,flag,note\n2/3,0.6666666666666666,true,\n");
        let json: Value = serde_json::from_str(&render(&t, Format::Json)).unwrap();
        assert_eq!(json[0]["k"], "2/3");
        assert_eq!(json[0]["flag"], true);
        assert!(json[0]["note"].is_null());
    }

    #[test]
    fn error_rows_fill_one_column() {
        let mut t = Table::new(&["x", "y", "kappa", "case"]);
        t.push_error(vec!["a".into(), "b".into()], "case", "error".into());
        assert_eq!(render(&t, Format::Csv), "x,y,kappa,case\na,b,,error\n");
    }
}
