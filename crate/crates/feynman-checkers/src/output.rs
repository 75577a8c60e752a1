//! Machine-readable table output: CSV (17 significant digits) and JSON
//! (records plus a metadata header). All emitters are deterministic:
//! repeated runs produce byte-identical output.

use std::collections::BTreeMap;
use std::io::Write;

use serde_json::json;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

/// Floats with 17 significant digits (exact f64 round trip).
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A named-column table with optional run metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: BTreeMap<String, String>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let records: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (c, cell) in self.columns.iter().zip(row) {
                    obj.insert((*c).into(), cell.json());
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "meta": self.meta,
            "rows": records,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }
}

/// Standard amplitude-row schema shared by `amplitude` and `grid`.
pub fn amplitude_table(m: f64, eps: f64) -> Table {
    Table::new(vec!["ix", "it", "m", "eps", "a1", "a2", "P"])
        .with_meta("m", format_float(m))
        .with_meta("eps", format_float(eps))
}

/// Appends one amplitude row in the standard schema.
pub fn push_amplitude_row(table: &mut Table, ix: i64, it: i64, m: f64, eps: f64, a1: f64, a2: f64) {
    table.push(vec![
        Cell::Int(ix),
        Cell::Int(it),
        Cell::Float(m),
        Cell::Float(eps),
        Cell::Float(a1),
        Cell::Float(a2),
        Cell::Float(a1 * a1 + a2 * a2),
    ]);
}
