//! Deterministic emission: CSV with a fixed header row, or a single
//! schema-versioned JSON object with a config echo and a rows array.
//! Every numeric cell is exact (integers or num/den column pairs printed
//! in full); no floating point is ever formatted.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A rectangular report; `None` cells are empty in CSV and `null` in JSON.
pub struct Sheet {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl Sheet {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Sheet {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<String>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, command: &str, config: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(
                        (*name).to_string(),
                        cell.as_ref().map_or(Value::Null, |s| json!(s)),
                    );
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "schema": 1,
            "command": command,
            "config": config,
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("static document")
    }

    pub fn emit(&self, format: Format, command: &str, config: Value) {
        match format {
            Format::Csv => print!("{}", self.to_csv()),
            Format::Json => println!("{}", self.to_json(command, config)),
        }
    }
}

pub fn cell<T: ToString>(v: T) -> Option<String> {
    Some(v.to_string())
}
