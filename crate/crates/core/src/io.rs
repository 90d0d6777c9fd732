//! Tabular output in CSV or JSON, and parsing back.
//!
//! CSV layout: `# key=value` metadata lines, one header line of column
//! names, then one line per row with every value printed as `{:.16e}`
//! (17 significant digits, so each `f64` round-trips exactly).
//!
//! JSON layout: `{"metadata": {...}, "columns": [...], "rows": [[...], ...]}`
//! with numbers in shortest round-trip form and non-finite values as `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (csv, json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            metadata: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut metadata = BTreeMap::new();
        let mut lines = text.lines().filter(|l| !l.trim().is_empty()).peekable();
        while let Some(line) = lines.peek() {
            let Some(rest) = line.strip_prefix('#') else {
                break;
            };
            let (k, v) = rest
                .trim()
                .split_once('=')
                .ok_or_else(|| Error::Grid(format!("malformed metadata line '{line}'")))?;
            metadata.insert(k.to_string(), v.to_string());
            lines.next();
        }
        let header = lines
            .next()
            .ok_or_else(|| Error::Grid("missing header line".into()))?;
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let rows = lines
            .map(|line| {
                let row = line
                    .split(',')
                    .map(|f| f.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<f64>, _>>()
                    .map_err(|e| Error::Grid(format!("bad number in '{line}': {e}")))?;
                if row.len() != columns.len() {
                    return Err(Error::Grid(format!(
                        "row has {} fields, expected {}",
                        row.len(),
                        columns.len()
                    )));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            metadata,
            columns,
            rows,
        })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            metadata: BTreeMap<String, String>,
            columns: Vec<String>,
            rows: Vec<Vec<Option<f64>>>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| Error::Grid(format!("bad JSON table: {e}")))?;
        Ok(Self {
            metadata: raw.metadata,
            columns: raw.columns,
            rows: raw
                .rows
                .into_iter()
                .map(|r| r.into_iter().map(|v| v.unwrap_or(f64::NAN)).collect())
                .collect(),
        })
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Csv => Self::parse_csv(text),
            Format::Json => Self::parse_json(text),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["x", "w"]).meta("alpha", 1.5).meta("seed", 7);
        t.push(vec![0.1, 1.0 / 3.0]);
        t.push(vec![-2.5e-300, f64::MAX]);
        t
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = sample();
        let back = Table::parse_csv(&t.to_csv()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let t = sample();
        assert_eq!(Table::parse_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn csv_uses_seventeen_digits() {
        let csv = sample().to_csv();
        assert!(csv.contains("3.3333333333333331e-1"));
        assert!(csv.starts_with("# alpha=1.5\n# seed=7\nx,w\n"));
    }
}
