//! CSV and JSON rendering of tabular results.

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(i64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidInput(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self
            .columns
            .iter()
            .map(|c| csv_field(c))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => csv_field(s),
                    Cell::Num(v) => format_sig(*v, SIG_DIGITS),
                    Cell::Int(i) => i.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of records keyed by column name; numbers carry the same 12
    /// significant digits as the CSV form.
    pub fn to_json(&self) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Text(s) => Value::String(s.clone()),
                        Cell::Int(i) => Value::from(*i),
                        Cell::Num(v) => format_sig(*v, SIG_DIGITS)
                            .parse::<f64>()
                            .ok()
                            .and_then(Number::from_f64)
                            .map_or(Value::Null, Value::Number),
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut s =
            serde_json::to_string_pretty(&Value::Array(records)).expect("json values serialize");
        s.push('\n');
        s
    }
}

pub const SIG_DIGITS: usize = 12;

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Plain decimal with `sig` significant digits, trailing zeros removed.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("exponent digits");
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.994671234567891, 12), "0.994671234568");
        assert_eq!(format_sig(1e-3, 12), "0.001");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(
            format_sig(std::f64::consts::PI / 36.0, 12),
            "0.0872664625997"
        );
        assert_eq!(format_sig(123456789012345.0, 12), "123456789012345");
        assert_eq!(format_sig(-2.5e-7, 12), "-0.00000025");
        assert_eq!(format_sig(0.99999999999999, 12), "1");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(["input", "fidelity"]);
        t.push(vec!["|0ij>, any".into(), 0.5.into()]).unwrap();
        t.push(vec!["|100>".into(), 0.25.into()]).unwrap();
        assert_eq!(
            t.to_csv(),
            "input,fidelity\n\"|0ij>, any\",0.5\n|100>,0.25\n"
        );
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[1]["fidelity"], 0.25);
        assert_eq!(v[0]["input"], "|0ij>, any");
        assert!(t.push(vec![1.0.into()]).is_err());
    }
}
