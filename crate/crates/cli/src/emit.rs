//! One result, rendered as text, JSON or CSV.

use clap::ValueEnum;
use freeprob::scalar::decimal_string;
use freeprob::{Rational, Scalar};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Emission {
    pub text: String,
    pub json: Value,
    /// Header row first.
    pub csv: Vec<Vec<String>>,
}

fn reprs(v: &[Rational]) -> Vec<String> {
    v.iter().map(Scalar::to_repr).collect()
}

fn decimals(v: &[Rational], d: usize) -> Vec<String> {
    v.iter().map(|x| decimal_string(x, d)).collect()
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn join(v: &[String]) -> String {
    v.join(",")
}

impl Emission {
    pub fn new(text: String, json: Value, csv: Vec<Vec<String>>) -> Self {
        Emission { text, json, csv }
    }

    /// Values indexed from `start`; CSV has one index per row.
    pub fn sequence(index: &str, column: &str, start: usize, v: &[Rational], decimal: Option<usize>) -> Self {
        let plain: Vec<String> = v.iter().map(ToString::to_string).collect();
        let mut text = join(&plain);
        let mut header = vec![index.to_string(), column.to_string()];
        let json = match decimal {
            Some(d) => {
                text.push('\n');
                text.push_str(&join(&decimals(v, d)));
                header.push("decimal".into());
                json!({ "exact": reprs(v), "decimal": decimals(v, d) })
            }
            None => json!(reprs(v)),
        };
        let mut csv = vec![header];
        for (i, x) in v.iter().enumerate() {
            let mut row = vec![(start + i).to_string(), x.to_repr()];
            if let Some(d) = decimal {
                row.push(decimal_string(x, d));
            }
            csv.push(row);
        }
        Emission { text, json, csv }
    }

    pub fn scalar(name: &str, x: &Rational, decimal: Option<usize>) -> Self {
        let mut text = x.to_string();
        let mut csv = vec![vec![name.to_string()], vec![x.to_repr()]];
        let json = match decimal {
            Some(d) => {
                text = format!("{text}\n{}", decimal_string(x, d));
                csv[0].push("decimal".into());
                csv[1].push(decimal_string(x, d));
                json!({ name: x.to_repr(), "decimal": decimal_string(x, d) })
            }
            None => json!({ name: x.to_repr() }),
        };
        Emission { text, json, csv }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Csv => self
                .csv
                .iter()
                .map(|row| row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n"),
        };
        out.push('\n');
        out
    }
}
