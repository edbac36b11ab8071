use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Where and how a command writes its result.
pub struct Sink {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub timestamp: bool,
}

/// A command result: the JSON body plus a CSV table.
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Sink {
    pub fn emit(&self, report: &Report) -> std::io::Result<()> {
        let text = match self.format {
            Format::Json => {
                let mut v = json!({
                    "command": report.command,
                    "params": report.params,
                    "result": report.result,
                });
                if self.timestamp {
                    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
                    v["generated_at_unix"] = json!(secs);
                }
                serde_json::to_string_pretty(&v)? + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&report.header)?;
                for r in &report.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv writes utf-8")
            }
        };
        match &self.out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

/// Merges rows with differing column sets, keeping first-seen column order
/// and leaving absent cells empty.
pub fn union_table(tables: Vec<(Vec<String>, Vec<String>)>) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header: Vec<String> = Vec::new();
    for (h, _) in &tables {
        for c in h {
            if !header.contains(c) {
                header.push(c.clone());
            }
        }
    }
    let rows = tables
        .into_iter()
        .map(|(h, r)| {
            header
                .iter()
                .map(|c| h.iter().position(|x| x == c).map_or_else(String::new, |i| r[i].clone()))
                .collect()
        })
        .collect();
    (header, rows)
}
