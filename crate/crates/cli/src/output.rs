use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use trace_moments::rat_string;
use trace_moments::verify::Check;

use crate::args::Format;

/// Rows for CSV output, with a fixed header.
#[derive(Debug)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn from_checks(checks: &[Check]) -> Self {
        let mut table = Table::new(&["name", "pass", "lhs", "rhs", "params"]);
        for c in checks {
            table.push(vec![
                c.name.clone(),
                c.pass.to_string(),
                rat_string(&c.lhs),
                rat_string(&c.rhs),
                c.params.to_string(),
            ]);
        }
        table
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    #[serde(skip)]
    table: Table,
}

impl Report {
    pub fn new(command: &'static str, params: Value, result: Value, table: Table) -> Self {
        Report {
            command,
            params,
            result,
            checks: Vec::new(),
            table,
        }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.checks = checks;
        self
    }

    /// Verification runs: the result summarizes the checks, and the CSV lists them.
    pub fn for_checks(command: &'static str, params: Value, checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        let result = serde_json::json!({
            "checks": checks.len(),
            "failed": failed,
            "pass": failed == 0,
        });
        let table = Table::from_checks(&checks);
        Report {
            command,
            params,
            result,
            checks,
            table,
        }
    }

    pub fn write(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        let mut sink: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, self)?;
                writeln!(sink)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut sink);
                w.write_record(&self.table.header)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        sink.flush()
    }
}
