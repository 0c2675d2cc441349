//! Study tables read from CSV.

use std::fs::File;
use std::path::Path;

use svalue::combine::StudyResult;
use svalue::PValue;

use crate::error::{CliError, CliResult};

pub const P_COLUMNS: [&str; 2] = ["id", "p"];
pub const EFFECT_COLUMNS: [&str; 3] = ["id", "estimate", "std_error"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    P,
    Effect,
}

impl Schema {
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Schema::P => &P_COLUMNS,
            Schema::Effect => &EFFECT_COLUMNS,
        }
    }
}

fn parse_number(raw: &str, column: &str, line: u64) -> CliResult<f64> {
    raw.trim().parse().map_err(|_| {
        CliError::usage(format!(
            "line {line}: column `{column}` is not a number: `{raw}`"
        ))
    })
}

/// Reads a study table and checks it against `schema`.
pub fn read_studies(path: &Path, schema: Schema, method: &str) -> CliResult<Vec<StudyResult>> {
    let file = File::open(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file);
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let found: Vec<&str> = headers.iter().map(str::trim).collect();
    let expected = schema.columns();
    if found != expected {
        return Err(CliError::usage(format!(
            "{} does not match the input schema for --method {method}: expected columns `{}`, found `{}`",
            path.display(),
            expected.join(","),
            found.join(",")
        )));
    }

    let mut studies = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let id = record[0].trim().to_string();
        let study = match schema {
            Schema::P => {
                let p = PValue::new(parse_number(&record[1], "p", line)?)
                    .map_err(|e| CliError::usage(format!("line {line}: {e}")))?;
                StudyResult::with_p(id, p)
            }
            Schema::Effect => {
                let estimate = parse_number(&record[1], "estimate", line)?;
                let std_error = parse_number(&record[2], "std_error", line)?;
                StudyResult::with_effect(id, estimate, std_error)
                    .map_err(|e| CliError::usage(format!("line {line}: {e}")))?
            }
        };
        studies.push(study);
    }
    if studies.is_empty() {
        return Err(CliError::usage(format!(
            "{} contains no study rows",
            path.display()
        )));
    }
    Ok(studies)
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    if e.is_io_error() {
        CliError::Io(format!("cannot read {}: {e}", path.display()))
    } else {
        CliError::usage(format!("{} is not valid CSV: {e}", path.display()))
    }
}
