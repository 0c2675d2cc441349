//! Output rendering shared by every subcommand.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Null,
}

impl Cell {
    /// A number, or `Null` when it is not finite.
    pub fn num(x: f64) -> Cell {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Null
        }
    }

    pub fn opt(x: Option<f64>) -> Cell {
        x.map_or(Cell::Null, Cell::num)
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => json_num(*x),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Null => Value::Null,
        }
    }

    fn csv(&self) -> String {
        match self {
            // Debug formatting of f64 is the shortest string that round-trips.
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Num(x) => sig4(*x),
            Cell::Null => "n/a".to_string(),
            other => other.csv(),
        }
    }
}

/// A finite number as JSON, `null` otherwise.
pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Rounds to 4 significant figures, switching to scientific notation
/// outside `[1e-4, 1e6)`.
pub fn sig4(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.3e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..6).contains(&exp) {
        let rounded: f64 = sci.parse().expect("formatted float parses");
        let decimals = (3 - exp).max(0) as usize;
        format!("{rounded:.decimals$}")
    } else {
        format!("{mantissa}e{exp}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// One record shown as `name value` lines.
    Record,
    /// A header row followed by aligned rows.
    Rows,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub layout: Layout,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn record(fields: Vec<(&str, Cell)>) -> Table {
        let (columns, row): (Vec<_>, Vec<_>) =
            fields.into_iter().map(|(k, v)| (k.to_string(), v)).unzip();
        Table {
            layout: Layout::Record,
            columns,
            rows: vec![row],
        }
    }

    pub fn rows(columns: &[&str], rows: Vec<Vec<Cell>>) -> Table {
        Table {
            layout: Layout::Rows,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }
    }

    /// The first row as a JSON object keyed by column.
    pub fn record_json(&self) -> serde_json::Map<String, Value> {
        self.columns
            .iter()
            .cloned()
            .zip(self.rows[0].iter().map(Cell::to_json))
            .collect()
    }

    fn write_human(&self, out: &mut impl Write) -> io::Result<()> {
        match self.layout {
            Layout::Record => {
                let width = self
                    .columns
                    .iter()
                    .map(|c| c.chars().count())
                    .max()
                    .unwrap_or(0);
                for (name, cell) in self.columns.iter().zip(&self.rows[0]) {
                    writeln!(out, "{name:<width$}  {}", cell.human())?;
                }
            }
            Layout::Rows => {
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::human).collect())
                    .collect();
                let widths: Vec<usize> = self
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        cells
                            .iter()
                            .map(|r| r[i].chars().count())
                            .fold(c.chars().count(), usize::max)
                    })
                    .collect();
                let line = |items: &[String]| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(&self.columns))?;
                for row in &cells {
                    writeln!(out, "{}", line(row))?;
                }
            }
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }
}

/// Everything a subcommand produces, ready for any output format.
pub struct Output {
    pub json: Value,
    /// Human-readable tables, printed in order.
    pub tables: Vec<Table>,
    /// The single table written for `--format csv`.
    pub csv: Table,
    pub notes: Vec<String>,
}

impl Output {
    /// An output consisting of one record, whose JSON form is that record
    /// plus a `notes` array.
    pub fn from_record(table: Table, notes: Vec<String>) -> Output {
        let mut json = table.record_json();
        json.insert("notes".into(), notes.clone().into());
        Output {
            json: Value::Object(json),
            tables: vec![table.clone()],
            csv: table,
            notes,
        }
    }

    pub fn write(
        &self,
        format: Format,
        out: &mut impl Write,
        err: &mut impl Write,
    ) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                self.csv.write_csv(&mut *out)?;
                for note in &self.notes {
                    writeln!(err, "note: {note}")?;
                }
            }
            Format::Table => {
                for (i, table) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    table.write_human(&mut *out)?;
                }
                for note in &self.notes {
                    writeln!(out, "note: {note}")?;
                }
            }
        }
        out.flush()
    }
}
