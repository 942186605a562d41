//! Reading tables from disk.
//!
//! Two layouts are accepted. A JSON object carrying either a `"counts"` or a
//! `"frequencies"` 2×2 matrix (other keys are ignored), or a bare CSV of two
//! lines with two comma-separated fields each. Lines starting with `#` and
//! blank lines are skipped in the CSV form; `--counts` selects how its
//! fields are read.

use std::path::Path;

use causal_interface::{CountTable, FrequencyTable};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedTable {
    pub counts: Option<CountTable>,
    pub table: FrequencyTable,
}

pub fn load(path: &Path, csv_counts: bool) -> Result<LoadedTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse(&text, csv_counts).map_err(|e| e.context(&path.display().to_string()))
}

pub fn parse(text: &str, csv_counts: bool) -> Result<LoadedTable, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text, csv_counts)
    }
}

fn parse_json(text: &str) -> Result<LoadedTable, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| CliError::Parse("expected a JSON object".into()))?;
    match (obj.get("counts"), obj.get("frequencies")) {
        (Some(_), Some(_)) => Err(CliError::Parse("both \"counts\" and \"frequencies\" present".into())),
        (None, None) => Err(CliError::Parse("missing \"counts\" or \"frequencies\"".into())),
        (Some(v), None) => {
            let cells = json_matrix(v, "counts")?;
            from_count_fields(cells)
        }
        (None, Some(v)) => {
            let cells = json_matrix(v, "frequencies")?;
            from_frequency_fields(cells)
        }
    }
}

fn json_matrix(v: &Value, key: &str) -> Result<[[f64; 2]; 2], CliError> {
    let shape = || CliError::Parse(format!("\"{key}\" must be a 2x2 array of numbers"));
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(shape)?;
    let mut out = [[0.0; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(shape)?;
        for (j, x) in row.iter().enumerate() {
            out[i][j] = x.as_f64().ok_or_else(shape)?;
        }
    }
    Ok(out)
}

fn parse_csv(text: &str, counts: bool) -> Result<LoadedTable, CliError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.len() != 2 {
        return Err(CliError::Parse(format!("expected 2 data lines, found {}", lines.len())));
    }
    let mut cells = [[0.0; 2]; 2];
    for (i, line) in lines.iter().enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(CliError::Parse(format!("line {}: expected 2 fields, found {}", i + 1, fields.len())));
        }
        for (j, f) in fields.iter().enumerate() {
            cells[i][j] = f
                .parse::<f64>()
                .map_err(|_| CliError::Parse(format!("line {}: not a number: {f:?}", i + 1)))?;
        }
    }
    if counts {
        from_count_fields(cells)
    } else {
        from_frequency_fields(cells)
    }
}

fn from_count_fields(cells: [[f64; 2]; 2]) -> Result<LoadedTable, CliError> {
    let mut raw = [[0u64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let x = cells[i][j];
            if !(x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(64)) {
                return Err(CliError::Table(format!("count ({i},{j}) = {x} is not a non-negative integer")));
            }
            raw[i][j] = x as u64;
        }
    }
    let counts = CountTable::new(raw);
    let table = FrequencyTable::from_counts(&counts)?;
    Ok(LoadedTable {
        counts: Some(counts),
        table,
    })
}

fn from_frequency_fields(cells: [[f64; 2]; 2]) -> Result<LoadedTable, CliError> {
    Ok(LoadedTable {
        counts: None,
        table: FrequencyTable::new(cells)?,
    })
}
