//! Recomputes bundled reference tables and compares them cell by cell.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compute::{compute, Request};
use crate::document::{Kind, OutputDocument};
use crate::CliError;

/// Reference values published for small determinantal varieties.
pub const REFERENCE_TABLES: &str = include_str!("../fixtures/reference_tables.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub line: usize,
    pub kind: Kind,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// One entry per matrix row; a single row for vectors and scalars.
    pub cells: Vec<Vec<String>>,
}

impl FixtureRow {
    pub fn name(&self) -> String {
        format!("{} {} {} {}", self.kind, self.m, self.n, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellMismatch {
    pub label: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowResult {
    pub name: String,
    pub cells: usize,
    pub mismatches: Vec<CellMismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub rows: Vec<RowResult>,
}

impl TableReport {
    pub fn cells(&self) -> usize {
        self.rows.iter().map(|r| r.cells).sum()
    }

    pub fn mismatches(&self) -> usize {
        self.rows.iter().map(|r| r.mismatches.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }
}

fn parse_usize(tok: Option<&str>, what: &str, line: usize) -> Result<usize, CliError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| CliError::Usage(format!("fixture line {line}: bad {what}")))
}

pub fn parse_fixtures(text: &str) -> Result<Vec<FixtureRow>, CliError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (head, values) = s
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("fixture line {line}: missing ':'")))?;
        let mut toks = head.split_whitespace();
        let kind_tok = toks.next().unwrap_or("");
        let kind = <Kind as clap::ValueEnum>::from_str(kind_tok, false).map_err(|_| {
            CliError::Usage(format!("fixture line {line}: unknown kind {kind_tok:?}"))
        })?;
        let m = parse_usize(toks.next(), "m", line)?;
        let n = parse_usize(toks.next(), "n", line)?;
        let k = parse_usize(toks.next(), "k", line)?;
        let cells = values
            .split('|')
            .map(|r| r.split_whitespace().map(str::to_string).collect())
            .collect();
        rows.push(FixtureRow {
            line,
            kind,
            m,
            n,
            k,
            cells,
        });
    }
    Ok(rows)
}

fn computed_cells(doc: &OutputDocument) -> Vec<Vec<String>> {
    match &doc.rows {
        Some(rows) => rows.clone(),
        None => vec![doc.coefficients.clone()],
    }
}

fn check_row(row: &FixtureRow) -> RowResult {
    let name = row.name();
    let cells = row.cells.iter().map(Vec::len).sum();
    let (got, labels) = match compute(row.kind, &Request::new(row.m, row.n, row.k)) {
        Ok(doc) => (computed_cells(&doc), doc.labels),
        Err(e) => {
            return RowResult {
                name,
                cells,
                mismatches: vec![CellMismatch {
                    label: "*".into(),
                    expected: "value".into(),
                    got: e.to_string(),
                }],
            }
        }
    };
    let mut mismatches = Vec::new();
    let height = row.cells.len().max(got.len());
    for i in 0..height {
        let want = row.cells.get(i).map(Vec::as_slice).unwrap_or(&[]);
        let have = got.get(i).map(Vec::as_slice).unwrap_or(&[]);
        for j in 0..want.len().max(have.len()) {
            let expected = want.get(j).cloned().unwrap_or_else(|| "-".into());
            let value = have.get(j).cloned().unwrap_or_else(|| "-".into());
            if expected != value {
                let label = match labels.get(j) {
                    Some(l) if height == 1 => l.clone(),
                    _ => format!("[{i}][{j}]"),
                };
                mismatches.push(CellMismatch {
                    label,
                    expected,
                    got: value,
                });
            }
        }
    }
    RowResult {
        name,
        cells,
        mismatches,
    }
}

pub fn reproduce_tables(fixtures: &[FixtureRow]) -> TableReport {
    TableReport {
        rows: fixtures.par_iter().map(check_row).collect(),
    }
}

pub fn reproduce_reference_tables() -> Result<TableReport, CliError> {
    Ok(reproduce_tables(&parse_fixtures(REFERENCE_TABLES)?))
}
