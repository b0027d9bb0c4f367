//! Command-line front end for `detchern-core`.
//!
//! ```text
//! detchern csm -m 3 -n 3 -k 1 --format csv
//! detchern ged -m 6 -n 6 -k 1
//! detchern tables
//! ```

pub mod cache;
pub mod compute;
pub mod document;
pub mod render;
pub mod scan;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::cache::{Cache, LoadOutcome};
use crate::compute::{compute, Request};
use crate::document::Kind;
use crate::render::{render, Format};
use crate::tables::{reproduce_reference_tables, TableReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] detchern_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(detchern_core::Error::Consistency(_)) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Command {
    Cm,
    Csm,
    CsmOpen,
    Eu,
    Fulton,
    Milnor,
    Conormal,
    Charcycle,
    CharcycleOpen,
    Polar,
    Ged,
    Microlocal,
    Amatrix,
    DualCheck,
    Symmetry,
    Scan,
    /// Recompute the bundled reference tables.
    Tables,
}

impl Command {
    fn kind(self) -> Option<Kind> {
        let name = self.to_possible_value()?.get_name().to_string();
        <Kind as ValueEnum>::from_str(&name, false).ok()
    }
}

/// Exact characteristic classes of determinantal varieties.
#[derive(Debug, Parser)]
#[command(name = "detchern", version)]
struct Cli {
    /// What to compute. `scan` reads -m/-n as the upper bounds of the range.
    command: Command,
    #[arg(short = 'm')]
    m: Option<usize>,
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'k')]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Directory for persistent caches.
    #[arg(long, env = "DETCHERN_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest Grassmannian box `k(n-k)` to accept.
    #[arg(long)]
    max_box: Option<usize>,
    /// Evaluate independent routes and compare them.
    #[arg(long)]
    check: bool,
    /// Record elapsed time in the document metadata.
    #[arg(long)]
    timing: bool,
}

fn render_tables(report: &TableReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("table,cells,mismatches\n");
            for r in &report.rows {
                s.push_str(&format!("{},{},{}\n", r.name, r.cells, r.mismatches.len()));
                for c in &r.mismatches {
                    s.push_str(&format!(
                        "{} {},expected {},got {}\n",
                        r.name, c.label, c.expected, c.got
                    ));
                }
            }
            s
        }
        Format::Markdown => {
            let mut s = String::from("| table | cells | mismatches |\n| --- | --- | --- |\n");
            for r in &report.rows {
                s.push_str(&format!(
                    "| {} | {} | {} |\n",
                    r.name,
                    r.cells,
                    r.mismatches.len()
                ));
            }
            let bad: Vec<_> = report
                .rows
                .iter()
                .filter(|r| !r.mismatches.is_empty())
                .collect();
            if !bad.is_empty() {
                s.push_str("\n| table | cell | expected | got |\n| --- | --- | --- | --- |\n");
                for r in bad {
                    for c in &r.mismatches {
                        s.push_str(&format!(
                            "| {} | {} | {} | {} |\n",
                            r.name, c.label, c.expected, c.got
                        ));
                    }
                }
            }
            s
        }
    }
}

fn warn_load(err: &mut dyn Write, what: &str, outcome: &LoadOutcome) {
    let msg = match outcome {
        LoadOutcome::Stale(tag) => {
            format!("note: ignoring {what} cache in format {tag:?}; rebuilding")
        }
        LoadOutcome::Corrupt(why) => format!("warning: {what} cache unusable ({why}); recomputing"),
        LoadOutcome::Missing | LoadOutcome::Loaded(_) => return,
    };
    let _ = writeln!(err, "{msg}");
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(cells) = cli.max_box {
        detchern_core::schubert::set_max_box_cells(cells);
    }
    let mut cache = cli.cache_dir.as_ref().map(Cache::new);
    if let Some(c) = cache.as_mut() {
        let (lr, cm) = c.load();
        warn_load(err, "LR", &lr);
        warn_load(err, "c_M", &cm);
    }

    let start = Instant::now();
    let (text, ok) = match cli.command.kind() {
        None => {
            let report = reproduce_reference_tables()?;
            (render_tables(&report, cli.format), report.passed())
        }
        Some(kind) => {
            let req = Request {
                m: cli.m,
                n: cli.n,
                k: cli.k,
                check: cli.check,
            };
            let mut doc = compute(kind, &req)?;
            if cli.timing {
                doc.meta.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            (render(&doc, cli.format), doc.all_checks_pass())
        }
    };
    out.write_all(text.as_bytes())?;

    if let Some(c) = &cache {
        if let Err(e) = c.store() {
            let _ = writeln!(
                err,
                "warning: could not write cache to {}: {e}",
                c.dir().display()
            );
        }
    }
    Ok(if ok { 0 } else { 3 })
}

/// Runs the command line `args` (including the program name), returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
