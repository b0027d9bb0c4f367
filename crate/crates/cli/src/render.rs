//! CSV, JSON and markdown renderings of an [`OutputDocument`].

use clap::ValueEnum;

use crate::document::{Basis, OutputDocument};
use crate::scan::{ScanReport, Violation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Markdown,
}

pub fn render(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Csv => csv(doc),
        Format::Json => {
            let mut s = doc.to_json();
            s.push('\n');
            s
        }
        Format::Markdown => markdown(doc),
    }
}

fn pass_fail(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn violation_rows(report: &ScanReport) -> impl Iterator<Item = (&'static str, &Violation)> {
    report
        .effectivity_violations
        .iter()
        .map(|v| ("effectivity", v))
        .chain(report.vanishing_violations.iter().map(|v| ("vanishing", v)))
}

fn csv(doc: &OutputDocument) -> String {
    let mut out = String::new();
    match doc.basis {
        Basis::Matrix => {
            for row in doc.rows.iter().flatten() {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Basis::Checks => {
            for c in &doc.checks {
                out.push_str(&format!("{},{}\n", c.name, pass_fail(c.passed)));
            }
        }
        Basis::Scan => {
            if let Some(report) = &doc.scan {
                out.push_str("instances_checked,effectivity_violations,vanishing_violations\n");
                out.push_str(&format!(
                    "{},{},{}\n",
                    report.instances_checked,
                    report.effectivity_violations.len(),
                    report.vanishing_violations.len()
                ));
                for (which, v) in violation_rows(report) {
                    out.push_str(&format!(
                        "{which},{},{},{},{},{}\n",
                        v.m, v.n, v.k, v.l, v.coefficient
                    ));
                }
            }
        }
        _ => {
            out.push_str(&doc.coefficients.join(","));
            out.push('\n');
        }
    }
    out
}

fn table_row(cells: impl IntoIterator<Item = String>) -> String {
    let cells: Vec<String> = cells.into_iter().collect();
    format!("| {} |\n", cells.join(" | "))
}

fn header(first: &str, labels: &[String]) -> String {
    let mut s = table_row(std::iter::once(first.to_string()).chain(labels.iter().cloned()));
    s.push_str(&table_row((0..=labels.len()).map(|_| "---".to_string())));
    s
}

fn markdown(doc: &OutputDocument) -> String {
    let mut out = String::new();
    match doc.basis {
        Basis::Matrix => {
            out.push_str(&format!("{}\n\n", doc.title));
            out.push_str(&header("i \\ p", &doc.labels));
            for (i, row) in doc.rows.iter().flatten().enumerate() {
                out.push_str(&table_row(
                    std::iter::once(i.to_string()).chain(row.iter().cloned()),
                ));
            }
        }
        Basis::Checks => {
            out.push_str(&format!("{}\n\n", doc.title));
        }
        Basis::Scan => {
            if let Some(report) = &doc.scan {
                out.push_str(&format!("{}\n\n", doc.title));
                out.push_str(
                    "| instances checked | effectivity violations | vanishing violations |\n",
                );
                out.push_str("| --- | --- | --- |\n");
                out.push_str(&format!(
                    "| {} | {} | {} |\n",
                    report.instances_checked,
                    report.effectivity_violations.len(),
                    report.vanishing_violations.len()
                ));
                if !report.is_clean() {
                    out.push_str("\n| conjecture | m | n | k | l | coefficient |\n");
                    out.push_str("| --- | --- | --- | --- | --- | --- |\n");
                    for (which, v) in violation_rows(report) {
                        out.push_str(&format!(
                            "| {which} | {} | {} | {} | {} | {} |\n",
                            v.m, v.n, v.k, v.l, v.coefficient
                        ));
                    }
                }
                return out;
            }
        }
        _ => {
            out.push_str(&header("", &doc.labels));
            out.push_str(&table_row(
                std::iter::once(doc.title.clone()).chain(doc.coefficients.iter().cloned()),
            ));
        }
    }
    if !doc.checks.is_empty() {
        if doc.basis != Basis::Checks {
            out.push('\n');
        }
        out.push_str("| check | result |\n| --- | --- |\n");
        for c in &doc.checks {
            out.push_str(&format!("| {} | {} |\n", c.name, pass_fail(c.passed)));
        }
    }
    out
}
