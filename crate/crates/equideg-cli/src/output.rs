//! Plain, JSON and CSV rendering of the command reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::commands::{ClassRecord, GridRecord, InvariantReport, MulReport, TableReport};
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

pub fn json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// RFC 4180 CSV with a header row.
pub fn csv_rows<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Golden(e.to_string()))
}

fn csv_unsupported(what: &str) -> CliError {
    CliError::Usage(format!("csv output is only available for tables of records, not for {what}"))
}

pub fn classes(rows: &[ClassRecord], format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => json(&rows),
        OutputFormat::Csv => csv_rows(rows),
        OutputFormat::Plain => {
            let width = rows.iter().map(|r| r.class.chars().count()).max().unwrap_or(0);
            let mut out = format!("{:>4}  {:<width$}  {:>6}  {:>3}  {:>5}\n", "id", "class", "order", "dim", "weyl");
            for r in rows {
                let mark = if r.flagged { "*" } else { "" };
                let id = format!("{}{mark}", r.id);
                let _ = writeln!(out, "{id:>4}  {:<width$}  {:>6}  {:>3}  {:>5}", r.class, r.order, r.dimension, r.weyl);
            }
            Ok(out)
        }
    }
}

pub fn product(report: &MulReport, format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => csv_rows(&report.terms),
        OutputFormat::Plain => {
            let mut out = format!("({}) · ({}) = {}\n", report.left, report.right, report.product);
            if report.oracle_checked {
                out.push_str("orbit counting agrees\n");
            }
            Ok(out)
        }
    }
}

pub fn invariant(report: &InvariantReport, format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => Err(csv_unsupported("the invariant")),
        OutputFormat::Plain => {
            let mut out = String::new();
            let _ = writeln!(out, "system     {}  (c1, c2) = ({}, {})", report.system, report.c1, report.c2);
            let _ = writeln!(out, "region     {}", report.region);
            if !report.predicates.is_empty() {
                let _ = writeln!(out, "conditions {}", report.predicates.join(", "));
            }
            let labeling = format!("{:?}", report.labeling).to_lowercase();
            let _ = writeln!(out, "β          {:?} ({labeling} labeling)", report.betas);
            if let Some(message) = &report.message {
                let _ = writeln!(out, "{message}");
            }
            if let Some(b) = &report.bifurcation {
                let _ = writeln!(out, "surface    j = {}, l = {}", b.j, b.l);
                let _ = writeln!(out, "α₀         {:.12}", b.alpha0);
                let _ = writeln!(out, "ρ, l_max   {:.6}, {}", b.rho, b.l_max);
                if !b.collisions.is_empty() {
                    let _ = writeln!(out, "collides   {:?}", b.collisions);
                }
                let _ = writeln!(out, "ω(α₀)      {}", b.omega);
                if let Some(crossing) = &b.crossing_omega {
                    let _ = writeln!(out, "straight   {crossing}");
                }
                for branch in &b.branch_counts {
                    let _ = writeln!(out, "branches   {} with symmetry ({})", branch.branches, branch.class);
                }
            }
            Ok(out)
        }
    }
}

pub fn table(report: &TableReport, format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => Err(csv_unsupported("the table diff")),
        OutputFormat::Plain => {
            let mut out = String::new();
            let _ = writeln!(out, "{} ω table, j relabeled by {:?}", report.system, report.permutation);
            for (perm, matched) in &report.matches_by_permutation {
                let _ = writeln!(out, "  {perm:?}: {matched}/{} rows", report.regions.len());
            }
            for r in &report.regions {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status} {:<4} (c1, c2) = ({:.4}, {:.4})  α₀ = {:.6}", r.region, r.c1, r.c2, r.alpha0);
                if r.passed {
                    continue;
                }
                let _ = writeln!(out, "  expected {}", r.expected);
                let _ = writeln!(out, "  computed {}", r.computed);
                for d in &r.differences {
                    let _ = writeln!(
                        out,
                        "  id {:>3} n={} {:<28} expected {:>3}  computed {:>3}",
                        d.id, d.n, d.class, d.expected, d.computed
                    );
                }
                let (closest, distance) = &r.closest_reference_row;
                if *closest != r.region {
                    let _ = writeln!(out, "  closest reference row is {closest} ({distance} terms differ)");
                }
                if !r.equals_reference_rows.is_empty() {
                    let _ = writeln!(out, "  computed value equals reference row {}", r.equals_reference_rows.join(", "));
                }
            }
            let _ = writeln!(out, "{}", if report.passed { "all rows match" } else { "rows differ" });
            Ok(out)
        }
    }
}

pub fn grid(rows: &[GridRecord], format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => json(&rows),
        OutputFormat::Csv => csv_rows(rows),
        OutputFormat::Plain => {
            let mut out = String::new();
            for r in rows {
                let alpha = r.alpha0.map(|a| format!("{a:.6}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "{:>9.5} {:>9.5}  {:<8} {alpha}", r.c1, r.c2, r.region);
            }
            Ok(out)
        }
    }
}
