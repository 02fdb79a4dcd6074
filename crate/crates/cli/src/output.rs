//! Report emitters: JSON, CSV tables and a text summary with the anchor
//! traceability matrix.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{Result, RunError, SuiteOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Pretty-printed JSON array of the reports, newline-terminated.
pub fn to_json(output: &SuiteOutput) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&output.reports)?;
    s.push('\n');
    Ok(s)
}

/// Per-anchor counts: `(checks, passed)`, with the check ids.
pub fn traceability(output: &SuiteOutput) -> BTreeMap<&str, (usize, usize, Vec<&str>)> {
    let mut map: BTreeMap<&str, (usize, usize, Vec<&str>)> = BTreeMap::new();
    for r in &output.reports {
        let e = map.entry(r.anchor.as_str()).or_default();
        e.0 += 1;
        e.1 += usize::from(r.pass);
        e.2.push(r.check_id.as_str());
    }
    map
}

pub fn to_text(output: &SuiteOutput) -> String {
    let mut s = String::new();
    let passed = output.reports.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "{passed}/{} checks passed", output.reports.len());
    let _ = writeln!(s);
    for r in &output.reports {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        let _ = write!(s, "{mark}  {:<60} residual {:.3e}  tol {:.1e}", r.check_id, r.residual, r.tol);
        if let Some(ms) = r.runtime_ms {
            let _ = write!(s, "  {ms:.1} ms");
        }
        if let Some(note) = &r.note {
            let _ = write!(s, "  ({note})");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "\ntraceability");
    for (anchor, (n, ok, ids)) in traceability(output) {
        let _ = writeln!(s, "  {anchor}: {ok}/{n}");
        for id in ids {
            let _ = writeln!(s, "    {id}");
        }
    }
    if !output.cesaro.is_empty() {
        let _ = writeln!(s, "\ncesaro (reported, not asserted)");
        for row in &output.cesaro {
            let _ = writeln!(s, "  T = {:<8} deviation {:.3e}", row.horizon, row.deviation);
        }
    }
    if !output.sweep.is_empty() {
        let _ = writeln!(s, "\nfree-field locality (reported, not asserted)");
        for row in &output.sweep {
            let _ = writeln!(
                s,
                "  delta = {:<6} dim {:<6} hypothesis {:.3e}  conclusion {:.3e}",
                row.delta, row.dim, row.hypothesis, row.conclusion
            );
        }
    }
    s
}

/// Flat row of the report CSV; parameters are folded into one JSON column.
#[derive(Serialize)]
struct ReportRow<'a> {
    check_id: &'a str,
    anchor: &'a str,
    residual: f64,
    tol: f64,
    pass: bool,
    runtime_ms: Option<f64>,
    note: Option<&'a str>,
    params: String,
}

fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the run in the requested format. JSON and text go to stdout
/// without `out_dir`; CSV needs a directory.
pub fn emit_report(output: &SuiteOutput, format: Format, out_dir: Option<&Path>) -> Result<()> {
    if output.reports.is_empty() {
        return Err(RunError::Config("no reports to emit".into()));
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
    }
    match (format, out_dir) {
        (Format::Json, Some(dir)) => fs::write(dir.join("reports.json"), to_json(output)?)?,
        (Format::Json, None) => std::io::stdout().write_all(to_json(output)?.as_bytes())?,
        (Format::Text, Some(dir)) => fs::write(dir.join("summary.txt"), to_text(output))?,
        (Format::Text, None) => std::io::stdout().write_all(to_text(output).as_bytes())?,
        (Format::Csv, None) => return Err(RunError::Config("csv output needs --out".into())),
        (Format::Csv, Some(dir)) => {
            let rows = output
                .reports
                .iter()
                .map(|r| {
                    Ok(ReportRow {
                        check_id: &r.check_id,
                        anchor: &r.anchor,
                        residual: r.residual,
                        tol: r.tol,
                        pass: r.pass,
                        runtime_ms: r.runtime_ms,
                        note: r.note.as_deref(),
                        params: serde_json::to_string(&r.params)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_csv(&dir.join("reports.csv"), rows)?;
            write_csv(&dir.join("phases.csv"), &output.phases)?;
            write_csv(&dir.join("cesaro.csv"), &output.cesaro)?;
            write_csv(&dir.join("sweep.csv"), &output.sweep)?;
        }
    }
    Ok(())
}
