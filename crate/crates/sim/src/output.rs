//! CSV writers. Numbers use nine significant digits in scientific notation so
//! identical runs produce byte-identical files.

use std::fs::File;
use std::path::Path;

use crate::error::{HarnessError, Result};
use crate::harness::{ErrorReport, RunOutput, SweepTable, SNAPSHOT_COLUMNS, snapshot_rows};

pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.8e}")
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_value).unwrap_or_default()
}

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file))
}

/// Header row plus one row per record.
pub fn write_records<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let csv_err = |source| HarnessError::Csv { path: path.to_path_buf(), source };
    let mut w = writer(path)?;
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}

pub fn write_numeric(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    write_records(path, header, rows.iter().map(|r| r.iter().map(|&v| format_value(v))))
}

/// Rows are `dx`, columns `alpha_thr`.
pub fn write_table(path: &Path, table: &SweepTable) -> Result<()> {
    let mut header = vec!["dx".to_string()];
    header.extend(table.thr.iter().map(|t| format!("thr_{t}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = table.dx.iter().zip(&table.values).map(|(dx, row)| {
        std::iter::once(format_value(*dx)).chain(row.iter().map(|&v| format_value(v))).collect::<Vec<_>>()
    });
    write_records(path, &header, rows)
}

pub fn write_errors(path: &Path, reports: &[ErrorReport]) -> Result<()> {
    let rows = reports.iter().map(|r| {
        vec![
            r.method.label().to_string(),
            format_value(r.ell_a),
            format_value(r.ell_b),
            format_opt(r.ell_exact),
            format_opt(r.delta_ell),
            format_opt(r.delta_ell_b),
            format_opt(r.linf_interior),
            format_opt(r.l1_interior),
            format_opt(r.linf_interior_b),
            format_opt(r.l1_interior_b),
            format_value(r.scheme_diff),
        ]
    });
    write_records(path, &ErrorReport::COLUMNS, rows)
}

/// File name for a snapshot at time `t`, e.g. `snapshot_25.csv`.
pub fn snapshot_name(t: f64) -> String {
    let rounded = (t * 1e9).round() / 1e9;
    format!("snapshot_{rounded}.csv")
}

/// Writes `front_history.csv`, one `snapshot_<t>.csv` per snapshot and
/// `errors.csv` into `dir`.
pub fn write_run(dir: &Path, run: &RunOutput) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io { path: dir.to_path_buf(), source })?;
    let history: Vec<Vec<f64>> = run
        .extended
        .front_history
        .iter()
        .zip(&run.scaled.radius_history)
        .map(|(&(t, a), &(_, b))| vec![t, a, b])
        .collect();
    write_numeric(&dir.join("front_history.csv"), &["t", "ell_a", "ell_b"], &history)?;
    for (a, b) in run.extended.snapshots.iter().zip(&run.scaled.snapshots) {
        let rows = snapshot_rows(&run.grid, a, b, run.exact.as_ref());
        write_numeric(&dir.join(snapshot_name(a.t)), &SNAPSHOT_COLUMNS, &rows)?;
    }
    write_errors(&dir.join("errors.csv"), std::slice::from_ref(&run.report))
}
