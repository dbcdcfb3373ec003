//! Serialization of run artifacts: observable series and label tables as
//! CSV, scores and run reports as JSON. All numeric formatting is
//! locale-independent with 17 significant digits, so identical runs emit
//! byte-identical files.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dynamics::RunTrace;
use crate::metrics::ScoreSummary;

/// Format a float with 17 significant digits, '.' decimal separator.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{:.16e}", v)
    } else {
        format!("{v}")
    }
}

fn fmt_opt_usize(v: Option<usize>) -> String {
    v.map(|c| c.to_string()).unwrap_or_default()
}

/// Observable series export with the fixed column set.
pub fn series_csv(trace: &RunTrace) -> String {
    let mut out = String::new();
    out.push_str("t,a_par,a_y,y_norm_sq,z_norm_sq,bad_count,r_eta_count,cross_count\n");
    for row in &trace.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.t,
            fmt_f64(row.a_par),
            fmt_f64(row.a_y),
            fmt_f64(row.y_norm_sq),
            fmt_f64(row.z_norm_sq),
            fmt_opt_usize(row.bad_count),
            fmt_opt_usize(row.r_eta_count),
            row.cross_count,
        );
    }
    out
}

/// Label table export. `copy_labels`, when present, holds the per-copy
/// labels of boosted runs, semicolon-joined per node.
pub fn labels_csv(
    chi: &[i8],
    labels: &[i8],
    label_rounds: &[u64],
    copy_labels: Option<(&[i8], usize)>,
) -> String {
    let mut out = String::new();
    out.push_str("node,chi,label,label_global_time,copy_labels\n");
    for u in 0..labels.len() {
        let copies = copy_labels
            .map(|(all, ell)| {
                all[u * ell..(u + 1) * ell]
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            u, chi[u], labels[u], label_rounds[u], copies
        );
    }
    out
}

/// One oracle-versus-simulation comparison line.
#[derive(Debug, Clone)]
pub struct OracleComparisonRow {
    pub t: u64,
    pub predicted: f64,
    pub empirical_mean: f64,
    pub std_error: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn oracle_comparison_csv(rows: &[OracleComparisonRow]) -> String {
    let mut out = String::new();
    out.push_str("t,predicted,empirical_mean,std_error,bound,holds\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.t,
            fmt_f64(r.predicted),
            fmt_f64(r.empirical_mean),
            fmt_f64(r.std_error),
            fmt_f64(r.bound),
            r.holds,
        );
    }
    out
}

/// The aggregate run report. Wall-clock timings are deliberately excluded:
/// identical configurations must produce byte-identical report files, so
/// timings go to the console instead.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: String,
    pub config: serde_json::Value,
    pub graph_fingerprint: String,
    pub master_seed: u64,
    pub trial_seeds: Vec<u64>,
    pub scores: Vec<ScoreSummary>,
    pub aggregate: ScoreSummary,
    pub artifacts: Vec<String>,
}

pub fn toolkit_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
