//! Command implementations behind the `asymclone` binary.
//!
//! Commands write to any `io::Write` and return a process exit code, so the
//! binary shim stays thin and the integration tests can capture output
//! directly. Exit codes: 0 success, 1 verification/threshold failure,
//! 2 usage error.

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::analysis::{
    classify_regime, find_threshold_one_side, find_threshold_two_side, linspace, sweep, Mode,
    RegimeReport,
};
use crate::error::{Error, Result};

pub mod verify;

/// Deviation from the closed-form thresholds above which `thresholds`
/// reports failure.
pub const THRESHOLD_TOL: f64 = 1e-6;

/// Exit code for errors that indicate misuse rather than a numeric failure.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::OutOfRange { .. } | Error::EmptyGrid | Error::AlphaWindowUndefined => 2,
        _ => 1,
    }
}

/// Output format of `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A full sweep request.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub p_min: f64,
    pub p_max: f64,
    pub p_steps: usize,
    pub alpha_sq_min: f64,
    pub alpha_sq_max: f64,
    pub alpha_sq_steps: usize,
    pub format: OutputFormat,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("p-min", self.p_min, 0.0, self.p_max),
            ("p-max", self.p_max, self.p_min, 1.0),
            ("alpha-sq-min", self.alpha_sq_min, 0.0, self.alpha_sq_max),
            ("alpha-sq-max", self.alpha_sq_max, self.alpha_sq_min, 1.0),
        ];
        for (name, value, lo, hi) in bounds {
            if !value.is_finite() || value < lo || value > hi {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    min: lo,
                    max: hi,
                });
            }
        }
        for (name, steps) in [("p-steps", self.p_steps), ("alpha-sq-steps", self.alpha_sq_steps)] {
            if steps == 0 {
                return Err(Error::OutOfRange {
                    name,
                    value: 0.0,
                    min: 1.0,
                    max: f64::MAX,
                });
            }
        }
        Ok(())
    }
}

/// Format with 12 significant digits, switching to lowercase scientific
/// notation below 1e-4 so small residuals stay readable. Deterministic, so
/// repeated sweeps are bit-identical.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let ax = x.abs();
    if ax < 1e-4 {
        format!("{x:.11e}")
    } else {
        let digits_before = ax.log10().floor() as i32 + 1;
        let decimals = (12 - digits_before).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

/// The exact CSV column contract of `sweep`.
pub const CSV_HEADER: &str = "mode,p,alpha_sq,kept_min_pt_eig,kept_negativity,kept_separable,\
other_min_pt_eig,other_negativity,other_separable,fidelity,s_factor,goal_met";

#[derive(Debug, Serialize)]
struct SweepRow {
    mode: String,
    p: f64,
    alpha_sq: f64,
    kept_min_pt_eig: f64,
    kept_negativity: f64,
    kept_separable: bool,
    other_min_pt_eig: f64,
    other_negativity: f64,
    other_separable: bool,
    fidelity: f64,
    s_factor: f64,
    goal_met: bool,
}

impl From<&RegimeReport> for SweepRow {
    fn from(r: &RegimeReport) -> Self {
        Self {
            mode: r.mode.to_string(),
            p: r.p,
            alpha_sq: r.alpha_sq,
            kept_min_pt_eig: r.kept_verdict.min_pt_eigenvalue,
            kept_negativity: r.kept_verdict.negativity,
            kept_separable: r.kept_verdict.separable,
            other_min_pt_eig: r.other_verdict.min_pt_eigenvalue,
            other_negativity: r.other_verdict.negativity,
            other_separable: r.other_verdict.separable,
            fidelity: r.fidelity,
            s_factor: r.s_factor(),
            goal_met: r.goal_met,
        }
    }
}

fn csv_line(r: &RegimeReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.mode,
        fmt_sig(r.p),
        fmt_sig(r.alpha_sq),
        fmt_sig(r.kept_verdict.min_pt_eigenvalue),
        fmt_sig(r.kept_verdict.negativity),
        r.kept_verdict.separable,
        fmt_sig(r.other_verdict.min_pt_eigenvalue),
        fmt_sig(r.other_verdict.negativity),
        r.other_verdict.separable,
        fmt_sig(r.fidelity),
        fmt_sig(r.s_factor()),
        r.goal_met,
    )
}

/// Render sweep rows to CSV text, header included.
pub fn render_csv(rows: &[RegimeReport]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(row));
        out.push('\n');
    }
    out
}

/// Render sweep rows to a JSON array mirroring the CSV fields.
pub fn render_json(rows: &[RegimeReport]) -> Result<String> {
    let rows: Vec<SweepRow> = rows.iter().map(SweepRow::from).collect();
    let mut text = serde_json::to_string_pretty(&rows).map_err(std::io::Error::other)?;
    text.push('\n');
    Ok(text)
}

/// Compute both thresholds, print them against their closed forms, and
/// succeed iff both deviations stay below [`THRESHOLD_TOL`].
pub fn cmd_thresholds(out: &mut dyn Write) -> Result<i32> {
    let one = find_threshold_one_side()?;
    let two = find_threshold_two_side()?;
    let one_ref = 3.0f64.sqrt() - 1.0;
    let two_ref = (1.0 - 3.0f64.sqrt() + (2.0 * 3.0f64.sqrt()).sqrt()) / 2.0;
    let one_dev = (one - one_ref).abs();
    let two_dev = (two - two_ref).abs();

    writeln!(
        out,
        "one-side threshold: {} (closed form sqrt(3)-1 = {}, |deviation| = {})",
        fmt_sig(one),
        fmt_sig(one_ref),
        fmt_sig(one_dev)
    )?;
    writeln!(
        out,
        "two-side threshold: {} (closed form (1-sqrt(3)+sqrt(2*sqrt(3)))/2 = {}, |deviation| = {})",
        fmt_sig(two),
        fmt_sig(two_ref),
        fmt_sig(two_dev)
    )?;

    let ok = one_dev < THRESHOLD_TOL && two_dev < THRESHOLD_TOL;
    writeln!(
        out,
        "thresholds {} (tolerance {})",
        if ok { "OK" } else { "FAILED" },
        fmt_sig(THRESHOLD_TOL)
    )?;
    Ok(if ok { 0 } else { 1 })
}

/// Classify one `(p, α²)` point and print a human-readable block.
pub fn cmd_report(p: f64, alpha_sq: f64, mode: Mode, out: &mut dyn Write) -> Result<i32> {
    let report = classify_regime(p, alpha_sq, mode)?;
    let describe = |v: &crate::qstate::SeparabilityVerdict| {
        format!(
            "{} (min PT eigenvalue {}, negativity {})",
            if v.separable { "separable" } else { "inseparable" },
            fmt_sig(v.min_pt_eigenvalue),
            fmt_sig(v.negativity)
        )
    };
    writeln!(out, "mode:         {}", report.mode)?;
    writeln!(out, "p:            {}", fmt_sig(report.p))?;
    writeln!(out, "alpha_sq:     {}", fmt_sig(report.alpha_sq))?;
    writeln!(out, "kept branch:  {}", describe(&report.kept_verdict))?;
    writeln!(out, "other branch: {}", describe(&report.other_verdict))?;
    writeln!(out, "fidelity:     {}", fmt_sig(report.fidelity))?;
    writeln!(out, "s factor:     {}", fmt_sig(report.s_factor()))?;
    writeln!(out, "goal met:     {}", report.goal_met)?;
    Ok(0)
}

/// Run a sweep and write CSV or JSON to the configured target.
pub fn cmd_sweep(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    config.validate()?;
    let p_grid = linspace(config.p_min, config.p_max, config.p_steps);
    let alpha_grid = linspace(config.alpha_sq_min, config.alpha_sq_max, config.alpha_sq_steps);
    let rows = sweep(config.mode, &p_grid, &alpha_grid)?;
    let text = match config.format {
        OutputFormat::Csv => render_csv(&rows),
        OutputFormat::Json => render_json(&rows)?,
    };
    match &config.out {
        None => {
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            std::fs::write(path, text.as_bytes())?;
        }
    }
    Ok(0)
}

/// Run every consistency check, one line per check, and succeed iff all
/// pass.
pub fn cmd_verify(out: &mut dyn Write) -> Result<i32> {
    let outcomes = verify::run_all()?;
    let mut all_passed = true;
    for check in &outcomes {
        all_passed &= check.passed;
        writeln!(
            out,
            "{} {} (max residual {} <= {})",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            fmt_sig(check.max_residual),
            fmt_sig(check.tolerance)
        )?;
    }
    writeln!(
        out,
        "{} of {} checks passed",
        outcomes.iter().filter(|c| c.passed).count(),
        outcomes.len()
    )?;
    Ok(if all_passed { 0 } else { 1 })
}
