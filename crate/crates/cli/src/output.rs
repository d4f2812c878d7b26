//! Deterministic text renderers for sweep grids, trajectories and gate
//! reports.
//!
//! Numbers are printed with Rust's shortest round-trip float formatting and
//! no line carries wall-clock time, host names or other run-specific noise,
//! so re-running a command reproduces its output files byte for byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use phasegate_core::gates::{GateReport, GateSummary, Model};
use phasegate_core::hilbert::{AtomLevel, HilbertSpace};
use phasegate_core::propagate::TrajectorySample;

use crate::error::{CliError, Result};
use crate::sweep::SweepResult;

/// Library/tool version stamped into file headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Render a sweep as CSV: `#` metadata lines, the `axis1,axis2,value`
/// header, then one row per grid point in row-major order.
pub fn sweep_csv(result: &SweepResult) -> String {
    let spec = &result.spec;
    let mut s = String::new();
    let _ = writeln!(s, "# phasegate sweep v{VERSION}");
    let _ = writeln!(s, "# experiment: {}", spec.experiment.name);
    let _ = writeln!(s, "# value: {}", spec.experiment.value_label);
    for (which, axis) in [("axis1", &spec.axis1), ("axis2", &spec.axis2)] {
        let _ = writeln!(
            s,
            "# {which}: {} from {} to {} count {}",
            axis.name, axis.min, axis.max, axis.count
        );
    }
    let fixed = if spec.fixed.is_empty() {
        "(defaults)".to_string()
    } else {
        spec.fixed
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(s, "# fixed: {fixed}");
    let _ = writeln!(s, "# n_max: {}", spec.options.n_max);
    match spec.options.step {
        Some(h) => {
            let _ = writeln!(s, "# step: {h}");
        }
        None => {
            let _ = writeln!(s, "# step: auto");
        }
    }
    let _ = writeln!(s, "# units: rates in g, times in 1/g");
    let _ = writeln!(s, "axis1,axis2,value");
    let n2 = spec.axis2.count;
    for (idx, value) in result.values.iter().enumerate() {
        let v1 = spec.axis1.value(idx / n2);
        let v2 = spec.axis2.value(idx % n2);
        let _ = writeln!(s, "{v1},{v2},{value}");
    }
    s
}

/// Render a recorded trajectory as CSV: `t`, the squared norm, then one
/// complex-amplitude column per requested basis label. Labels contain
/// commas (`l1,l2,n`), so the header cells are double-quoted; amplitude
/// cells are single complex numbers (`a+bi`) and need no quoting.
pub fn trajectory_csv(
    space: HilbertSpace,
    samples: &[TrajectorySample],
    labels: &[(AtomLevel, AtomLevel, usize)],
) -> Result<String> {
    let mut indices = Vec::with_capacity(labels.len());
    for &(l1, l2, n) in labels {
        indices.push(space.basis_index(l1, l2, n).map_err(|e| CliError::config(e.to_string()))?);
    }
    let mut s = String::new();
    s.push_str("t,norm2");
    for &(l1, l2, n) in labels {
        let _ = write!(s, ",\"{},{},{}\"", l1.label(), l2.label(), n);
    }
    s.push('\n');
    for sample in samples {
        let _ = write!(s, "{},{}", sample.t, sample.norm2);
        for &idx in &indices {
            let _ = write!(s, ",{}", sample.amplitudes[idx]);
        }
        s.push('\n');
    }
    Ok(s)
}

/// Parse a basis label `l1,l2,n` (levels `0`, `1`, `sigma`/`s`, `2`).
pub fn parse_label(text: &str) -> Result<(AtomLevel, AtomLevel, usize)> {
    let bad = || {
        CliError::config(format!(
            "invalid basis label `{text}` (expected `l1,l2,n` with levels 0/1/sigma/2)"
        ))
    };
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let l1 = AtomLevel::parse(parts[0]).ok_or_else(bad)?;
    let l2 = AtomLevel::parse(parts[1]).ok_or_else(bad)?;
    let n = parts[2].parse::<usize>().map_err(|_| bad())?;
    Ok((l1, l2, n))
}

fn model_name(model: Model) -> &'static str {
    match model {
        Model::Full => "full",
        Model::Effective => "effective",
    }
}

fn summary_lines(s: &mut String, prefix: &str, summary: &GateSummary) {
    let _ = writeln!(s, "{prefix}.extracted_phi = {}", summary.extracted_phi);
    let _ = writeln!(s, "{prefix}.fidelity_raw_extracted = {}", summary.fidelity_raw_extracted);
    let _ = writeln!(s, "{prefix}.fidelity_raw_target = {}", summary.fidelity_raw_target);
    let _ = writeln!(
        s,
        "{prefix}.fidelity_conditional_extracted = {}",
        summary.fidelity_conditional_extracted
    );
    let _ = writeln!(
        s,
        "{prefix}.fidelity_conditional_target = {}",
        summary.fidelity_conditional_target
    );
    for b in &summary.branches {
        let _ = writeln!(s, "{prefix}.branch_{}.amplitude = {}", b.label, b.amplitude);
        let _ = writeln!(s, "{prefix}.branch_{}.magnitude = {}", b.label, b.magnitude);
        let _ = writeln!(s, "{prefix}.branch_{}.phase = {}", b.label, b.phase);
        let _ = writeln!(s, "{prefix}.branch_{}.p0 = {}", b.label, b.p0);
        let _ = writeln!(s, "{prefix}.branch_{}.leakage = {}", b.label, b.leakage);
    }
}

/// Render a gate report as a flat `key = value` block (stdout format).
pub fn gate_text(kind: &str, report: &GateReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kind = {kind}");
    let _ = writeln!(s, "model = {}", model_name(report.model));
    let _ = writeln!(s, "duration = {}", report.duration);
    let _ = writeln!(s, "target_phase = {}", report.target_phase);
    for (i, phi) in report.predicted_phases.iter().enumerate() {
        let _ = writeln!(s, "predicted_phase_{} = {phi}", i + 1);
    }
    for (i, w) in report.warnings.iter().enumerate() {
        let _ = writeln!(s, "warning_{} = {w}", i + 1);
    }
    summary_lines(&mut s, "end", &report.at_gate_end);
    summary_lines(&mut s, "decay", &report.after_decay);
    s
}

/// Render a gate report as CSV: metadata, then one row per (stage, branch).
pub fn gate_csv(kind: &str, report: &GateReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# phasegate gate v{VERSION}");
    let _ = writeln!(s, "# kind: {kind}");
    let _ = writeln!(s, "# model: {}", model_name(report.model));
    let _ = writeln!(s, "# duration: {}", report.duration);
    let _ = writeln!(s, "# target_phase: {}", report.target_phase);
    let predicted: Vec<String> =
        report.predicted_phases.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(s, "# predicted_phases: {}", predicted.join("; "));
    for (stage, summary) in [("end", &report.at_gate_end), ("decay", &report.after_decay)] {
        let _ = writeln!(
            s,
            "# {stage}: extracted_phi={} fidelity_raw_extracted={} fidelity_raw_target={} fidelity_conditional_extracted={} fidelity_conditional_target={}",
            summary.extracted_phi,
            summary.fidelity_raw_extracted,
            summary.fidelity_raw_target,
            summary.fidelity_conditional_extracted,
            summary.fidelity_conditional_target
        );
    }
    let _ = writeln!(s, "stage,branch,amplitude_re,amplitude_im,magnitude,phase,p0,leakage");
    for (stage, summary) in [("end", &report.at_gate_end), ("decay", &report.after_decay)] {
        for b in &summary.branches {
            let _ = writeln!(
                s,
                "{stage},{},{},{},{},{},{},{}",
                b.label, b.amplitude.re, b.amplitude.im, b.magnitude, b.phase, b.p0, b.leakage
            );
        }
    }
    s
}

/// Write `contents` to `dir/name`, creating the directory if needed.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path)
}
