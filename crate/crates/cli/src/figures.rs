//! Figure presets: canned sweeps whose grids bracket all worked-example
//! operating points, plus a renderer-agnostic plot description.

use crate::error::{CliError, Result};
use crate::experiments::{find_experiment, RunOptions};
use crate::sweep::{AxisSpec, SweepSpec};

/// A canned two-axis sweep with plotting metadata.
#[derive(Debug, Clone, Copy)]
pub struct FigureSpec {
    /// Identifier used on the command line and in output file names.
    pub id: &'static str,
    /// Experiment the grid evaluates.
    pub experiment: &'static str,
    /// Outer axis: parameter name, first and last value.
    pub axis1: (&'static str, f64, f64),
    /// Inner axis: parameter name, first and last value.
    pub axis2: (&'static str, f64, f64),
    /// Default points per axis.
    pub resolution: usize,
    /// Human-readable description (plot title).
    pub title: &'static str,
    /// Printed to stderr before long-running grids.
    pub runtime_note: Option<&'static str>,
}

const STIRAP_RUNTIME_NOTE: &str = "this grid integrates hundreds of adiabatic passages \
     (slowest points ~ 10^5 time units); expect minutes to hours at full resolution \
     — use --resolution to thin the grid";

/// All reproducible figures.
pub static FIGURES: &[FigureSpec] = &[
    FigureSpec {
        id: "fig3",
        experiment: "fig3_P0",
        axis1: ("omega1", 0.001, 0.05),
        axis2: ("big_delta", 0.0, 2.0),
        resolution: 21,
        title: "Spectator hold: no-emission probability of |01> under a lone Omega_1 drive",
        runtime_note: None,
    },
    FigureSpec {
        id: "fig4",
        experiment: "raman_prep_F",
        axis1: ("omega1", 0.005, 0.05),
        axis2: ("big_delta", 0.25, 2.0),
        resolution: 21,
        title: "Raman preparation: conditional fidelity to |A> at T = pi/K",
        runtime_note: None,
    },
    FigureSpec {
        id: "fig5",
        experiment: "raman_prep_P0",
        axis1: ("omega1", 0.005, 0.05),
        axis2: ("big_delta", 0.25, 2.0),
        resolution: 21,
        title: "Raman preparation: no-emission probability at T = pi/K",
        runtime_note: None,
    },
    FigureSpec {
        id: "fig6a",
        experiment: "stirap_prep_F",
        axis1: ("omega", 0.005, 0.05),
        axis2: ("omega_rate", 2e-5, 2e-4),
        resolution: 21,
        title: "STIRAP preparation: conditional fidelity to |A> at transfer end",
        runtime_note: Some(STIRAP_RUNTIME_NOTE),
    },
    FigureSpec {
        id: "fig6b",
        experiment: "stirap_prep_P0",
        axis1: ("omega", 0.005, 0.05),
        axis2: ("omega_rate", 2e-5, 2e-4),
        resolution: 21,
        title: "STIRAP preparation: no-emission probability at transfer end",
        runtime_note: Some(STIRAP_RUNTIME_NOTE),
    },
    FigureSpec {
        id: "fig8a",
        experiment: "ramp_phase_linear",
        axis1: ("alpha", 1e-5, 4e-4),
        axis2: ("total_time", 1e4, 2e5),
        resolution: 41,
        title: "Geometric loop phase per unit detuning: linear ratio ramp",
        runtime_note: None,
    },
    FigureSpec {
        id: "fig8b",
        experiment: "ramp_phase_sine",
        axis1: ("x_max", 0.1, 2.0),
        axis2: ("beta", 2e-5, 2e-4),
        resolution: 41,
        title: "Geometric loop phase per unit detuning: sine ratio ramp",
        runtime_note: None,
    },
];

/// Look up a figure preset by id.
pub fn find_figure(id: &str) -> Result<&'static FigureSpec> {
    FIGURES.iter().find(|f| f.id == id).ok_or_else(|| {
        let ids: Vec<&str> = FIGURES.iter().map(|f| f.id).collect();
        CliError::config(format!("unknown figure `{id}` (valid: {})", ids.join(", ")))
    })
}

/// Turn a preset into a runnable sweep, optionally thinning/refining the
/// grid to `resolution` points per axis.
pub fn figure_sweep(
    fig: &FigureSpec,
    resolution: Option<usize>,
    options: RunOptions,
) -> Result<SweepSpec> {
    let count = resolution.unwrap_or(fig.resolution);
    if count < 2 {
        return Err(CliError::config(format!(
            "figure resolution must be at least 2, got {count}"
        )));
    }
    let experiment = find_experiment(fig.experiment)?;
    let axis = |(name, min, max): (&'static str, f64, f64)| AxisSpec {
        name: name.to_string(),
        min,
        max,
        count,
    };
    Ok(SweepSpec {
        experiment,
        axis1: axis(fig.axis1),
        axis2: axis(fig.axis2),
        fixed: Default::default(),
        options,
    })
}

/// Unit annotation for a parameter (rates in `g`, times in `1/g`).
pub fn units_of(param: &str) -> &'static str {
    match param {
        "total_time" | "duration" => "[1/g]",
        "x_max" => "[dimensionless]",
        _ => "[g]",
    }
}

/// Renderer-agnostic plot description: a flat `key: value` block any
/// plotting tool can consume alongside the CSV.
pub fn plot_script(fig: &FigureSpec, csv_name: &str, resolution: usize) -> String {
    let experiment = find_experiment(fig.experiment).expect("preset experiments exist");
    let mut s = String::new();
    s.push_str(&format!("figure: {}\n", fig.id));
    s.push_str(&format!("csv: {csv_name}\n"));
    s.push_str("type: surface\n");
    s.push_str(&format!("grid: {resolution} x {resolution}\n"));
    s.push_str("columns: axis1, axis2, value\n");
    s.push_str(&format!("xlabel: {} {}\n", fig.axis1.0, units_of(fig.axis1.0)));
    s.push_str(&format!("ylabel: {} {}\n", fig.axis2.0, units_of(fig.axis2.0)));
    s.push_str(&format!("zlabel: {}\n", experiment.value_label));
    s.push_str(&format!("title: {}\n", fig.title));
    s
}
