//! Two-axis parameter sweeps over the named experiments.
//!
//! Grids are inclusive linspaces with index-based spacing, evaluated in a
//! fixed row-major order (axis 1 outer, axis 2 inner). Points are
//! independent, so the work parallelizes freely; results are collected back
//! in index order, making the output bit-identical for any thread count. A
//! failing point contributes `NaN` and a log line on stderr instead of
//! aborting the sweep.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::config::Config;
use crate::error::{CliError, Result};
use crate::experiments::{find_experiment, Experiment, ParamMap, RunOptions};

/// One inclusive linearly spaced sweep axis.
#[derive(Debug, Clone)]
pub struct AxisSpec {
    /// Parameter the axis varies.
    pub name: String,
    /// First grid value.
    pub min: f64,
    /// Last grid value (inclusive).
    pub max: f64,
    /// Number of grid points (at least 2).
    pub count: usize,
}

impl AxisSpec {
    /// Grid value at index `i` (`0 <= i < count`). The endpoints are exact.
    pub fn value(&self, i: usize) -> f64 {
        if i == 0 {
            self.min
        } else if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * (i as f64) / ((self.count - 1) as f64)
        }
    }

    fn validate(&self, experiment: &Experiment, which: &str) -> Result<()> {
        if !experiment.has_param(&self.name) {
            return Err(CliError::config(format!(
                "{which}: `{}` is not a parameter of experiment `{}` (valid: {})",
                self.name,
                experiment.name,
                experiment.param_list()
            )));
        }
        if self.count < 2 {
            return Err(CliError::config(format!(
                "{which}_count must be at least 2, got {}",
                self.count
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(CliError::config(format!(
                "{which}: bounds must be finite, got [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }
}

/// A fully validated sweep request.
#[derive(Debug)]
pub struct SweepSpec {
    /// Experiment evaluated at every grid point.
    pub experiment: &'static Experiment,
    /// Outer axis.
    pub axis1: AxisSpec,
    /// Inner axis.
    pub axis2: AxisSpec,
    /// Overrides for the remaining experiment parameters.
    pub fixed: BTreeMap<String, f64>,
    /// Numerical options applied to every point.
    pub options: RunOptions,
}

impl SweepSpec {
    /// Build and validate a sweep from a flat config:
    /// `experiment`, `axis1`/`axis1_min`/`axis1_max`/`axis1_count`, the same
    /// for `axis2`, plus optional fixed values for the remaining experiment
    /// parameters. Any other key is rejected by name.
    pub fn from_config(cfg: &Config, options: RunOptions) -> Result<SweepSpec> {
        let experiment = find_experiment(&cfg.require_str("experiment")?)?;
        let read_axis = |which: &str| -> Result<AxisSpec> {
            let axis = AxisSpec {
                name: cfg.require_str(which)?,
                min: cfg.require_f64(&format!("{which}_min"))?,
                max: cfg.require_f64(&format!("{which}_max"))?,
                count: cfg.require_usize(&format!("{which}_count"))?,
            };
            axis.validate(experiment, which)?;
            Ok(axis)
        };
        let axis1 = read_axis("axis1")?;
        let axis2 = read_axis("axis2")?;
        if axis1.name == axis2.name {
            return Err(CliError::config(format!(
                "axis1 and axis2 must vary different parameters, both are `{}`",
                axis1.name
            )));
        }
        let mut fixed = BTreeMap::new();
        for (pname, _) in experiment.params {
            let is_axis = *pname == axis1.name || *pname == axis2.name;
            if let Some(v) = cfg.get_f64(pname)? {
                if is_axis {
                    return Err(CliError::config(format!(
                        "parameter `{pname}` is a sweep axis and cannot also be fixed"
                    )));
                }
                fixed.insert(pname.to_string(), v);
            }
        }
        cfg.finish()?;
        Ok(SweepSpec { experiment, axis1, axis2, fixed, options })
    }

    /// Parameter map for grid point `(v1, v2)`: experiment defaults, then
    /// fixed overrides, then the axis values.
    pub fn resolve(&self, v1: f64, v2: f64) -> ParamMap {
        let mut p = self.experiment.defaults();
        for (name, value) in &self.fixed {
            for (pname, _) in self.experiment.params {
                if pname == name {
                    p.insert(pname, *value);
                }
            }
        }
        for (pname, _) in self.experiment.params {
            if *pname == self.axis1.name {
                p.insert(pname, v1);
            }
            if *pname == self.axis2.name {
                p.insert(pname, v2);
            }
        }
        p
    }

    /// Total number of grid points.
    pub fn points(&self) -> usize {
        self.axis1.count * self.axis2.count
    }
}

/// A completed sweep: the spec it ran from and one value per grid point in
/// row-major order (axis 1 outer, axis 2 inner).
#[derive(Debug)]
pub struct SweepResult {
    /// The sweep request.
    pub spec: SweepSpec,
    /// Values in row-major grid order; failed points hold `NaN`.
    pub values: Vec<f64>,
}

impl SweepResult {
    /// Number of failed (`NaN`) points.
    pub fn failures(&self) -> usize {
        self.values.iter().filter(|v| v.is_nan()).count()
    }
}

/// Run a sweep on `threads` worker threads (`0` = library default).
///
/// The value list is assembled in grid order regardless of the thread
/// count, so the rendered CSV is byte-identical for any `threads`.
pub fn run_sweep(spec: SweepSpec, threads: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::config(format!("cannot build thread pool: {e}")))?;
    let n2 = spec.axis2.count;
    let eval_point = |idx: usize| -> f64 {
        let (i, j) = (idx / n2, idx % n2);
        let v1 = spec.axis1.value(i);
        let v2 = spec.axis2.value(j);
        match spec.experiment.eval(&spec.resolve(v1, v2), &spec.options) {
            Ok(v) => v,
            Err(err) => {
                eprintln!(
                    "sweep point ({} = {v1}, {} = {v2}) failed: {err}",
                    spec.axis1.name, spec.axis2.name
                );
                f64::NAN
            }
        }
    };
    let values: Vec<f64> =
        pool.install(|| (0..spec.points()).into_par_iter().map(eval_point).collect());
    Ok(SweepResult { spec, values })
}
