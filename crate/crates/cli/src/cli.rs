//! Command-line interface: argument parsing and the five subcommand
//! runners.
//!
//! Exit codes: `0` success (including `--help`/`--version`), `1` for
//! configuration problems (bad flags, malformed or inconsistent config
//! files, unwritable output), `2` for numerical failures during a
//! computation.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use phasegate_core::gates::{run_gate, GateProtocol, Model};
use phasegate_core::hamiltonian::{DrivenHamiltonian, SystemParams};
use phasegate_core::hilbert::{
    make_named_state, HilbertSpace, NamedState, QuantumState, DEFAULT_N_MAX,
};
use phasegate_core::propagate::{propagate, IntegratorConfig};
use phasegate_core::pulses::PulseSchedule;
use phasegate_core::Complex64;

use crate::config::Config;
use crate::error::{CliError, Result};
use crate::experiments::{auto_step, raman_prep, stirap_prep, RunOptions};
use crate::figures::{figure_sweep, find_figure, plot_script};
use crate::output::{gate_csv, gate_text, parse_label, sweep_csv, trajectory_csv, write_file};
use crate::sweep::{run_sweep, SweepSpec};

/// Simulator and analysis runner for cavity-mediated entangling phase
/// gates. All rates are in units of the atom-cavity coupling `g`; times are
/// in `1/g`.
#[derive(Debug, Parser)]
#[command(name = "phasegate", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat `key = value` config file (see the README for per-command keys).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory for generated files (default: current directory).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for sweeps and figures (0 = all cores).
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    threads: usize,

    /// Cavity photon-number truncation.
    #[arg(long, global = true, value_name = "N_MAX")]
    nmax: Option<usize>,

    /// Fixed RK4 step in `1/g`, overriding the automatic choice.
    #[arg(long, global = true, value_name = "H", allow_negative_numbers = true)]
    step: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a pulse schedule and write the trajectory CSV.
    Evolve,
    /// Run an entangled-state preparation and print fidelity and P0.
    Prep,
    /// Run a controlled-phase gate protocol and print the report.
    Gate,
    /// Run a two-axis parameter sweep described by a config file.
    Sweep,
    /// Reproduce a canned figure grid (CSV plus plot description).
    Figure {
        /// Figure id: fig3, fig4, fig5, fig6a, fig6b, fig8a or fig8b.
        fig_id: String,
        /// Points per axis, replacing the preset resolution.
        #[arg(long, value_name = "N")]
        resolution: Option<usize>,
    },
}

/// Parse the process arguments and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let options = run_options(cli)?;
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match &cli.command {
        Command::Evolve => run_evolve(&load_config(cli)?, options, &out),
        Command::Prep => run_prep(&load_config(cli)?, options),
        Command::Gate => run_gate_cmd(&load_config(cli)?, options, cli.out.as_deref()),
        Command::Sweep => run_sweep_cmd(&load_config(cli)?, options, cli.threads, &out),
        Command::Figure { fig_id, resolution } => {
            if cli.config.is_some() {
                return Err(CliError::config(
                    "the figure command takes no config file; use `sweep` for custom grids",
                ));
            }
            run_figure(fig_id, *resolution, options, cli.threads, &out)
        }
    }
}

fn run_options(cli: &Cli) -> Result<RunOptions> {
    if let Some(h) = cli.step {
        if !(h > 0.0) || !h.is_finite() {
            return Err(CliError::config(format!(
                "--step must be positive and finite, got {h}"
            )));
        }
    }
    Ok(RunOptions { n_max: cli.nmax.unwrap_or(DEFAULT_N_MAX), step: cli.step })
}

fn load_config(cli: &Cli) -> Result<Config> {
    match &cli.config {
        Some(path) => Config::from_file(path),
        None => Ok(Config::empty()),
    }
}

fn config_err(err: phasegate_core::CoreError) -> CliError {
    CliError::config(err.to_string())
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Build the schedule requested by an `evolve` config; returns the
/// schedule, a peak-drive estimate for the automatic step, and whether the
/// drive is shaped.
fn schedule_from_config(cfg: &Config) -> Result<(PulseSchedule, f64, bool)> {
    let shape = cfg.require_str("shape")?;
    match shape.as_str() {
        "constant" => {
            let omega1 = cfg.f64_or("omega1", 0.01)?;
            let omega_sigma = cfg.f64_or("omega_sigma", 0.0)?;
            let duration = cfg.require_f64("duration")?;
            let schedule = PulseSchedule::constant(real(omega1), real(omega_sigma), duration)
                .map_err(config_err)?;
            Ok((schedule, omega1.abs() + omega_sigma.abs(), false))
        }
        "stirap_pair" => {
            let omega = cfg.f64_or("omega", 0.02)?;
            let omega_rate = cfg.f64_or("omega_rate", 4e-5)?;
            let schedule =
                PulseSchedule::stirap_pair(omega, omega_rate).map_err(config_err)?;
            Ok((schedule, 2.0 * omega.abs(), true))
        }
        "linear_ramp_ratio" => {
            let omega_sigma = cfg.f64_or("omega_sigma", 0.02)?;
            let alpha = cfg.f64_or("alpha", 4e-5)?;
            let total_time = cfg.f64_or("total_time", 1e5)?;
            let schedule = PulseSchedule::linear_ramp_ratio(omega_sigma, alpha, total_time)
                .map_err(config_err)?;
            let x_peak = alpha * total_time / 2.0;
            Ok((schedule, omega_sigma.abs() * (1.0 + x_peak.abs()), true))
        }
        "sine_ramp_ratio" => {
            let omega_sigma = cfg.f64_or("omega_sigma", 0.02)?;
            let x_max = cfg.f64_or("x_max", 1.0)?;
            let beta = cfg.f64_or("beta", 2e-4)?;
            let schedule =
                PulseSchedule::sine_ramp_ratio(omega_sigma, x_max, beta).map_err(config_err)?;
            Ok((schedule, omega_sigma.abs() * (1.0 + x_max.abs()), true))
        }
        other => Err(CliError::config(format!(
            "unknown shape `{other}` (valid: constant, stirap_pair, linear_ramp_ratio, sine_ramp_ratio)"
        ))),
    }
}

fn initial_state(cfg: &Config, space: HilbertSpace) -> Result<QuantumState> {
    let text = cfg.get_str("initial").unwrap_or_else(|| "1,1,0".to_string());
    let named = match text.as_str() {
        "alpha" => Some(NamedState::Alpha),
        "A" => Some(NamedState::A),
        "alpha_tilde" => Some(NamedState::AlphaTilde),
        "A_tilde" => Some(NamedState::ATilde),
        _ => None,
    };
    if let Some(which) = named {
        return Ok(make_named_state(space, which)?);
    }
    let (l1, l2, n) = parse_label(&text)?;
    QuantumState::basis(space, l1, l2, n).map_err(config_err)
}

fn run_evolve(cfg: &Config, options: RunOptions, out: &Path) -> Result<()> {
    let (schedule, peak, ramped) = schedule_from_config(cfg)?;
    let params = SystemParams {
        big_delta: cfg.f64_or("big_delta", 0.0)?,
        small_delta: cfg.f64_or("small_delta", 0.0)?,
        kappa: cfg.f64_or("kappa", 0.0)?,
        gamma: cfg.f64_or("gamma", 0.0)?,
        ..Default::default()
    };
    let duration = cfg.get_f64("duration")?.unwrap_or_else(|| schedule.total_time());
    if !(duration > 0.0) || !duration.is_finite() {
        return Err(CliError::config(format!(
            "duration must be positive and finite, got {duration}"
        )));
    }
    let space = HilbertSpace::new(options.n_max);
    let initial = initial_state(cfg, space)?;
    let mut labels = Vec::new();
    if let Some(list) = cfg.get_str("record") {
        for item in list.split(';') {
            let item = item.trim();
            if !item.is_empty() {
                labels.push(parse_label(item)?);
            }
        }
    }
    let step = options.step.unwrap_or_else(|| auto_step(&params, peak, options.n_max, ramped));
    let steps = (duration / step).ceil().max(1.0);
    let default_stride = ((steps as usize) / 1000).max(1);
    let record_stride = match cfg.get_usize("record_stride")? {
        Some(0) => {
            return Err(CliError::config(
                "record_stride must be at least 1 (omit the key for the automatic stride)",
            ))
        }
        Some(n) => n,
        None => default_stride,
    };
    cfg.finish()?;

    let driven = DrivenHamiltonian::conditional(space, &params, schedule);
    let int = IntegratorConfig { step, record_stride };
    let run = propagate(&driven, &initial, duration, &int)?;
    let csv = trajectory_csv(space, &run.trajectory, &labels)?;
    let path = write_file(out, "trajectory.csv", &csv)?;
    println!("duration = {duration}");
    println!("step = {step}");
    println!("p0 = {}", run.p0);
    println!("samples = {}", run.trajectory.len());
    println!("wrote {}", path.display());
    Ok(())
}

fn run_prep(cfg: &Config, options: RunOptions) -> Result<()> {
    let protocol = cfg.require_str("protocol")?;
    let kappa = cfg.f64_or("kappa", 0.1)?;
    let gamma = cfg.f64_or("gamma", 0.1)?;
    let outcome = match protocol.as_str() {
        "e_raman" => {
            let omega1 = cfg.f64_or("omega1", 0.01)?;
            let big_delta = cfg.f64_or("big_delta", 1.357)?;
            cfg.finish()?;
            raman_prep(omega1, big_delta, kappa, gamma, &options)?
        }
        "e_stirap" => {
            let omega = cfg.f64_or("omega", 0.02)?;
            let omega_rate = cfg.f64_or("omega_rate", 4e-5)?;
            cfg.finish()?;
            stirap_prep(omega, omega_rate, kappa, gamma, &options)?
        }
        other => {
            return Err(CliError::config(format!(
                "unknown protocol `{other}` (valid: e_raman, e_stirap)"
            )))
        }
    };
    println!("protocol = {protocol}");
    println!("duration = {}", outcome.duration);
    println!("readout_time = {}", outcome.readout_time);
    println!("F = {}", outcome.fidelity);
    println!("P0 = {}", outcome.p0);
    Ok(())
}

fn run_gate_cmd(cfg: &Config, options: RunOptions, out: Option<&Path>) -> Result<()> {
    let kind = cfg.require_str("kind")?;
    let model = match cfg.get_str("model").as_deref() {
        None | Some("full") => Model::Full,
        Some("effective") => Model::Effective,
        Some(other) => {
            return Err(CliError::config(format!(
                "unknown model `{other}` (valid: full, effective)"
            )))
        }
    };
    let kappa = cfg.f64_or("kappa", 0.1)?;
    let gamma = cfg.f64_or("gamma", 0.1)?;
    let (protocol, peak, ramped) = match kind.as_str() {
        "e_raman_cp" => {
            let omega1 = cfg.f64_or("omega1", 0.01)?;
            let omega_sigma = cfg.f64_or("omega_sigma", 0.01)?;
            let big_delta = cfg.f64_or("big_delta", 1.357)?;
            let p = GateProtocol::e_raman_cp(omega1, omega_sigma, big_delta, kappa, gamma)
                .map_err(config_err)?;
            (p, omega1.abs() + omega_sigma.abs(), false)
        }
        "one_laser_cp" => {
            let omega1 = cfg.f64_or("omega1", 0.01)?;
            let big_delta = cfg.f64_or("big_delta", 1.357)?;
            let p = GateProtocol::one_laser_cp(omega1, big_delta, kappa, gamma)
                .map_err(config_err)?;
            (p, omega1.abs(), false)
        }
        "e_stirap_dynamical_cp" => {
            let omega = cfg.f64_or("omega", 0.02)?;
            let omega_rate = cfg.f64_or("omega_rate", 4e-5)?;
            let p = GateProtocol::e_stirap_dynamical_cp(omega, omega_rate, kappa, gamma)
                .map_err(config_err)?;
            (p, 2.0 * omega.abs(), true)
        }
        "e_stirap_geometric_cp" => {
            let omega_sigma = cfg.f64_or("omega_sigma", 0.02)?;
            let small_delta = cfg.f64_or("small_delta", 1e-4)?;
            let ramp_shape = cfg.get_str("ramp").unwrap_or_else(|| "linear".to_string());
            let (ramp, x_peak) = match ramp_shape.as_str() {
                "linear" => {
                    let alpha = cfg.f64_or("alpha", 4e-5)?;
                    let total_time = cfg.f64_or("total_time", 1e5)?;
                    let ramp =
                        PulseSchedule::linear_ramp_ratio(omega_sigma, alpha, total_time)
                            .map_err(config_err)?;
                    (ramp, alpha * total_time / 2.0)
                }
                "sine" => {
                    let x_max = cfg.f64_or("x_max", 1.0)?;
                    let beta = cfg.f64_or("beta", 2e-4)?;
                    let ramp = PulseSchedule::sine_ramp_ratio(omega_sigma, x_max, beta)
                        .map_err(config_err)?;
                    (ramp, x_max)
                }
                other => {
                    return Err(CliError::config(format!(
                        "unknown ramp `{other}` (valid: linear, sine)"
                    )))
                }
            };
            let p = GateProtocol::e_stirap_geometric_cp(ramp, small_delta, kappa, gamma)
                .map_err(config_err)?;
            (p, omega_sigma.abs() * (1.0 + x_peak.abs()), true)
        }
        other => {
            return Err(CliError::config(format!(
                "unknown kind `{other}` (valid: e_raman_cp, one_laser_cp, e_stirap_dynamical_cp, e_stirap_geometric_cp)"
            )))
        }
    };
    let protocol = match cfg.get_f64("duration")? {
        Some(t) => protocol.with_duration(t),
        None => protocol,
    };
    cfg.finish()?;

    let space = HilbertSpace::new(options.n_max);
    let step = options
        .step
        .unwrap_or_else(|| auto_step(&protocol.params, peak, options.n_max, ramped));
    let int = IntegratorConfig { step, record_stride: 0 };
    let report = run_gate(&protocol, model, space, &int)?;
    print!("{}", gate_text(&kind, &report));
    if let Some(dir) = out {
        let path = write_file(dir, "gate.csv", &gate_csv(&kind, &report))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_sweep_cmd(cfg: &Config, options: RunOptions, threads: usize, out: &Path) -> Result<()> {
    let spec = SweepSpec::from_config(cfg, options)?;
    let result = run_sweep(spec, threads)?;
    let path = write_file(out, "sweep.csv", &sweep_csv(&result))?;
    println!(
        "wrote {} ({} points, {} failed)",
        path.display(),
        result.values.len(),
        result.failures()
    );
    Ok(())
}

fn run_figure(
    fig_id: &str,
    resolution: Option<usize>,
    options: RunOptions,
    threads: usize,
    out: &Path,
) -> Result<()> {
    let fig = find_figure(fig_id)?;
    if let Some(note) = fig.runtime_note {
        eprintln!("note: {note}");
    }
    let count = resolution.unwrap_or(fig.resolution);
    let spec = figure_sweep(fig, Some(count), options)?;
    let result = run_sweep(spec, threads)?;
    let csv_name = format!("{}.csv", fig.id);
    let csv_path = write_file(out, &csv_name, &sweep_csv(&result))?;
    let plot_path = write_file(out, &format!("{}.plot", fig.id), &plot_script(fig, &csv_name, count))?;
    println!(
        "wrote {} and {} ({} points, {} failed)",
        csv_path.display(),
        plot_path.display(),
        result.values.len(),
        result.failures()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_initial_states_resolve() {
        let cfg = Config::parse("initial = A\n").unwrap();
        let space = HilbertSpace::new(2);
        let state = initial_state(&cfg, space).unwrap();
        approx::assert_relative_eq!(state.norm2(), 1.0, max_relative = 1e-12);
        let cfg = Config::parse("initial = sigma,1,0\n").unwrap();
        let state = initial_state(&cfg, space).unwrap();
        approx::assert_relative_eq!(state.norm2(), 1.0, max_relative = 1e-12);
        let cfg = Config::parse("initial = bogus\n").unwrap();
        assert!(initial_state(&cfg, space).is_err());
    }

    #[test]
    fn schedule_shapes_parse_with_peaks() {
        let cfg = Config::parse("shape = constant\nomega1 = 0.01\nduration = 100\n").unwrap();
        let (schedule, peak, ramped) = schedule_from_config(&cfg).unwrap();
        assert_eq!(schedule.total_time(), 100.0);
        assert_eq!(peak, 0.01);
        assert!(!ramped);

        let cfg = Config::parse("shape = stirap_pair\nomega = 0.02\nomega_rate = 4e-5\n").unwrap();
        let (schedule, peak, ramped) = schedule_from_config(&cfg).unwrap();
        approx::assert_relative_eq!(
            schedule.total_time(),
            1.5 * std::f64::consts::PI / 4e-5,
            max_relative = 1e-12
        );
        assert_eq!(peak, 0.04);
        assert!(ramped);

        let cfg = Config::parse("shape = wiggle\n").unwrap();
        let err = schedule_from_config(&cfg).unwrap_err();
        assert!(err.to_string().contains("wiggle"), "{err}");
    }
}
