//! Named single-point experiments: the quantities the sweep engine and the
//! figure presets evaluate on a parameter grid.
//!
//! Every experiment maps a set of named scalar parameters (units of `g`;
//! times in `1/g`) to one scalar value. Parameter names match the
//! corresponding system/pulse field names, so axis declarations in sweep
//! configs read the same as the library API.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use phasegate_core::analytic::{ramp_phase, RamanConstants};
use phasegate_core::hamiltonian::{build_conditional, DrivenHamiltonian, LaserAmplitudes, SystemParams};
use phasegate_core::hilbert::{
    fidelity_conditional, make_named_state, AtomLevel, HilbertSpace, NamedState, QuantumState,
    DEFAULT_N_MAX,
};
use phasegate_core::propagate::{decay_window, default_decay_window, propagate, IntegratorConfig};
use phasegate_core::pulses::PulseSchedule;
use phasegate_core::Complex64;

use crate::error::{CliError, Result};

/// Global numerical knobs shared by every run: photon-number truncation and
/// an optional fixed integrator step overriding the automatic choice.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Cavity photon-number truncation.
    pub n_max: usize,
    /// Fixed RK4 step; `None` selects the automatic stability-bounded step.
    pub step: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { n_max: DEFAULT_N_MAX, step: None }
    }
}

/// Resolved parameter values for one experiment evaluation.
pub type ParamMap = BTreeMap<&'static str, f64>;

/// A named scalar-valued experiment over named scalar parameters.
#[derive(Debug)]
pub struct Experiment {
    /// Identifier used in sweep configs and figure presets.
    pub name: &'static str,
    /// Label of the computed value (CSV metadata and plot axes).
    pub value_label: &'static str,
    /// Accepted parameters with their default values.
    pub params: &'static [(&'static str, f64)],
    eval: fn(&ParamMap, &RunOptions) -> Result<f64>,
}

impl Experiment {
    /// Whether `name` is one of this experiment's parameters.
    pub fn has_param(&self, name: &str) -> bool {
        self.params.iter().any(|(p, _)| *p == name)
    }

    /// Default parameter map.
    pub fn defaults(&self) -> ParamMap {
        self.params.iter().copied().collect()
    }

    /// Comma-separated parameter list (for error messages).
    pub fn param_list(&self) -> String {
        let names: Vec<&str> = self.params.iter().map(|(p, _)| *p).collect();
        names.join(", ")
    }

    /// Evaluate the experiment at fully resolved parameter values.
    pub fn eval(&self, params: &ParamMap, options: &RunOptions) -> Result<f64> {
        (self.eval)(params, options)
    }
}

/// All experiments understood by `sweep` and the figure presets.
pub static EXPERIMENTS: &[Experiment] = &[
    Experiment {
        name: "fig3_P0",
        value_label: "P0",
        params: &[
            ("omega1", 0.01),
            ("big_delta", 0.0),
            ("small_delta", 0.0),
            ("kappa", 0.1),
            ("gamma", 0.1),
            ("duration", 2000.0),
        ],
        eval: |p, opt| Ok(spectator_hold(&SpectatorHoldSetup::from_params(p), opt)?.p0_total),
    },
    Experiment {
        name: "raman_prep_F",
        value_label: "F",
        params: RAMAN_PREP_PARAMS,
        eval: |p, opt| Ok(raman_prep_from_map(p, opt)?.fidelity),
    },
    Experiment {
        name: "raman_prep_P0",
        value_label: "P0",
        params: RAMAN_PREP_PARAMS,
        eval: |p, opt| Ok(raman_prep_from_map(p, opt)?.p0),
    },
    Experiment {
        name: "stirap_prep_F",
        value_label: "F",
        params: STIRAP_PREP_PARAMS,
        eval: |p, opt| Ok(stirap_prep_from_map(p, opt)?.fidelity),
    },
    Experiment {
        name: "stirap_prep_P0",
        value_label: "P0",
        params: STIRAP_PREP_PARAMS,
        eval: |p, opt| Ok(stirap_prep_from_map(p, opt)?.p0),
    },
    Experiment {
        name: "ramp_phase_linear",
        value_label: "phi_g_per_delta",
        params: &[("alpha", 4e-5), ("total_time", 1e5), ("omega_sigma", 0.02)],
        eval: |p, _| {
            let ramp = PulseSchedule::linear_ramp_ratio(
                param(p, "omega_sigma"),
                param(p, "alpha"),
                param(p, "total_time"),
            )
            .map_err(invalid_param)?;
            Ok(ramp_phase(&ramp, 0.0)?.ratio)
        },
    },
    Experiment {
        name: "ramp_phase_sine",
        value_label: "phi_g_per_delta",
        params: &[("x_max", 1.0), ("beta", 2e-4), ("omega_sigma", 0.02)],
        eval: |p, _| {
            let ramp = PulseSchedule::sine_ramp_ratio(
                param(p, "omega_sigma"),
                param(p, "x_max"),
                param(p, "beta"),
            )
            .map_err(invalid_param)?;
            Ok(ramp_phase(&ramp, 0.0)?.ratio)
        },
    },
];

const RAMAN_PREP_PARAMS: &[(&str, f64)] =
    &[("omega1", 0.01), ("big_delta", 1.357), ("kappa", 0.1), ("gamma", 0.1)];

const STIRAP_PREP_PARAMS: &[(&str, f64)] =
    &[("omega", 0.02), ("omega_rate", 4e-5), ("kappa", 0.1), ("gamma", 0.1)];

/// Look up an experiment by name.
pub fn find_experiment(name: &str) -> Result<&'static Experiment> {
    EXPERIMENTS.iter().find(|e| e.name == name).ok_or_else(|| {
        let names: Vec<&str> = EXPERIMENTS.iter().map(|e| e.name).collect();
        CliError::config(format!(
            "unknown experiment `{name}` (valid: {})",
            names.join(", ")
        ))
    })
}

fn param(p: &ParamMap, name: &'static str) -> f64 {
    *p.get(name).expect("parameter map resolved against the experiment's parameter list")
}

/// Parameter errors raised while building schedules from user values are
/// configuration errors, not numerical failures.
fn invalid_param(err: phasegate_core::CoreError) -> CliError {
    CliError::config(err.to_string())
}

/// Automatic RK4 step: `2.5` divided by a spectral-radius bound of the
/// conditional Hamiltonian (detunings, the Jaynes–Cummings ladder at the
/// configured truncation, decay rates and the peak drive), capped at `0.4`
/// for constant drives and `0.25` for shaped pulses. The cap keeps the step
/// well inside the accuracy regime even when the stability bound is loose.
pub fn auto_step(params: &SystemParams, peak_drive: f64, n_max: usize, ramped: bool) -> f64 {
    let ladder = 1.5 * params.g * (2.0 * (n_max as f64 + 1.0)).sqrt();
    let bound = 2.0 * params.big_delta.abs()
        + 2.0 * params.small_delta.abs()
        + ladder
        + params.kappa
        + params.gamma
        + peak_drive;
    let cap = if ramped { 0.25 } else { 0.4 };
    (2.5 / bound).min(cap)
}

/// Integrator configuration for a run: the explicit step override if given,
/// otherwise the automatic step.
pub fn integrator_for(
    params: &SystemParams,
    peak_drive: f64,
    opt: &RunOptions,
    ramped: bool,
) -> IntegratorConfig {
    let step = opt.step.unwrap_or_else(|| auto_step(params, peak_drive, opt.n_max, ramped));
    IntegratorConfig { step, record_stride: 0 }
}

/// Outcome of a preparation run.
#[derive(Debug, Clone, Copy)]
pub struct PrepOutcome {
    /// Total schedule duration.
    pub duration: f64,
    /// Time at which fidelity and success probability are read out.
    pub readout_time: f64,
    /// Conditional fidelity to the maximally entangled `|A>` at readout.
    pub fidelity: f64,
    /// No-photon success probability accumulated up to readout.
    pub p0: f64,
}

/// Raman preparation: constant equal drives `Omega_1 = Omega_sigma = omega1`
/// at common detuning `big_delta` (two-photon resonance, `delta = 0`) for
/// half an effective Rabi period `T = pi / K`, transferring `|11>` to `|A>`.
pub fn raman_prep(
    omega1: f64,
    big_delta: f64,
    kappa: f64,
    gamma: f64,
    opt: &RunOptions,
) -> Result<PrepOutcome> {
    let params = SystemParams { big_delta, kappa, gamma, ..Default::default() };
    let lasers = LaserAmplitudes::real(omega1, omega1);
    let constants = RamanConstants::from_params(&params, &lasers).map_err(invalid_param)?;
    if constants.k == 0.0 {
        return Err(CliError::config(
            "raman_prep: effective coupling vanishes (zero drive)",
        ));
    }
    let duration = PI / constants.k;
    let space = HilbertSpace::new(opt.n_max);
    let h = build_conditional(space, &params, &lasers);
    let initial =
        QuantumState::basis(space, AtomLevel::One, AtomLevel::One, 0).map_err(invalid_param)?;
    let cfg = integrator_for(&params, 2.0 * omega1.abs(), opt, false);
    let run = propagate(&h, &initial, duration, &cfg)?;
    let target = make_named_state(space, NamedState::A)?;
    Ok(PrepOutcome {
        duration,
        readout_time: duration,
        fidelity: fidelity_conditional(&target, &run.final_state)?,
        p0: run.p0,
    })
}

/// STIRAP preparation: counterintuitive pulse pair at `Delta = delta = 0`,
/// read out when the transfer completes at `t = pi / omega_rate` (two thirds
/// of the full schedule), where the drive ratio reaches its pure-`Omega_1`
/// point and the dark state coincides with `|A>`.
pub fn stirap_prep(
    omega: f64,
    omega_rate: f64,
    kappa: f64,
    gamma: f64,
    opt: &RunOptions,
) -> Result<PrepOutcome> {
    let params = SystemParams { kappa, gamma, ..Default::default() };
    let schedule = PulseSchedule::stirap_pair(omega, omega_rate).map_err(invalid_param)?;
    let duration = schedule.total_time();
    let readout_time = PI / omega_rate;
    let space = HilbertSpace::new(opt.n_max);
    let driven = DrivenHamiltonian::conditional(space, &params, schedule);
    let initial =
        QuantumState::basis(space, AtomLevel::One, AtomLevel::One, 0).map_err(invalid_param)?;
    let cfg = integrator_for(&params, omega.abs(), opt, true);
    let run = propagate(&driven, &initial, readout_time, &cfg)?;
    let target = make_named_state(space, NamedState::A)?;
    Ok(PrepOutcome {
        duration,
        readout_time,
        fidelity: fidelity_conditional(&target, &run.final_state)?,
        p0: run.p0,
    })
}

/// Inputs of the spectator-hold run (initial `|01>` under a lone constant
/// `Omega_1` drive).
#[derive(Debug, Clone, Copy)]
pub struct SpectatorHoldSetup {
    /// Drive amplitude on the `1 <-> 2` transition.
    pub omega1: f64,
    /// Common detuning.
    pub big_delta: f64,
    /// Two-photon detuning.
    pub small_delta: f64,
    /// Cavity decay rate.
    pub kappa: f64,
    /// Spontaneous-emission rate.
    pub gamma: f64,
    /// Hold duration.
    pub duration: f64,
}

impl SpectatorHoldSetup {
    fn from_params(p: &ParamMap) -> SpectatorHoldSetup {
        SpectatorHoldSetup {
            omega1: param(p, "omega1"),
            big_delta: param(p, "big_delta"),
            small_delta: param(p, "small_delta"),
            kappa: param(p, "kappa"),
            gamma: param(p, "gamma"),
            duration: param(p, "duration"),
        }
    }
}

/// Outcome of the spectator-hold run.
#[derive(Debug, Clone, Copy)]
pub struct SpectatorHoldOutcome {
    /// Success probability including the trailing decay window.
    pub p0_total: f64,
    /// Conditional fidelity to `|01>` after the decay window.
    pub fidelity: f64,
}

/// Hold `|01>` under a lone `Omega_1` drive for `duration`, then let excited
/// amplitude drain through the default decay window. The cavity-protected
/// spectator should return to `|01>` with high conditional fidelity while
/// the accumulated emission probability stays small.
pub fn spectator_hold(setup: &SpectatorHoldSetup, opt: &RunOptions) -> Result<SpectatorHoldOutcome> {
    let params = SystemParams {
        big_delta: setup.big_delta,
        small_delta: setup.small_delta,
        kappa: setup.kappa,
        gamma: setup.gamma,
        ..Default::default()
    };
    if !(setup.duration > 0.0) || !setup.duration.is_finite() {
        return Err(CliError::config(format!(
            "spectator hold: duration must be positive and finite, got {}",
            setup.duration
        )));
    }
    let space = HilbertSpace::new(opt.n_max);
    let lasers = LaserAmplitudes::real(setup.omega1, 0.0);
    let h = build_conditional(space, &params, &lasers);
    let initial =
        QuantumState::basis(space, AtomLevel::Zero, AtomLevel::One, 0).map_err(invalid_param)?;
    let cfg = integrator_for(&params, setup.omega1.abs(), opt, false);
    let run = propagate(&h, &initial, setup.duration, &cfg)?;
    let window = decay_window(&params, &run.final_state, default_decay_window(&params))?;
    let target = QuantumState::basis(space, AtomLevel::Zero, AtomLevel::One, 0)?;
    Ok(SpectatorHoldOutcome {
        p0_total: run.p0 * window.p0,
        fidelity: fidelity_conditional(&target, &window.final_state)?,
    })
}

fn raman_prep_from_map(p: &ParamMap, opt: &RunOptions) -> Result<PrepOutcome> {
    raman_prep(
        param(p, "omega1"),
        param(p, "big_delta"),
        param(p, "kappa"),
        param(p, "gamma"),
        opt,
    )
}

fn stirap_prep_from_map(p: &ParamMap, opt: &RunOptions) -> Result<PrepOutcome> {
    stirap_prep(
        param(p, "omega"),
        param(p, "omega_rate"),
        param(p, "kappa"),
        param(p, "gamma"),
        opt,
    )
}

/// `Complex64` helper for call sites constructing constant schedules.
pub fn real_amp(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
