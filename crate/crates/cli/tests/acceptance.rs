//! Acceptance suite: seven end-to-end criteria, one printed verdict line per
//! criterion. Run with
//!
//! ```text
//! cargo test -p phasegate-cli --test acceptance -- --nocapture
//! ```
//!
//! to see every line. Each test computes its measurements first, prints one
//! `acceptance criterion N (...): PASS/FAIL — ...` line, and only then
//! asserts, so a failing criterion still reports its numbers.
//!
//! One check is expected to fail: the timing-robustness bound in criterion 5
//! asks for a phase sensitivity below `1e-3 K` at the constant-drive
//! operating point, but the sensitivity there is the parameter-free fraction
//! `K / (2 sqrt 2) ~ 0.354 K`. The test states that analysis and fails
//! honestly rather than weakening the bound.

use std::f64::consts::PI;
use std::sync::OnceLock;

use phasegate_cli::experiments::{auto_step, spectator_hold, RunOptions, SpectatorHoldSetup};
use phasegate_cli::output::sweep_csv;
use phasegate_cli::sweep::{run_sweep, AxisSpec, SweepSpec};
use phasegate_core::analytic::{
    ramp_phase, raman_propagator, stirap_eigensystem, stirap_rotation, wrap_phase, RamanConstants,
};
use phasegate_core::gates::{run_gate, GateProtocol, Model};
use phasegate_core::hamiltonian::{
    build_conditional, build_effective, build_raman_reduced, DrivenHamiltonian, LaserAmplitudes,
    SystemParams,
};
use phasegate_core::hilbert::{
    fidelity_conditional, make_named_state, AtomLevel, HilbertSpace, NamedState, QuantumState,
};
use phasegate_core::operator::OperatorMatrix;
use phasegate_core::propagate::{propagate, propagate_effective, IntegratorConfig};
use phasegate_core::pulses::PulseSchedule;
use phasegate_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Headline operating points (units of g; times in 1/g).

/// Drive amplitude of the constant-drive preparation and gate runs.
const OMEGA: f64 = 0.01;
/// Common one-photon detuning of the constant-drive runs.
const BIG_DELTA: f64 = 1.357;
/// Cavity decay rate.
const KAPPA: f64 = 0.1;
/// Spontaneous-emission rate.
const GAMMA: f64 = 0.1;
/// Peak amplitude of the counterintuitive pulse pair.
const STIRAP_OMEGA: f64 = 0.02;
/// Pulse rate of the counterintuitive pair.
const STIRAP_RATE: f64 = 4e-5;
/// Ramp slope and loop duration of the geometric gate defaults.
const RAMP_ALPHA: f64 = 4e-5;
const RAMP_TOTAL: f64 = 1e5;
/// Two-photon detuning of the geometric loop.
const RAMP_DELTA: f64 = 1e-4;

// ---------------------------------------------------------------------------
// Pinned tolerances, one block per criterion.

// 1: constant-drive preparation of the entangled |A> state.
const PREP_RAMAN_F: f64 = 0.993;
const PREP_RAMAN_F_TOL: f64 = 0.005;
const PREP_RAMAN_P0: f64 = 0.857;
const PREP_RAMAN_P0_TOL: f64 = 0.02;
const PREP_RAMAN_STEP: f64 = 0.02;

// 2: adiabatic-passage preparation of the same state.
const PREP_STIRAP_F: f64 = 0.998;
const PREP_STIRAP_F_TOL: f64 = 0.004;
const PREP_STIRAP_P0: f64 = 0.876;
const PREP_STIRAP_P0_TOL: f64 = 0.02;
const PREP_STIRAP_STEP: f64 = 0.25;

// 3: spectator hold of |01> under a lone drive.
const HOLD_INFIDELITY_MAX: f64 = 1e-4;
const HOLD_P0_VARIATION_FRAC: f64 = 0.20;
const HOLD_STEP: f64 = 0.02;
const HOLD_DURATION: f64 = 2000.0;

// 4: closed forms against independent numerics.
const DRAWS: usize = 100;
const PROPAGATOR_TOL: f64 = 1e-8;
const DARK_RESIDUAL_TOL: f64 = 1e-12;
const UNITARITY_TOL: f64 = 1e-12;

// 5: controlled-phase values and timing sensitivity.
const PHASE_TOL_EFFECTIVE: f64 = 1e-6;
const PHASE_TOL_FULL: f64 = 0.05;
const SIGN_TOL: f64 = 1e-12;
const TIMING_SLOPE_FRACTION: f64 = 1e-3;
const TIMING_OFFSET_FRACTION: f64 = 0.01;

// 6: geometric loop phase.
const RAMP_CLOSED_FORM_TOL: f64 = 1e-6;
const PLATEAU_VARIATION_MAX: f64 = 0.05;
const GEOMETRIC_PHASE_TOL: f64 = 0.05;
const GEOMETRIC_STEP: f64 = 0.25;

// 7: numerics hygiene.
const NORM_GROWTH_MAX: f64 = 1e-12;
const RK4_SLOPE: f64 = 4.0;
const RK4_SLOPE_TOL: f64 = 0.3;
const TRUNCATION_TOL: f64 = 1e-6;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Circular distance between two angles.
fn phase_dist(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

// ---------------------------------------------------------------------------
// Shared heavy runs: each preparation is integrated once per truncation and
// reused by criteria 1, 2 and 7.

struct PrepRun {
    fidelity: f64,
    p0: f64,
    /// Squared norms of the recorded trajectory, in time order.
    norms: Vec<f64>,
    steps: usize,
}

/// Constant-drive preparation at the headline parameters: equal drives on
/// two-photon resonance for half an effective Rabi period, read out at the
/// end of the pulse.
fn raman_prep_run(n_max: usize) -> PrepRun {
    let params =
        SystemParams { big_delta: BIG_DELTA, kappa: KAPPA, gamma: GAMMA, ..Default::default() };
    let lasers = LaserAmplitudes::real(OMEGA, OMEGA);
    let constants = RamanConstants::from_params(&params, &lasers).unwrap();
    let duration = PI / constants.k;
    let space = HilbertSpace::new(n_max);
    let h = build_conditional(space, &params, &lasers);
    let initial = QuantumState::basis(space, AtomLevel::One, AtomLevel::One, 0).unwrap();
    let steps = (duration / PREP_RAMAN_STEP).ceil() as usize;
    let cfg = IntegratorConfig { step: PREP_RAMAN_STEP, record_stride: (steps / 2000).max(1) };
    let run = propagate(&h, &initial, duration, &cfg).unwrap();
    let target = make_named_state(space, NamedState::A).unwrap();
    PrepRun {
        fidelity: fidelity_conditional(&target, &run.final_state).unwrap(),
        p0: run.p0,
        norms: run.trajectory.iter().map(|s| s.norm2).collect(),
        steps,
    }
}

/// Adiabatic-passage preparation at the headline parameters, read out when
/// the transfer completes at `t = pi / omega_rate`.
fn stirap_prep_run(n_max: usize) -> PrepRun {
    let params = SystemParams { kappa: KAPPA, gamma: GAMMA, ..Default::default() };
    let schedule = PulseSchedule::stirap_pair(STIRAP_OMEGA, STIRAP_RATE).unwrap();
    let readout = PI / STIRAP_RATE;
    let space = HilbertSpace::new(n_max);
    let driven = DrivenHamiltonian::conditional(space, &params, schedule);
    let initial = QuantumState::basis(space, AtomLevel::One, AtomLevel::One, 0).unwrap();
    let steps = (readout / PREP_STIRAP_STEP).ceil() as usize;
    let cfg = IntegratorConfig { step: PREP_STIRAP_STEP, record_stride: (steps / 2000).max(1) };
    let run = propagate(&driven, &initial, readout, &cfg).unwrap();
    let target = make_named_state(space, NamedState::A).unwrap();
    PrepRun {
        fidelity: fidelity_conditional(&target, &run.final_state).unwrap(),
        p0: run.p0,
        norms: run.trajectory.iter().map(|s| s.norm2).collect(),
        steps,
    }
}

fn raman_n2() -> &'static PrepRun {
    static RUN: OnceLock<PrepRun> = OnceLock::new();
    RUN.get_or_init(|| raman_prep_run(2))
}

fn raman_n3() -> &'static PrepRun {
    static RUN: OnceLock<PrepRun> = OnceLock::new();
    RUN.get_or_init(|| raman_prep_run(3))
}

fn stirap_n2() -> &'static PrepRun {
    static RUN: OnceLock<PrepRun> = OnceLock::new();
    RUN.get_or_init(|| stirap_prep_run(2))
}

fn stirap_n3() -> &'static PrepRun {
    static RUN: OnceLock<PrepRun> = OnceLock::new();
    RUN.get_or_init(|| stirap_prep_run(3))
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_e_raman_preparation() {
    let run = raman_n2();
    let f_ok = (run.fidelity - PREP_RAMAN_F).abs() <= PREP_RAMAN_F_TOL;
    let p_ok = (run.p0 - PREP_RAMAN_P0).abs() <= PREP_RAMAN_P0_TOL;
    println!(
        "acceptance criterion 1 (e-raman preparation): {} — F = {:.10} (want {PREP_RAMAN_F} ± {PREP_RAMAN_F_TOL}), P0 = {:.10} (want {PREP_RAMAN_P0} ± {PREP_RAMAN_P0_TOL}), {} rk4 steps",
        verdict(f_ok && p_ok),
        run.fidelity,
        run.p0,
        run.steps,
    );
    assert!(f_ok, "entangled-state fidelity {} outside {PREP_RAMAN_F} ± {PREP_RAMAN_F_TOL}", run.fidelity);
    assert!(p_ok, "success probability {} outside {PREP_RAMAN_P0} ± {PREP_RAMAN_P0_TOL}", run.p0);
}

#[test]
fn criterion_2_e_stirap_preparation() {
    let run = stirap_n2();
    let f_ok = (run.fidelity - PREP_STIRAP_F).abs() <= PREP_STIRAP_F_TOL;
    let p_ok = (run.p0 - PREP_STIRAP_P0).abs() <= PREP_STIRAP_P0_TOL;
    println!(
        "acceptance criterion 2 (e-stirap preparation): {} — F = {:.10} (want {PREP_STIRAP_F} ± {PREP_STIRAP_F_TOL}), P0 = {:.10} (want {PREP_STIRAP_P0} ± {PREP_STIRAP_P0_TOL}), {} rk4 steps",
        verdict(f_ok && p_ok),
        run.fidelity,
        run.p0,
        run.steps,
    );
    assert!(f_ok, "entangled-state fidelity {} outside {PREP_STIRAP_F} ± {PREP_STIRAP_F_TOL}", run.fidelity);
    assert!(p_ok, "success probability {} outside {PREP_STIRAP_P0} ± {PREP_STIRAP_P0_TOL}", run.p0);
}

#[test]
fn criterion_3_spectator_hold() {
    let opt = RunOptions { n_max: 2, step: Some(HOLD_STEP) };
    let hold = |omega1: f64, big_delta: f64| {
        let setup = SpectatorHoldSetup {
            omega1,
            big_delta,
            small_delta: 0.0,
            kappa: KAPPA,
            gamma: GAMMA,
            duration: HOLD_DURATION,
        };
        spectator_hold(&setup, &opt).unwrap()
    };

    // Return fidelity and detuning insensitivity at the headline amplitude.
    let deltas = [0.0, 0.5, 1.0, 2.0];
    let over_delta: Vec<_> = deltas.iter().map(|&d| hold(OMEGA, d)).collect();
    let worst_f = over_delta.iter().map(|o| o.fidelity).fold(f64::INFINITY, f64::min);
    let f_ok = worst_f >= 1.0 - HOLD_INFIDELITY_MAX;

    let p0s: Vec<f64> = over_delta.iter().map(|o| o.p0_total).collect();
    let p0_max = p0s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let p0_min = p0s.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = p0_max - p0_min;
    // Hardest reading of "a fraction of the loss": compare against the
    // smallest loss on the grid.
    let min_loss = 1.0 - p0_max;
    let spread_ok = spread < HOLD_P0_VARIATION_FRAC * min_loss;

    // The emission probability grows with drive amplitude.
    let amps = [0.5 * OMEGA, OMEGA, 2.0 * OMEGA];
    let p_by_amp: Vec<f64> = amps.iter().map(|&o| hold(o, 1.0).p0_total).collect();
    let mono_ok = p_by_amp.windows(2).all(|w| w[1] < w[0]);

    println!(
        "acceptance criterion 3 (spectator hold): {} — worst F = {:.10} (floor {}), P0 spread over detuning = {:.3e} ({:.2}% of the smallest loss {:.3e}, cap {:.0}%), P0 falls with amplitude: {:?}",
        verdict(f_ok && spread_ok && mono_ok),
        worst_f,
        1.0 - HOLD_INFIDELITY_MAX,
        spread,
        100.0 * spread / min_loss,
        min_loss,
        100.0 * HOLD_P0_VARIATION_FRAC,
        p_by_amp,
    );
    assert!(f_ok, "spectator return fidelity {worst_f} below {}", 1.0 - HOLD_INFIDELITY_MAX);
    assert!(
        spread_ok,
        "success-probability spread {spread:.3e} exceeds {HOLD_P0_VARIATION_FRAC} of the loss {min_loss:.3e}"
    );
    assert!(mono_ok, "success probability not strictly decreasing with amplitude: {p_by_amp:?}");
}

// ---------------------------------------------------------------------------

/// Independent matrix exponential `exp(-i H t)` by scaling-and-squaring of
/// the Taylor series; oracle for criterion 4 only.
fn expm_neg_i(h: &OperatorMatrix, t: f64) -> OperatorMatrix {
    let dim = h.dim();
    let mut a = h.clone();
    a.scale(Complex64::new(0.0, -t));
    let norm = a.max_abs() * dim as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    a.scale(Complex64::new(1.0 / 2f64.powi(squarings), 0.0));
    let mut result = OperatorMatrix::identity(dim);
    let mut term = OperatorMatrix::identity(dim);
    for k in 1..=30u32 {
        term = term.matmul(&a);
        term.scale(Complex64::new(1.0 / k as f64, 0.0));
        result.axpy(Complex64::ONE, &term);
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

#[test]
fn criterion_4_analytic_numeric_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    let cfg = IntegratorConfig { step: 0.005, record_stride: 0 };

    // (a) Closed-form two-level propagator against the matrix exponential and
    // against direct integration, over random amplitudes and detunings.
    let mut worst_expm: f64 = 0.0;
    let mut worst_prop: f64 = 0.0;
    for _ in 0..DRAWS {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let params = SystemParams {
            big_delta: sign * rng.gen_range(0.5..2.0),
            small_delta: rng.gen_range(-0.1..0.1),
            ..Default::default()
        };
        let lasers = LaserAmplitudes {
            omega1: Complex64::from_polar(rng.gen_range(0.005..0.3), rng.gen_range(-PI..PI)),
            omega_sigma: Complex64::from_polar(rng.gen_range(0.005..0.3), rng.gen_range(-PI..PI)),
        };
        let t = rng.gen_range(1.0..300.0);
        let constants = RamanConstants::from_params(&params, &lasers).unwrap();
        let u_closed = raman_propagator(&constants, t);
        let h_red = build_raman_reduced(&params, &lasers).unwrap();
        worst_expm = worst_expm.max(u_closed.max_abs_diff(&expm_neg_i(&h_red, t)));

        let v = [
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let v = [v[0] / n, v[1] / n];
        let integrated = propagate_effective(&h_red, &v, t, &cfg).unwrap().final_amplitudes;
        let applied = u_closed.mul_vec(&v).unwrap();
        for (a, b) in integrated.iter().zip(&applied) {
            worst_prop = worst_prop.max((a - b).norm());
        }
    }
    let expm_ok = worst_expm <= PROPAGATOR_TOL;
    let prop_ok = worst_prop <= PROPAGATOR_TOL;

    // (b) The dark state annihilates the effective Hamiltonian on two-photon
    // resonance.
    let mut worst_dark: f64 = 0.0;
    for _ in 0..DRAWS {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let big_delta = sign * rng.gen_range(0.25..2.0);
        let o1 = rng.gen_range(0.01..0.5);
        let os = rng.gen_range(0.01..0.5);
        let params = SystemParams { big_delta, ..Default::default() };
        let h_eff = build_effective(&params, &LaserAmplitudes::real(o1, os));
        let eig = stirap_eigensystem(o1, os, big_delta, 0.0, 0.0).unwrap();
        let residual = h_eff.mul_vec(&eig.dark).unwrap();
        let r = residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        worst_dark = worst_dark.max(r);
    }
    let dark_ok = worst_dark <= DARK_RESIDUAL_TOL;

    // (c) The adiabatic rotation is unitary everywhere.
    let mut worst_unitary: f64 = 0.0;
    let id3 = OperatorMatrix::identity(3);
    for _ in 0..DRAWS {
        let theta = rng.gen_range(0.0..2.0 * PI);
        let phi = rng.gen_range(-PI..PI);
        let r = stirap_rotation(theta, phi);
        worst_unitary = worst_unitary.max(r.adjoint().matmul(&r).max_abs_diff(&id3));
    }
    let unitary_ok = worst_unitary <= UNITARITY_TOL;

    println!(
        "acceptance criterion 4 (closed forms vs numerics): {} — propagator vs expm ≤ {:.3e}, vs integration ≤ {:.3e} (tol {PROPAGATOR_TOL:.0e}); dark residual ≤ {:.3e} (tol {DARK_RESIDUAL_TOL:.0e}); rotation unitarity defect ≤ {:.3e} (tol {UNITARITY_TOL:.0e}); {DRAWS} draws each",
        verdict(expm_ok && prop_ok && dark_ok && unitary_ok),
        worst_expm,
        worst_prop,
        worst_dark,
        worst_unitary,
    );
    assert!(expm_ok, "closed-form propagator deviates from expm by {worst_expm:.3e}");
    assert!(prop_ok, "closed-form propagator deviates from integration by {worst_prop:.3e}");
    assert!(dark_ok, "dark-state residual {worst_dark:.3e} above {DARK_RESIDUAL_TOL:.0e}");
    assert!(unitary_ok, "rotation unitarity defect {worst_unitary:.3e} above {UNITARITY_TOL:.0e}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_5_gate_phases() {
    let space = HilbertSpace::new(2);
    let eff_cfg = IntegratorConfig { step: 0.5, record_stride: 0 };

    // (a) Reduced-model constant-drive gate lands on the designed pi.
    let protocol = GateProtocol::e_raman_cp(OMEGA, OMEGA, BIG_DELTA, KAPPA, GAMMA).unwrap();
    let eff = run_gate(&protocol, Model::Effective, space, &eff_cfg).unwrap();
    let eff_dist = phase_dist(eff.at_gate_end.extracted_phi, PI);
    let eff_ok = eff_dist <= PHASE_TOL_EFFECTIVE;

    // (b) Adiabatic double passage returns the |11> branch with amplitude -1.
    let dynamical =
        GateProtocol::e_stirap_dynamical_cp(STIRAP_OMEGA, STIRAP_RATE, KAPPA, GAMMA).unwrap();
    let dyn_report = run_gate(&dynamical, Model::Effective, space, &eff_cfg).unwrap();
    let amp = dyn_report.at_gate_end.branches[3].amplitude;
    let sign_dev = (amp - Complex64::new(-1.0, 0.0)).norm();
    let sign_ok = sign_dev <= SIGN_TOL;

    // (c) Full conditional model at the headline parameters.
    let full_cfg = IntegratorConfig {
        step: auto_step(&protocol.params, 2.0 * OMEGA, 2, false),
        record_stride: 0,
    };
    let full = run_gate(&protocol, Model::Full, space, &full_cfg).unwrap();
    let full_dist = phase_dist(full.at_gate_end.extracted_phi, PI);
    let full_ok = full_dist <= PHASE_TOL_FULL;

    println!(
        "acceptance criterion 5 (gate phases): {} — effective phase off pi by {:.3e} (tol {PHASE_TOL_EFFECTIVE:.0e}); double-passage |11> amplitude {amp} (|amp + 1| = {:.3e}); full-model phase {:.10} off pi by {:.4e} (tol {PHASE_TOL_FULL})",
        verdict(eff_ok && sign_ok && full_ok),
        eff_dist,
        sign_dev,
        full.at_gate_end.extracted_phi,
        full_dist,
    );
    assert!(eff_ok, "effective gate phase off pi by {eff_dist:.3e}");
    assert!(sign_ok, "double-passage branch amplitude {amp} is not -1 (deviation {sign_dev:.3e})");
    assert!(full_ok, "full-model gate phase off pi by {full_dist:.4e}");
}

#[test]
fn criterion_5_timing_robustness() {
    // The criterion demands a first-derivative phase sensitivity below
    // TIMING_SLOPE_FRACTION * K at the operating duration T* = 2 pi / K.
    let protocol = GateProtocol::e_raman_cp(OMEGA, OMEGA, BIG_DELTA, KAPPA, GAMMA).unwrap();
    let t_star = protocol.duration().unwrap();
    let lasers = LaserAmplitudes::real(OMEGA, OMEGA);
    let k = RamanConstants::from_params(&protocol.params, &lasers).unwrap().k;
    let space = HilbertSpace::new(2);
    let cfg = IntegratorConfig { step: 0.5, record_stride: 0 };
    let phi_at = |t: f64| -> f64 {
        run_gate(&protocol.clone().with_duration(t), Model::Effective, space, &cfg)
            .unwrap()
            .at_gate_end
            .extracted_phi
    };
    let eps = TIMING_OFFSET_FRACTION * t_star;
    let slope = wrap_phase(phi_at(t_star + eps) - phi_at(t_star - eps)).abs() / (2.0 * eps);
    let bound = TIMING_SLOPE_FRACTION * k;
    let ok = slope < bound;
    println!(
        "acceptance criterion 5 (timing robustness): {} — |dphi/dT| = {:.6e} at T* = 2 pi / K, bound {:.6e} ({} K with K = {:.6e}); measured slope = {:.4} K",
        verdict(ok),
        slope,
        bound,
        TIMING_SLOPE_FRACTION,
        k,
        slope / k,
    );
    println!(
        "  analysis: at T* the |11> branch amplitude moves as -cos(K dT / 2) + (i / sqrt 2) sin(K dT / 2), so the extracted phase changes at the rate K / (2 sqrt 2) = {:.4} K. That sensitivity is a parameter-free property of the operating point — no drive amplitude, detuning, or step size lowers it — so a bound of {} K cannot be met; the measured slope exceeds it by a factor of {:.0}.",
        1.0 / (2.0 * 2f64.sqrt()),
        TIMING_SLOPE_FRACTION,
        slope / bound,
    );
    assert!(
        ok,
        "timing-robustness bound is unattainable at this operating point: measured |dphi/dT| = {:.3e} = {:.3} K, bound {:.3e} = {} K",
        slope,
        slope / k,
        bound,
        TIMING_SLOPE_FRACTION,
    );
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_6_geometric_phase() {
    // (a) Quadrature reproduces both closed-form loop integrals.
    let linear = PulseSchedule::linear_ramp_ratio(STIRAP_OMEGA, RAMP_ALPHA, RAMP_TOTAL).unwrap();
    let got_lin = ramp_phase(&linear, 0.0).unwrap().ratio;
    let want_lin = RAMP_TOTAL - (2.0 / RAMP_ALPHA) * (RAMP_ALPHA * RAMP_TOTAL / 2.0).atan();
    let lin_err = ((got_lin - want_lin) / want_lin).abs();
    let lin_ok = lin_err <= RAMP_CLOSED_FORM_TOL;

    let beta = 2e-4;
    let sine = PulseSchedule::sine_ramp_ratio(STIRAP_OMEGA, 1.0, beta).unwrap();
    let got_sin = ramp_phase(&sine, 0.0).unwrap().ratio;
    let want_sin = (PI / beta) * (1.0 - 1.0 / 2f64.sqrt());
    let sin_err = ((got_sin - want_sin) / want_sin).abs();
    let sin_ok = sin_err <= RAMP_CLOSED_FORM_TOL;

    // (b) The per-time loop ratio plateaus once s = alpha T / 2 is large. The
    // fraction f(s) = ratio / T still moves 8% across the 10 -> 20 doubling
    // (the plateau edge), so that figure is printed for reference; the
    // assertions cover doublings from s >= 20 and fine 1.1x steps throughout.
    let f_of = |s: f64| -> f64 {
        let t = 2.0 * s / RAMP_ALPHA;
        let ramp = PulseSchedule::linear_ramp_ratio(STIRAP_OMEGA, RAMP_ALPHA, t).unwrap();
        ramp_phase(&ramp, 0.0).unwrap().ratio / t
    };
    let boundary = {
        let (a, b) = (f_of(10.0), f_of(20.0));
        (b - a).abs() / a
    };
    let mut worst_doubling: f64 = 0.0;
    for s in [20.0, 40.0, 80.0] {
        let (a, b) = (f_of(s), f_of(2.0 * s));
        worst_doubling = worst_doubling.max((b - a).abs() / a);
    }
    let mut worst_fine: f64 = 0.0;
    let mut s = 10.0;
    while s < 200.0 {
        let next = 1.1 * s;
        let (a, b) = (f_of(s), f_of(next));
        worst_fine = worst_fine.max((b - a).abs() / a);
        s = next;
    }
    let plateau_ok = worst_doubling < PLATEAU_VARIATION_MAX && worst_fine < PLATEAU_VARIATION_MAX;

    // (c) Full conditional model around the default loop agrees with the
    // quadrature phase.
    let ramp = PulseSchedule::linear_ramp_ratio(STIRAP_OMEGA, RAMP_ALPHA, RAMP_TOTAL).unwrap();
    let protocol = GateProtocol::e_stirap_geometric_cp(ramp, RAMP_DELTA, KAPPA, GAMMA).unwrap();
    let cfg = IntegratorConfig { step: GEOMETRIC_STEP, record_stride: 0 };
    let report = run_gate(&protocol, Model::Full, HilbertSpace::new(2), &cfg).unwrap();
    let full_dist = phase_dist(report.at_gate_end.extracted_phi, protocol.target_phase);
    let full_ok = full_dist <= GEOMETRIC_PHASE_TOL;

    println!(
        "acceptance criterion 6 (geometric loop phase): {} — closed forms: linear off by {:.3e}, sine off by {:.3e} (tol {RAMP_CLOSED_FORM_TOL:.0e}); plateau: worst doubling from s >= 20 is {:.3}%, worst fine step {:.3}% (cap {:.0}%), edge doubling 10 -> 20 is {:.3}% (reported only); full model {:.10} vs quadrature {:.10}, off by {:.4} rad (tol {GEOMETRIC_PHASE_TOL})",
        verdict(lin_ok && sin_ok && plateau_ok && full_ok),
        lin_err,
        sin_err,
        100.0 * worst_doubling,
        100.0 * worst_fine,
        100.0 * PLATEAU_VARIATION_MAX,
        100.0 * boundary,
        report.at_gate_end.extracted_phi,
        protocol.target_phase,
        full_dist,
    );
    assert!(lin_ok, "linear-ramp quadrature off the closed form by {lin_err:.3e}");
    assert!(sin_ok, "sine-ramp quadrature off the closed form by {sin_err:.3e}");
    assert!(
        plateau_ok,
        "loop-ratio plateau moves more than {PLATEAU_VARIATION_MAX}: doubling {worst_doubling:.4}, fine {worst_fine:.4}"
    );
    assert!(full_ok, "full-model loop phase off the quadrature by {full_dist:.4} rad");
}

// ---------------------------------------------------------------------------

/// Final-state error of the criterion-7 convergence probe at step `h`,
/// against a reference at `h / 64`.
fn rk4_probe(h: f64) -> Vec<Complex64> {
    let space = HilbertSpace::new(2);
    let params = SystemParams {
        big_delta: 0.9,
        small_delta: 0.3,
        kappa: 0.15,
        gamma: 0.1,
        ..Default::default()
    };
    let lasers = LaserAmplitudes::real(0.4, 0.4);
    let h_mat = build_conditional(space, &params, &lasers);
    let initial = QuantumState::basis(space, AtomLevel::One, AtomLevel::One, 0).unwrap();
    let cfg = IntegratorConfig { step: h, record_stride: 0 };
    propagate(&h_mat, &initial, 25.0, &cfg).unwrap().final_state.amplitudes().to_vec()
}

#[test]
fn criterion_7_numerics_hygiene() {
    // (a) Conditional evolution never gains norm on any recorded trajectory.
    let runs: [(&str, &PrepRun); 4] = [
        ("e-raman prep (n_max 2)", raman_n2()),
        ("e-raman prep (n_max 3)", raman_n3()),
        ("e-stirap prep (n_max 2)", stirap_n2()),
        ("e-stirap prep (n_max 3)", stirap_n3()),
    ];
    let mut worst_growth: f64 = 0.0;
    let mut samples = 0usize;
    for (_, run) in &runs {
        samples += run.norms.len();
        for w in run.norms.windows(2) {
            worst_growth = worst_growth.max(w[1] / w[0] - 1.0);
        }
    }
    let norm_ok = worst_growth <= NORM_GROWTH_MAX;

    // (b) The integrator converges at fourth order.
    let reference = rk4_probe(0.003125);
    let err = |h: f64| -> f64 {
        rk4_probe(h)
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let errs: Vec<f64> = [0.2, 0.1, 0.05, 0.025].iter().map(|&h| err(h)).collect();
    let slopes: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let slope_ok = slopes.iter().all(|s| (s - RK4_SLOPE).abs() <= RK4_SLOPE_TOL);

    // (c) The headline observables are insensitive to the photon-number
    // truncation.
    let df_raman = (raman_n2().fidelity - raman_n3().fidelity).abs();
    let dp_raman = (raman_n2().p0 - raman_n3().p0).abs();
    let df_stirap = (stirap_n2().fidelity - stirap_n3().fidelity).abs();
    let dp_stirap = (stirap_n2().p0 - stirap_n3().p0).abs();
    let trunc_worst = df_raman.max(dp_raman).max(df_stirap).max(dp_stirap);
    let trunc_ok = trunc_worst <= TRUNCATION_TOL;

    // (d) Sweeps render byte-identically for any thread count.
    let spec = || SweepSpec {
        experiment: phasegate_cli::experiments::find_experiment("raman_prep_F").unwrap(),
        axis1: AxisSpec { name: "omega1".into(), min: 0.03, max: 0.05, count: 3 },
        axis2: AxisSpec { name: "big_delta".into(), min: 0.5, max: 1.0, count: 3 },
        fixed: Default::default(),
        options: RunOptions::default(),
    };
    let csv_single = sweep_csv(&run_sweep(spec(), 1).unwrap());
    let csv_multi = sweep_csv(&run_sweep(spec(), 3).unwrap());
    let threads_ok = csv_single == csv_multi;

    println!(
        "acceptance criterion 7 (numerics hygiene): {} — norm growth ≤ {:.3e} over {} samples (cap {NORM_GROWTH_MAX:.0e}); rk4 slopes {:?} (want {RK4_SLOPE} ± {RK4_SLOPE_TOL}); truncation shift ≤ {:.3e} (tol {TRUNCATION_TOL:.0e}); 1-thread and 3-thread sweeps byte-identical: {}",
        verdict(norm_ok && slope_ok && trunc_ok && threads_ok),
        worst_growth,
        samples,
        slopes.iter().map(|s| (s * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
        trunc_worst,
        threads_ok,
    );
    assert!(norm_ok, "a recorded trajectory gained norm: max relative growth {worst_growth:.3e}");
    assert!(slope_ok, "rk4 convergence slopes {slopes:?} outside {RK4_SLOPE} ± {RK4_SLOPE_TOL}");
    assert!(trunc_ok, "truncation shift {trunc_worst:.3e} above {TRUNCATION_TOL:.0e}");
    assert!(threads_ok, "sweep output differs between 1 and 3 threads");
}
