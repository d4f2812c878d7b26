//! Fixed-step fourth-order Runge–Kutta propagation of Schrödinger dynamics,
//! for Hermitian and conditional (norm-decreasing) Hamiltonians alike.
//!
//! Two stepping strategies share one entry point:
//! - time-dependent sources evaluate `-i H(t) x` at the Runge–Kutta nodes
//!   (two Hamiltonian refreshes per step after the first);
//! - constant sources precompute the one-step matrix
//!   `M = sum_k (-i H h)^k / k!` for `k <= 4` — algebraically the identical
//!   scheme — and reduce each step to a single matrix-vector product.

#[allow(unused_imports)]
use num_traits::Float as _;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::hamiltonian::{build_conditional, LaserAmplitudes, SystemParams};
use crate::hilbert::QuantumState;
use crate::operator::OperatorMatrix;

/// Supplies `H(t)` to the integrator.
///
/// The engine calls [`HamiltonianSource::init`] once on its private buffer and
/// then [`HamiltonianSource::refresh`] with the same buffer; a refresh may
/// therefore rewrite only the time-dependent entries. Refresh times can
/// overshoot the nominal interval by one rounding unit, so implementations
/// must clamp rather than fail.
pub trait HamiltonianSource {
    /// Matrix dimension.
    fn dim(&self) -> usize;
    /// Write `H(0)` into `out`.
    fn init(&self, out: &mut OperatorMatrix);
    /// Update `out` (previously written by `init`) to `H(t)`.
    fn refresh(&self, t: f64, out: &mut OperatorMatrix);
    /// True if `H` never changes; enables the precomputed-step fast path.
    fn is_constant(&self) -> bool;
}

/// A bare matrix is a constant Hamiltonian.
impl HamiltonianSource for OperatorMatrix {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn init(&self, out: &mut OperatorMatrix) {
        out.copy_from(self);
    }

    fn refresh(&self, _t: f64, _out: &mut OperatorMatrix) {}

    fn is_constant(&self) -> bool {
        true
    }
}

/// Step size and trajectory recording for one propagation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Requested step `h`; the engine shrinks it to `T / ceil(T / h)` so an
    /// integer number of steps lands exactly on `T`.
    pub step: f64,
    /// Record every `record_stride`-th step (plus the first and last);
    /// `0` disables trajectory recording.
    pub record_stride: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig { step: 0.02, record_stride: 0 }
    }
}

impl IntegratorConfig {
    /// Default step policy for a run of the given duration:
    /// `h = min(0.02, T / 10^6)`, i.e. the standard resolution with a guard
    /// that long runs never resolve the interval with fewer than 10^6 steps.
    pub fn for_duration(total_time: f64) -> Self {
        IntegratorConfig { step: (total_time / 1e6).min(0.02), record_stride: 0 }
    }

    /// Same policy, recording roughly `samples` trajectory points.
    pub fn recording(total_time: f64, samples: usize) -> Self {
        let mut cfg = Self::for_duration(total_time);
        let steps = (total_time / cfg.step).ceil() as usize;
        cfg.record_stride = (steps / samples.max(1)).max(1);
        cfg
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySample {
    /// Time of the sample.
    pub t: f64,
    /// Squared norm of the state (the running no-emission probability for
    /// conditional evolution).
    pub norm2: f64,
    /// Full amplitude vector.
    pub amplitudes: Vec<Complex64>,
}

/// Outcome of a full-space propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationResult {
    /// State at the final time (not renormalized).
    pub final_state: QuantumState,
    /// `|psi(T)|^2 / |psi(0)|^2`; equals the no-photon success probability
    /// for conditional evolution from a unit state.
    pub p0: f64,
    /// Recorded samples; empty unless `record_stride > 0`.
    pub trajectory: Vec<TrajectorySample>,
}

/// Outcome of a reduced-model propagation (plain amplitude vector).
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveResult {
    /// Amplitudes at the final time.
    pub final_amplitudes: Vec<Complex64>,
    /// `|psi(T)|^2 / |psi(0)|^2`.
    pub p0: f64,
    /// Recorded samples; empty unless `record_stride > 0`.
    pub trajectory: Vec<TrajectorySample>,
}

/// Propagate a full-space state under `source` for `total_time`.
pub fn propagate<S: HamiltonianSource + ?Sized>(
    source: &S,
    initial: &QuantumState,
    total_time: f64,
    cfg: &IntegratorConfig,
) -> Result<PropagationResult> {
    if source.dim() != initial.space().dim() {
        return Err(CoreError::DimensionMismatch {
            expected: source.dim(),
            got: initial.space().dim(),
        });
    }
    let mut amps = initial.amplitudes().to_vec();
    let (p0, trajectory) = integrate(source, &mut amps, total_time, cfg)?;
    let final_state = QuantumState::from_amplitudes(initial.space(), amps)?;
    Ok(PropagationResult { final_state, p0, trajectory })
}

/// Propagate a reduced-model amplitude vector under `source`.
pub fn propagate_effective<S: HamiltonianSource + ?Sized>(
    source: &S,
    initial: &[Complex64],
    total_time: f64,
    cfg: &IntegratorConfig,
) -> Result<EffectiveResult> {
    if source.dim() != initial.len() {
        return Err(CoreError::DimensionMismatch {
            expected: source.dim(),
            got: initial.len(),
        });
    }
    let mut amps = initial.to_vec();
    let (p0, trajectory) = integrate(source, &mut amps, total_time, cfg)?;
    Ok(EffectiveResult { final_amplitudes: amps, p0, trajectory })
}

/// Default decay-window length `5 / min(kappa, Gamma)` over the positive
/// rates; zero when nothing decays.
pub fn default_decay_window(params: &SystemParams) -> f64 {
    let mut slowest = f64::INFINITY;
    for rate in [params.kappa, params.gamma] {
        if rate > 0.0 {
            slowest = slowest.min(rate);
        }
    }
    if slowest.is_finite() {
        5.0 / slowest
    } else {
        0.0
    }
}

/// Let unwanted excited amplitude decay: conditional evolution with both
/// lasers off for `duration` (commonly [`default_decay_window`]). The photon
/// mode empties and level 2 drains at rates `kappa` and `Gamma`; whatever
/// probability leaves the state is counted against `p0`.
pub fn decay_window(
    params: &SystemParams,
    state: &QuantumState,
    duration: f64,
) -> Result<PropagationResult> {
    if duration == 0.0 {
        return Ok(PropagationResult {
            final_state: state.clone(),
            p0: 1.0,
            trajectory: Vec::new(),
        });
    }
    let h = build_conditional(state.space(), params, &LaserAmplitudes::off());
    // The window is an auxiliary drain run over a few decay times; the plain
    // default step resolves it without the short-run refinement policy.
    propagate(&h, state, duration, &IntegratorConfig::default())
}

/// One-step RK4 propagator for a constant Hamiltonian: the degree-4 Taylor
/// polynomial of `exp(-i H dt)`, which is exactly what four Runge–Kutta
/// stages compute for a linear autonomous system.
pub fn rk4_step_matrix(h: &OperatorMatrix, dt: f64) -> OperatorMatrix {
    let dim = h.dim();
    let mut a = h.clone();
    a.scale(Complex64::new(0.0, -dt));
    let mut m = OperatorMatrix::identity(dim);
    let mut term = OperatorMatrix::identity(dim);
    for k in 1..=4u32 {
        term = term.matmul(&a);
        term.scale(Complex64::new(1.0 / (k as f64), 0.0));
        m.axpy(Complex64::new(1.0, 0.0), &term);
    }
    m
}

struct StepBuffers {
    k1r: Vec<f64>,
    k1i: Vec<f64>,
    k2r: Vec<f64>,
    k2i: Vec<f64>,
    k3r: Vec<f64>,
    k3i: Vec<f64>,
    k4r: Vec<f64>,
    k4i: Vec<f64>,
    tr: Vec<f64>,
    ti: Vec<f64>,
}

impl StepBuffers {
    fn new(n: usize) -> Self {
        StepBuffers {
            k1r: vec![0.0; n],
            k1i: vec![0.0; n],
            k2r: vec![0.0; n],
            k2i: vec![0.0; n],
            k3r: vec![0.0; n],
            k3i: vec![0.0; n],
            k4r: vec![0.0; n],
            k4i: vec![0.0; n],
            tr: vec![0.0; n],
            ti: vec![0.0; n],
        }
    }
}

fn norm2_split(xr: &[f64], xi: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..xr.len() {
        s += xr[k] * xr[k] + xi[k] * xi[k];
    }
    s
}

fn record(samples: &mut Vec<TrajectorySample>, t: f64, xr: &[f64], xi: &[f64]) {
    let amplitudes: Vec<Complex64> =
        xr.iter().zip(xi).map(|(&r, &i)| Complex64::new(r, i)).collect();
    samples.push(TrajectorySample { t, norm2: norm2_split(xr, xi), amplitudes });
}

fn integrate<S: HamiltonianSource + ?Sized>(
    source: &S,
    amps: &mut [Complex64],
    total_time: f64,
    cfg: &IntegratorConfig,
) -> Result<(f64, Vec<TrajectorySample>)> {
    if !(total_time > 0.0) || !total_time.is_finite() {
        return Err(CoreError::NonPositiveDuration { value: total_time });
    }
    if !(cfg.step > 0.0) || !cfg.step.is_finite() {
        return Err(CoreError::NonPositiveDuration { value: cfg.step });
    }
    let n = source.dim();
    let n_steps = ((total_time / cfg.step).ceil() as usize).max(1);
    let h = total_time / (n_steps as f64);

    let mut xr: Vec<f64> = amps.iter().map(|z| z.re).collect();
    let mut xi: Vec<f64> = amps.iter().map(|z| z.im).collect();
    let initial_norm2 = norm2_split(&xr, &xi);
    if initial_norm2 == 0.0 {
        return Err(CoreError::ZeroNormState);
    }

    let mut hamiltonian = OperatorMatrix::zeros(n);
    source.init(&mut hamiltonian);

    let mut samples = Vec::new();
    if cfg.record_stride > 0 {
        record(&mut samples, 0.0, &xr, &xi);
    }

    if source.is_constant() {
        let m = rk4_step_matrix(&hamiltonian, h);
        let (mut yr, mut yi) = (vec![0.0; n], vec![0.0; n]);
        for step in 1..=n_steps {
            m.apply_into(&xr, &xi, &mut yr, &mut yi);
            core::mem::swap(&mut xr, &mut yr);
            core::mem::swap(&mut xi, &mut yi);
            let t = (step as f64) * h;
            if !norm2_split(&xr, &xi).is_finite() {
                return Err(CoreError::NonFiniteAmplitude { step, t });
            }
            if cfg.record_stride > 0 && (step % cfg.record_stride == 0 || step == n_steps) {
                record(&mut samples, t, &xr, &xi);
            }
        }
    } else {
        let mut buf = StepBuffers::new(n);
        let sixth = h / 6.0;
        for step in 1..=n_steps {
            let t0 = ((step - 1) as f64) * h;
            // H currently holds H(t0): either from init or from the previous
            // step's final refresh at the same time.
            hamiltonian.apply_neg_i_into(&xr, &xi, &mut buf.k1r, &mut buf.k1i);
            for k in 0..n {
                buf.tr[k] = xr[k] + 0.5 * h * buf.k1r[k];
                buf.ti[k] = xi[k] + 0.5 * h * buf.k1i[k];
            }
            source.refresh(t0 + 0.5 * h, &mut hamiltonian);
            hamiltonian.apply_neg_i_into(&buf.tr, &buf.ti, &mut buf.k2r, &mut buf.k2i);
            for k in 0..n {
                buf.tr[k] = xr[k] + 0.5 * h * buf.k2r[k];
                buf.ti[k] = xi[k] + 0.5 * h * buf.k2i[k];
            }
            hamiltonian.apply_neg_i_into(&buf.tr, &buf.ti, &mut buf.k3r, &mut buf.k3i);
            for k in 0..n {
                buf.tr[k] = xr[k] + h * buf.k3r[k];
                buf.ti[k] = xi[k] + h * buf.k3i[k];
            }
            let t1 = (step as f64) * h;
            source.refresh(t1, &mut hamiltonian);
            hamiltonian.apply_neg_i_into(&buf.tr, &buf.ti, &mut buf.k4r, &mut buf.k4i);
            for k in 0..n {
                xr[k] += sixth
                    * (buf.k1r[k] + 2.0 * buf.k2r[k] + 2.0 * buf.k3r[k] + buf.k4r[k]);
                xi[k] += sixth
                    * (buf.k1i[k] + 2.0 * buf.k2i[k] + 2.0 * buf.k3i[k] + buf.k4i[k]);
            }
            if !norm2_split(&xr, &xi).is_finite() {
                return Err(CoreError::NonFiniteAmplitude { step, t: t1 });
            }
            if cfg.record_stride > 0 && (step % cfg.record_stride == 0 || step == n_steps) {
                record(&mut samples, t1, &xr, &xi);
            }
        }
    }

    for (k, a) in amps.iter_mut().enumerate() {
        *a = Complex64::new(xr[k], xi[k]);
    }
    let p0 = norm2_split(&xr, &xi) / initial_norm2;
    Ok((p0, samples))
}
