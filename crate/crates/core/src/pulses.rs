//! Laser pulse schedules: constant drives, the counterintuitive STIRAP pair,
//! ratio ramps for geometric loops, and the idealized 2π sign flip.
//!
//! All schedules report the collective Rabi amplitudes `(Omega_1, Omega_sigma)`
//! of the drive; the per-atom signs (including the 1/sqrt(2) on `Omega_1`) are
//! applied by the Hamiltonian builders, never here.

#[allow(unused_imports)]
use num_traits::Float as _;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::hilbert::{AtomLevel, HilbertSpace};
use crate::operator::OperatorMatrix;

/// A time-dependent pair of collective Rabi amplitudes over `[0, duration]`.
///
/// This is the interface the propagation engine samples (including at
/// Runge–Kutta substeps); implementors must be pure and cheap to evaluate.
pub trait Drive {
    /// Total drive duration (time in 1/g).
    fn duration(&self) -> f64;
    /// Amplitudes `(Omega_1(t), Omega_sigma(t))`. Callers guarantee
    /// `0 <= t <= duration()`; values outside are clamped by the engine.
    fn amplitudes(&self, t: f64) -> (Complex64, Complex64);
    /// True if the amplitudes never change (enables the constant-Hamiltonian
    /// fast path in the integrator).
    fn is_constant(&self) -> bool {
        false
    }
}

/// The same drive traversed backwards in time: `amplitudes(t)` of the
/// reversal equal `amplitudes(duration - t)` of the inner drive. Used by the
/// dynamical E-STIRAP gate, whose second leg undoes the first passage.
#[derive(Debug, Clone, Copy)]
pub struct Reversed<'a, D: Drive>(pub &'a D);

impl<D: Drive> Drive for Reversed<'_, D> {
    fn duration(&self) -> f64 {
        self.0.duration()
    }

    fn amplitudes(&self, t: f64) -> (Complex64, Complex64) {
        self.0.amplitudes(self.0.duration() - t)
    }

    fn is_constant(&self) -> bool {
        self.0.is_constant()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Constant { omega1: Complex64, omega_sigma: Complex64, total_time: f64 },
    StirapPair { omega: f64, omega_rate: f64 },
    LinearRampRatio { omega_sigma: f64, alpha: f64, total_time: f64 },
    SineRampRatio { omega_sigma: f64, x_max: f64, beta: f64 },
}

/// A named laser pulse schedule with validated parameters.
///
/// Available shapes:
/// - `constant`: both amplitudes fixed for a duration `T`;
/// - `stirap_pair`: the counterintuitive pair `Omega_sigma(t) = Omega sin(wt)`
///   on `(0, 2T/3)` and `Omega_1(t) = Omega sin(w(t - T/3))` on `(T/3, T)`,
///   with `T = 3 pi / (2 w)`;
/// - `linear_ramp_ratio`: `Omega_sigma` constant and
///   `x(t) = Omega_1/Omega_sigma` ramped linearly up to `alpha T/2` and back;
/// - `sine_ramp_ratio`: `x(t) = x_max sin(beta t)` over `(0, pi/beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    shape: Shape,
}

fn require_positive(value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CoreError::NonPositiveDuration { value })
    }
}

impl PulseSchedule {
    /// Constant amplitudes over `[0, total_time]`.
    pub fn constant(omega1: Complex64, omega_sigma: Complex64, total_time: f64) -> Result<Self> {
        require_positive(total_time)?;
        Ok(Self { shape: Shape::Constant { omega1, omega_sigma, total_time } })
    }

    /// Counterintuitive STIRAP pair with peak amplitude `omega` and pulse
    /// rate `omega_rate`; the total time is fixed to `3 pi / (2 omega_rate)`.
    pub fn stirap_pair(omega: f64, omega_rate: f64) -> Result<Self> {
        require_positive(omega)?;
        require_positive(omega_rate)?;
        Ok(Self { shape: Shape::StirapPair { omega, omega_rate } })
    }

    /// Linear ratio ramp `x(t) = alpha t` up to `t = T/2`, then `alpha (T-t)`,
    /// with `Omega_sigma` constant and `Omega_1 = x Omega_sigma`.
    pub fn linear_ramp_ratio(omega_sigma: f64, alpha: f64, total_time: f64) -> Result<Self> {
        require_positive(omega_sigma)?;
        require_positive(alpha)?;
        require_positive(total_time)?;
        Ok(Self { shape: Shape::LinearRampRatio { omega_sigma, alpha, total_time } })
    }

    /// Sine ratio ramp `x(t) = x_max sin(beta t)` over `[0, pi/beta]`, with
    /// `Omega_sigma` constant and `Omega_1 = x Omega_sigma`.
    pub fn sine_ramp_ratio(omega_sigma: f64, x_max: f64, beta: f64) -> Result<Self> {
        require_positive(omega_sigma)?;
        require_positive(x_max)?;
        require_positive(beta)?;
        Ok(Self { shape: Shape::SineRampRatio { omega_sigma, x_max, beta } })
    }

    /// Total schedule duration `T`.
    pub fn total_time(&self) -> f64 {
        match self.shape {
            Shape::Constant { total_time, .. } => total_time,
            Shape::StirapPair { omega_rate, .. } => {
                1.5 * core::f64::consts::PI / omega_rate
            }
            Shape::LinearRampRatio { total_time, .. } => total_time,
            Shape::SineRampRatio { beta, .. } => core::f64::consts::PI / beta,
        }
    }

    /// Shape name as used in config files.
    pub fn shape_name(&self) -> &'static str {
        match self.shape {
            Shape::Constant { .. } => "constant",
            Shape::StirapPair { .. } => "stirap_pair",
            Shape::LinearRampRatio { .. } => "linear_ramp_ratio",
            Shape::SineRampRatio { .. } => "sine_ramp_ratio",
        }
    }

    /// True for the two ratio-ramp shapes (the loops of the geometric gate).
    pub fn is_ramp(&self) -> bool {
        matches!(
            self.shape,
            Shape::LinearRampRatio { .. } | Shape::SineRampRatio { .. }
        )
    }

    /// Drive ratio `x(t) = Omega_1(t)/Omega_sigma(t)` for ramp shapes.
    pub(crate) fn ramp_ratio_at(&self, t: f64) -> Result<f64> {
        match self.shape {
            Shape::LinearRampRatio { alpha, total_time, .. } => {
                Ok(if t <= 0.5 * total_time { alpha * t } else { alpha * (total_time - t) })
            }
            Shape::SineRampRatio { x_max, beta, .. } => Ok(x_max * (beta * t).sin()),
            _ => Err(CoreError::NotARamp),
        }
    }

    /// Amplitudes `(Omega_1(t), Omega_sigma(t))`; `t` outside `[0, T]` is a
    /// range error.
    pub fn evaluate(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let total = self.total_time();
        if !(0.0..=total).contains(&t) {
            return Err(CoreError::OutOfSchedule { t, total });
        }
        Ok(self.raw_amplitudes(t))
    }

    /// Piecewise amplitude formulas; defined for every finite `t` (zero
    /// outside the active windows) so integrator substeps never fail at the
    /// boundary after rounding.
    fn raw_amplitudes(&self, t: f64) -> (Complex64, Complex64) {
        let re = |x: f64| Complex64::new(x, 0.0);
        match self.shape {
            Shape::Constant { omega1, omega_sigma, .. } => (omega1, omega_sigma),
            Shape::StirapPair { omega, omega_rate } => {
                let total = self.total_time();
                let third = total / 3.0;
                let sigma = if t > 0.0 && t < 2.0 * third {
                    omega * (omega_rate * t).sin()
                } else {
                    0.0
                };
                let one = if t > third && t < total {
                    omega * (omega_rate * (t - third)).sin()
                } else {
                    0.0
                };
                (re(one), re(sigma))
            }
            Shape::LinearRampRatio { omega_sigma, .. } | Shape::SineRampRatio { omega_sigma, .. } => {
                let total = self.total_time();
                if t < 0.0 || t > total {
                    return (Complex64::ZERO, Complex64::ZERO);
                }
                let x = self.ramp_ratio_at(t).expect("ramp shape");
                (re(x * omega_sigma), re(omega_sigma))
            }
        }
    }
}

impl Drive for PulseSchedule {
    fn duration(&self) -> f64 {
        self.total_time()
    }

    fn amplitudes(&self, t: f64) -> (Complex64, Complex64) {
        self.raw_amplitudes(t)
    }

    fn is_constant(&self) -> bool {
        matches!(self.shape, Shape::Constant { .. })
    }
}

/// Control angles of the adiabatic basis: `tan(theta) = Omega_1/Omega_sigma`
/// and `phi = -delta t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlAngles {
    /// Mixing angle in radians; in `[0, pi/2]` for nonnegative real drives.
    pub theta: f64,
    /// Loop angle `-delta t` in radians.
    pub phi: f64,
}

/// Control angles of a schedule at time `t` with two-photon detuning `delta`.
///
/// Real drive amplitudes are assumed (every non-constant shape produces them);
/// `theta = atan2(Omega_1, Omega_sigma)`. Where both amplitudes vanish at a
/// schedule endpoint, the angle is defined by one-sided continuity (probing
/// just inside the schedule); both vanishing mid-protocol is an error.
pub fn angles(schedule: &PulseSchedule, t: f64, delta: f64) -> Result<ControlAngles> {
    let (o1, os) = schedule.evaluate(t)?;
    let total = self_total(schedule);
    let phi = -delta * t;
    let (mut x1, mut xs) = (o1.re, os.re);
    if x1 == 0.0 && xs == 0.0 {
        let eps = 1e-9 * total;
        let probe = if t < 0.5 * total { eps } else { total - eps };
        let (p1, ps) = schedule.raw_amplitudes(probe);
        if p1.re == 0.0 && ps.re == 0.0 {
            return Err(CoreError::DegenerateDrive { t });
        }
        // Only endpoints reach this branch: interior zeros of the supported
        // shapes occur one amplitude at a time.
        x1 = p1.re;
        xs = ps.re;
    }
    Ok(ControlAngles { theta: x1.atan2(xs), phi })
}

fn self_total(schedule: &PulseSchedule) -> f64 {
    schedule.total_time()
}

/// Worst adiabaticity ratio `max(|dtheta/dt|, |dphi/dt|) / sqrt(O1^2 + Os^2)`
/// over `samples` interior time points. Samples where the total Rabi
/// amplitude is below `10^-3` of the peak are skipped (the angle is a gauge
/// freedom when the drive is off).
pub fn adiabaticity_ratio(schedule: &PulseSchedule, delta: f64, samples: usize) -> Result<f64> {
    let total = schedule.total_time();
    let n = samples.max(8);
    let dt = total * 1e-7;
    let mut peak: f64 = 0.0;
    for k in 0..=n {
        let (o1, os) = schedule.raw_amplitudes(total * (k as f64) / (n as f64));
        peak = peak.max(o1.norm().hypot(os.norm()));
    }
    let mut worst: f64 = 0.0;
    for k in 1..n {
        let t = total * (k as f64) / (n as f64);
        let (o1, os) = schedule.raw_amplitudes(t);
        let rabi = o1.norm().hypot(os.norm());
        if rabi < 1e-3 * peak {
            continue;
        }
        let a = angles(schedule, (t - dt).max(0.0), delta)?;
        let b = angles(schedule, (t + dt).min(total), delta)?;
        let theta_dot = (b.theta - a.theta) / (2.0 * dt);
        let phi_dot = delta.abs();
        worst = worst.max(theta_dot.abs().max(phi_dot) / rabi);
    }
    Ok(worst)
}

/// Ideal instantaneous 2π pulse taking `|sigma> -> -|sigma>` on both atoms:
/// a diagonal unitary with entry `(-1)^(number of sigma levels in (l1, l2))`.
pub fn two_pi_flip(space: HilbertSpace) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(space.dim());
    for idx in 0..space.dim() {
        let (l1, l2, _) = space.basis_labels(idx);
        let mut sign = 1.0;
        if l1 == AtomLevel::Sigma {
            sign = -sign;
        }
        if l2 == AtomLevel::Sigma {
            sign = -sign;
        }
        m.set(idx, idx, Complex64::new(sign, 0.0));
    }
    m
}

/// Apply the 2π flip to a raw amplitude vector in place (cheaper than a
/// matrix multiply for this diagonal sign pattern).
pub fn apply_two_pi_flip(space: HilbertSpace, amps: &mut [Complex64]) {
    assert_eq!(amps.len(), space.dim(), "two_pi_flip dimension mismatch");
    for (idx, a) in amps.iter_mut().enumerate() {
        let (l1, l2, _) = space.basis_labels(idx);
        let sigmas =
            usize::from(l1 == AtomLevel::Sigma) + usize::from(l2 == AtomLevel::Sigma);
        if sigmas % 2 == 1 {
            *a = -*a;
        }
    }
}

/// Sampled control path `(t_k, theta_k, phi_k, rabi_k)` used by the adiabatic
/// phase quadratures; `rabi = sqrt(Omega_1^2 + Omega_sigma^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdiabaticPath {
    /// Sample times, strictly increasing, spanning `[0, T]`.
    pub times: Vec<f64>,
    /// Mixing angle at each sample.
    pub theta: Vec<f64>,
    /// Loop angle at each sample.
    pub phi: Vec<f64>,
    /// Total Rabi amplitude at each sample.
    pub rabi: Vec<f64>,
}

impl AdiabaticPath {
    /// Sample a schedule uniformly with `n_samples` points (at least 2).
    pub fn from_schedule(
        schedule: &PulseSchedule,
        delta: f64,
        n_samples: usize,
    ) -> Result<AdiabaticPath> {
        let n = n_samples.max(2);
        let total = schedule.total_time();
        let mut times = Vec::with_capacity(n);
        let mut theta = Vec::with_capacity(n);
        let mut phi = Vec::with_capacity(n);
        let mut rabi = Vec::with_capacity(n);
        for k in 0..n {
            let t = total * (k as f64) / ((n - 1) as f64);
            let a = angles(schedule, t.min(total), delta)?;
            let (o1, os) = schedule.raw_amplitudes(t.min(total));
            times.push(t);
            theta.push(a.theta);
            phi.push(a.phi);
            rabi.push(o1.norm().hypot(os.norm()));
        }
        Ok(AdiabaticPath { times, theta, phi, rabi })
    }

    /// Build a path from raw samples (lengths must agree, at least 2 points).
    pub fn from_raw(
        times: Vec<f64>,
        theta: Vec<f64>,
        phi: Vec<f64>,
        rabi: Vec<f64>,
    ) -> Result<AdiabaticPath> {
        let n = times.len();
        if n < 2 || theta.len() != n || phi.len() != n || rabi.len() != n {
            return Err(CoreError::DimensionMismatch { expected: n.max(2), got: theta.len() });
        }
        Ok(AdiabaticPath { times, theta, phi, rabi })
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// True when the path holds no samples (never produced by constructors).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Endpoint angles `((theta_0, phi_0), (theta_T, phi_T))`.
    pub fn endpoints(&self) -> ((f64, f64), (f64, f64)) {
        let last = self.len() - 1;
        ((self.theta[0], self.phi[0]), (self.theta[last], self.phi[last]))
    }

    /// A loop is closed when `theta` returns to its start and either the path
    /// sits at the `theta = 0` pole (where `phi` is a gauge angle) or `phi`
    /// returns modulo 2π.
    pub fn is_closed(&self, tol: f64) -> bool {
        let ((t0, p0), (t1, p1)) = self.endpoints();
        if (t1 - t0).abs() > tol {
            return false;
        }
        if t0.abs() <= tol && t1.abs() <= tol {
            return true;
        }
        let two_pi = 2.0 * core::f64::consts::PI;
        let dphi = (p1 - p0) / two_pi;
        (dphi - dphi.round()).abs() * two_pi <= tol
    }
}
