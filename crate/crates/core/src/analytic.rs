//! Closed-form results: the reduced Raman propagator, the adiabatic
//! eigensystem and its transport matrices, accumulated dynamical/geometric
//! phases, and the ramp quadratures behind the geometric gate.

#[allow(unused_imports)]
use num_traits::Float as _;

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::hamiltonian::{LaserAmplitudes, SystemParams};
use crate::operator::OperatorMatrix;
use crate::pulses::{AdiabaticPath, PulseSchedule};

/// Wrap a phase into `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let y = x % two_pi;
    if y <= -PI {
        y + two_pi
    } else if y > PI {
        y - two_pi
    } else {
        y
    }
}

/// Constants of the adiabatically eliminated two-level Raman model on
/// `{|11>, |A>}`: effective coupling `Omega = Omega_1 Omega_sigma^* / (2
/// Delta)`, light shifts `Delta_11 = -|Omega_1|^2 / (4 Delta)` and
/// `Delta_A = delta - |Omega_sigma|^2 / (4 Delta)`, and the Rabi frequency
/// `K = sqrt(|Omega|^2 + (Delta_11 - Delta_A)^2)` of the transfer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanConstants {
    /// Effective two-photon coupling.
    pub omega: Complex64,
    /// Light shift of `|11>` (enters the Hamiltonian as `-Delta_11`).
    pub delta_11: f64,
    /// Shifted detuning of `|A>` (enters as `-Delta_A`).
    pub delta_a: f64,
    /// Effective Rabi frequency of the `|11> <-> |A>` oscillation.
    pub k: f64,
}

impl RamanConstants {
    /// Derive the constants from system parameters; `Delta = 0` is an error
    /// because the elimination divides by it.
    pub fn from_params(params: &SystemParams, lasers: &LaserAmplitudes) -> Result<Self> {
        if params.big_delta == 0.0 {
            return Err(CoreError::ZeroDetuning);
        }
        let omega = lasers.omega1 * lasers.omega_sigma.conj() / (2.0 * params.big_delta);
        let delta_11 = -lasers.omega1.norm_sqr() / (4.0 * params.big_delta);
        let delta_a =
            params.small_delta - lasers.omega_sigma.norm_sqr() / (4.0 * params.big_delta);
        let k = (omega.norm_sqr() + (delta_11 - delta_a) * (delta_11 - delta_a)).sqrt();
        Ok(RamanConstants { omega, delta_11, delta_a, k })
    }
}

/// Closed-form propagator of the reduced Raman model over a time `t`,
/// in the `{|11>, |A>}` basis:
///
/// ```text
/// U = e^{i (Delta_11 + Delta_A) t / 2} *
///     [ cos(Kt/2) + i c sin(Kt/2),   -i (Omega / K) sin(Kt/2)       ]
///     [ -i (Omega^* / K) sin(Kt/2),  cos(Kt/2) - i c sin(Kt/2)      ]
/// ```
///
/// with `c = (Delta_11 - Delta_A) / K`. When `K = 0` both states evolve with
/// the identical shift and the propagator is the exact diagonal phase
/// `e^{i Delta_11 t} I`, returned explicitly.
pub fn raman_propagator(constants: &RamanConstants, t: f64) -> OperatorMatrix {
    let mut u = OperatorMatrix::zeros(2);
    u.set_hermitian(false);
    if constants.k == 0.0 {
        let phase = Complex64::from_polar(1.0, constants.delta_11 * t);
        u.set(0, 0, phase);
        u.set(1, 1, phase);
        return u;
    }
    let k = constants.k;
    let global = Complex64::from_polar(1.0, 0.5 * (constants.delta_11 + constants.delta_a) * t);
    let (s, c) = (0.5 * k * t).sin_cos();
    let tilt = (constants.delta_11 - constants.delta_a) / k;
    let i = Complex64::i();
    u.set(0, 0, global * (c + i * tilt * s));
    u.set(1, 1, global * (c - i * tilt * s));
    u.set(0, 1, global * (-i) * (constants.omega / k) * s);
    u.set(1, 0, global * (-i) * (constants.omega.conj() / k) * s);
    u
}

/// Instantaneous adiabatic basis of the effective three-level model at
/// drive amplitudes `(Omega_1, Omega_sigma)`. In the `{|11>, |A>, |alpha>}`
/// coordinates:
///
/// - dark: `E_0 = 0`, `(Omega_sigma, -e^{-i delta t} Omega_1, 0) / N`;
/// - bright: `E_± = (-Delta ± sqrt(Delta^2 + Omega_1^2 + Omega_sigma^2)) / 2`,
///   `(Omega_1, e^{-i delta t} Omega_sigma, 2 E_±) / N_±`.
///
/// At `delta = 0` these are exact eigenpairs of the static effective
/// Hamiltonian; for `delta != 0` they form the rotating adiabatic frame with
/// loop angle `phi = -delta t`.
#[derive(Debug, Clone, PartialEq)]
pub struct StirapEigensystem {
    /// Dark-state energy (identically zero).
    pub e0: f64,
    /// Upper bright energy.
    pub e_plus: f64,
    /// Lower bright energy.
    pub e_minus: f64,
    /// Dark eigenvector.
    pub dark: [Complex64; 3],
    /// Upper bright eigenvector.
    pub bright_plus: [Complex64; 3],
    /// Lower bright eigenvector.
    pub bright_minus: [Complex64; 3],
}

/// Compute the adiabatic basis; errs when both drive amplitudes vanish.
pub fn stirap_eigensystem(
    omega1: f64,
    omega_sigma: f64,
    big_delta: f64,
    small_delta: f64,
    t: f64,
) -> Result<StirapEigensystem> {
    let rabi2 = omega1 * omega1 + omega_sigma * omega_sigma;
    if rabi2 == 0.0 {
        return Err(CoreError::DegenerateDrive { t });
    }
    let phase = Complex64::from_polar(1.0, -small_delta * t);
    let n = rabi2.sqrt();
    let dark = [
        Complex64::new(omega_sigma / n, 0.0),
        -phase * (omega1 / n),
        Complex64::ZERO,
    ];
    let disc = (big_delta * big_delta + rabi2).sqrt();
    let e_plus = 0.5 * (-big_delta + disc);
    let e_minus = 0.5 * (-big_delta - disc);
    let bright = |e: f64| -> [Complex64; 3] {
        let norm = (rabi2 + 4.0 * e * e).sqrt();
        [
            Complex64::new(omega1 / norm, 0.0),
            phase * (omega_sigma / norm),
            Complex64::new(2.0 * e / norm, 0.0),
        ]
    };
    Ok(StirapEigensystem {
        e0: 0.0,
        e_plus,
        e_minus,
        dark,
        bright_plus: bright(e_plus),
        bright_minus: bright(e_minus),
    })
}

/// Adiabatic rotation matrix `R(theta, phi)`:
///
/// ```text
///        [ 2 cos(t),                sqrt(2) sin(t),        sqrt(2) sin(t)        ]
/// R = 1/2[ -sqrt(2) e^{ip} sin(t),  1 + e^{ip} cos(t),     -(1 - e^{ip} cos(t))  ]
///        [ sqrt(2) e^{ip} sin(t),   1 - e^{ip} cos(t),     -(1 + e^{ip} cos(t))  ]
/// ```
///
/// Its columns are the instantaneous eigenvectors (dark, bright+, bright-)
/// expressed in the fixed frame returned by [`anchor_frame`]; equivalently
/// `R = W^T M(theta, phi)` with `M` the eigenvector matrix in atomic
/// coordinates. Note `R(0, 0) = diag(1, 1, -1)`, not the identity: the third
/// frame vector is the negative of the lower bright state at the anchor.
pub fn stirap_rotation(theta: f64, phi: f64) -> OperatorMatrix {
    let mut r = OperatorMatrix::zeros(3);
    r.set_hermitian(false);
    let (s, c) = theta.sin_cos();
    let ep = Complex64::from_polar(1.0, phi);
    let root2 = 2f64.sqrt();
    let re = |x: f64| Complex64::new(x, 0.0);
    r.set(0, 0, re(c));
    r.set(0, 1, re(0.5 * root2 * s));
    r.set(0, 2, re(0.5 * root2 * s));
    r.set(1, 0, -0.5 * root2 * ep * s);
    r.set(1, 1, 0.5 * (Complex64::ONE + ep * c));
    r.set(1, 2, -0.5 * (Complex64::ONE - ep * c));
    r.set(2, 0, 0.5 * root2 * ep * s);
    r.set(2, 1, 0.5 * (Complex64::ONE - ep * c));
    r.set(2, 2, -0.5 * (Complex64::ONE + ep * c));
    r
}

/// Eigenvector matrix `M(theta, phi)` whose columns are the adiabatic states
/// in `{|11>, |A>, |alpha>}` coordinates:
/// `E0 = (cos t, -e^{ip} sin t, 0)`,
/// `E± = (sin t, e^{ip} cos t, ±1) / sqrt(2)`.
pub fn eigenvector_matrix(theta: f64, phi: f64) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(3);
    m.set_hermitian(false);
    let (s, c) = theta.sin_cos();
    let ep = Complex64::from_polar(1.0, phi);
    let root2inv = 1.0 / 2f64.sqrt();
    m.set(0, 0, Complex64::new(c, 0.0));
    m.set(1, 0, -ep * s);
    m.set(0, 1, Complex64::new(s * root2inv, 0.0));
    m.set(1, 1, ep * c * root2inv);
    m.set(2, 1, Complex64::new(root2inv, 0.0));
    m.set(0, 2, Complex64::new(s * root2inv, 0.0));
    m.set(1, 2, ep * c * root2inv);
    m.set(2, 2, Complex64::new(-root2inv, 0.0));
    m
}

/// Fixed orthonormal frame `W` of the rotation matrix, as columns in
/// `{|11>, |A>, |alpha>}` coordinates:
/// `w_1 = |11>`, `w_2 = (|A> + |alpha>)/sqrt(2)`,
/// `w_3 = (|alpha> - |A>)/sqrt(2)`.
pub fn anchor_frame() -> OperatorMatrix {
    let mut w = OperatorMatrix::zeros(3);
    w.set_hermitian(false);
    let r = 1.0 / 2f64.sqrt();
    w.set(0, 0, Complex64::ONE);
    w.set(1, 1, Complex64::new(r, 0.0));
    w.set(2, 1, Complex64::new(r, 0.0));
    w.set(1, 2, Complex64::new(-r, 0.0));
    w.set(2, 2, Complex64::new(r, 0.0));
    w
}

/// Accumulated adiabatic phases along a control path, per branch
/// `(dark, bright+, bright-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirapPhases {
    /// Dynamical phases `-∫ E_j dt` in the resonant (`Delta = 0`) regime:
    /// zero for the dark state and `∓ (1/2) ∫ sqrt(O1^2 + Os^2) dt` for the
    /// bright pair.
    pub dynamical: [f64; 3],
    /// Geometric phases of a closed loop: `-∮ sin^2(theta) dphi` for the
    /// dark state and `-(1/2) ∮ cos^2(theta) dphi` for both bright states.
    pub geometric: [f64; 3],
}

impl StirapPhases {
    /// Phases with the geometric part zeroed — the correct bookkeeping for
    /// open paths (e.g. a single STIRAP passage at `delta = 0`).
    pub fn dynamical_only(path: &AdiabaticPath) -> Self {
        StirapPhases { dynamical: dynamical_phases(path), geometric: [0.0; 3] }
    }

    /// Total phase per branch.
    pub fn total(&self) -> [f64; 3] {
        [
            self.dynamical[0] + self.geometric[0],
            self.dynamical[1] + self.geometric[1],
            self.dynamical[2] + self.geometric[2],
        ]
    }
}

/// Dynamical phases along a path (trapezoidal quadrature over its samples).
pub fn dynamical_phases(path: &AdiabaticPath) -> [f64; 3] {
    let mut integral = 0.0;
    for k in 1..path.len() {
        let dt = path.times[k] - path.times[k - 1];
        integral += 0.5 * (path.rabi[k] + path.rabi[k - 1]) * dt;
    }
    [0.0, -0.5 * integral, 0.5 * integral]
}

/// Loop-closure tolerance used by [`geometric_phases`].
pub const LOOP_TOL: f64 = 1e-6;

/// Geometric phases of a closed path; [`CoreError::OpenPath`] otherwise.
///
/// The phases follow the standard adiabatic theorem, `psi(T) = e^{i gamma_j}
/// |E_j>` with `gamma_j = i oint <E_j| d E_j>`. For the eigenvector family of
/// [`eigenvector_matrix`] the connections are `<E_0|d E_0> = i sin^2(theta)
/// dphi` and `<E_pm|d E_pm> = (i/2) cos^2(theta) dphi`, so
/// `gamma_0 = -oint sin^2(theta) dphi` and
/// `gamma_pm = -(1/2) oint cos^2(theta) dphi`. (The opposite sign is also in
/// circulation; direct integration of the model Hamiltonian around a ramp
/// loop settles the convention used here — see [`ramp_phase`].)
pub fn geometric_phases(path: &AdiabaticPath) -> Result<[f64; 3]> {
    if !path.is_closed(LOOP_TOL) {
        return Err(CoreError::OpenPath);
    }
    let mut dark = 0.0;
    let mut bright = 0.0;
    for k in 1..path.len() {
        let dphi = path.phi[k] - path.phi[k - 1];
        let s0 = path.theta[k - 1].sin();
        let s1 = path.theta[k].sin();
        let sin2 = 0.5 * (s0 * s0 + s1 * s1);
        dark -= sin2 * dphi;
        bright -= 0.5 * (1.0 - sin2) * dphi;
    }
    Ok([dark, bright, bright])
}

/// Both phase families of a closed path.
pub fn phases(path: &AdiabaticPath) -> Result<StirapPhases> {
    Ok(StirapPhases { dynamical: dynamical_phases(path), geometric: geometric_phases(path)? })
}

/// Anchoring tolerance of [`stirap_propagator`]: the path must start within
/// this angle of `theta = 0`.
pub const ANCHOR_TOL: f64 = 1e-9;

/// Adiabatic propagator of a path that starts at the `theta = 0` anchor
/// (where the dark state is `|11>`): `U = R(theta_T, phi_T) D` with
/// `D = diag(e^{i phi_0}, e^{i phi_+}, e^{i phi_-})` the per-branch phases.
///
/// Coordinates: the input vector is expanded in the adiabatic basis at the
/// anchor, `{|11>, (|A>+|alpha>)/sqrt(2), (|A>-|alpha>)/sqrt(2)}`; the output
/// is expanded in the fixed frame [`anchor_frame`] (which differs from the
/// input basis by the sign of the third vector — see [`stirap_rotation`]).
/// Use [`adiabatic_transport`] for a propagator in atomic coordinates.
pub fn stirap_propagator(path: &AdiabaticPath, phases: &StirapPhases) -> Result<OperatorMatrix> {
    let ((theta0, _), (theta_t, phi_t)) = path.endpoints();
    if theta0.abs() > ANCHOR_TOL {
        return Err(CoreError::PathNotAnchored);
    }
    let mut u = stirap_rotation(theta_t, phi_t);
    let total = phases.total();
    for col in 0..3 {
        let d = Complex64::from_polar(1.0, total[col]);
        for row in 0..3 {
            u.set(row, col, u.get(row, col) * d);
        }
    }
    Ok(u)
}

/// Adiabatic transport in atomic `{|11>, |A>, |alpha>}` coordinates from
/// angles `(theta_a, phi_a)` to `(theta_b, phi_b)`:
/// `U = M(theta_b, phi_b) D M(theta_a, phi_a)^dagger` with the same phase
/// diagonal as [`stirap_propagator`]. No anchoring requirement.
pub fn adiabatic_transport(
    from: (f64, f64),
    to: (f64, f64),
    phases: &StirapPhases,
) -> OperatorMatrix {
    let start = eigenvector_matrix(from.0, from.1).adjoint();
    let mut mid = eigenvector_matrix(to.0, to.1);
    let total = phases.total();
    for col in 0..3 {
        let d = Complex64::from_polar(1.0, total[col]);
        for row in 0..3 {
            mid.set(row, col, mid.get(row, col) * d);
        }
    }
    mid.matmul(&start)
}

/// Ratio and phase of a ramp loop: `ratio = ∫ x^2 / (1 + x^2) dt` over the
/// schedule (independent of `delta`) and the dark-state geometric phase
/// `phi_g = delta * ratio`, unwrapped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampPhase {
    /// `∫ x^2/(1+x^2) dt`, the loop phase per unit of detuning.
    pub ratio: f64,
    /// Geometric phase `delta * ratio` (not wrapped).
    pub phi_g: f64,
}

/// Geometric phase of a ratio-ramp schedule by adaptive trapezoidal
/// quadrature: starts at 10^4 panels and doubles until the phase changes by
/// less than 10^-6 rad (for `delta = 0`, until the ratio converges to the
/// same figure). Non-ramp schedules are a [`CoreError::NotARamp`].
///
/// Sign convention: with the loop angle winding as `phi = -delta t`, the
/// dark state returns with the phase `phi_g = -∮ sin^2(theta) dphi
/// = +delta ∫ sin^2(theta) dt` (see [`geometric_phases`]). Equivalently, in
/// the lab frame the dark state's instantaneous energy is
/// `-delta sin^2(theta)`, whose dynamical phase `-∫ E dt` is the same
/// `+delta ∫ sin^2(theta) dt`. Direct numerical integration of both the
/// effective and the full model around a ramp loop reproduces this sign.
pub fn ramp_phase(schedule: &PulseSchedule, delta: f64) -> Result<RampPhase> {
    if !schedule.is_ramp() {
        return Err(CoreError::NotARamp);
    }
    let total = schedule.total_time();
    let integrand = |t: f64| -> f64 {
        let x = schedule.ramp_ratio_at(t).expect("ramp shape");
        x * x / (1.0 + x * x)
    };
    let trapezoid = |n: usize| -> f64 {
        let h = total / (n as f64);
        let mut acc = 0.5 * (integrand(0.0) + integrand(total));
        for k in 1..n {
            acc += integrand((k as f64) * h);
        }
        acc * h
    };
    let mut n = 10_000usize;
    let mut ratio = trapezoid(n);
    loop {
        n *= 2;
        let next = trapezoid(n);
        let change = if delta != 0.0 {
            (delta * (next - ratio)).abs()
        } else {
            (next - ratio).abs() / ratio.abs().max(1.0)
        };
        ratio = next;
        if change < 1e-6 || n >= (1 << 23) {
            break;
        }
    }
    Ok(RampPhase { ratio, phi_g: delta * ratio })
}
