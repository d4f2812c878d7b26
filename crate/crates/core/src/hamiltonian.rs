//! Hamiltonian builders: the full two-atom/cavity model, its conditional
//! (no-photon) counterpart, and the reduced models used for gate design.
//!
//! Conventions (units of `g = 1`, `hbar = 1`):
//! - cavity coupling `g (|2><1|_i b + h.c.)` on each atom `i`;
//! - classical drives `(Omega_1^(i) |1><2|_i + Omega_sigma^(i) |sigma><2|_i)/2
//!   + h.c.` with the standing-wave signs `Omega_1^(1) = -Omega_1/sqrt(2)`,
//!   `Omega_1^(2) = +Omega_1/sqrt(2)`, `Omega_sigma^(1) = -Omega_sigma`,
//!   `Omega_sigma^(2) = +Omega_sigma` baked in;
//! - detunings `-delta |sigma><sigma|_i` and `-Delta |2><2|_i`;
//! - conditional evolution adds `-i kappa b'b / 2 - i Gamma sum_i |2><2|_i / 2`.

#[allow(unused_imports)]
use num_traits::Float as _;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::analytic::RamanConstants;
use crate::error::{CoreError, Result};
use crate::hilbert::{dfs_project, AtomLevel, HilbertSpace, QuantumState};
use crate::operator::OperatorMatrix;
use crate::propagate::HamiltonianSource;
use crate::pulses::Drive;

/// Physical rates and detunings of the atom-cavity system, in units of `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Atom-cavity coupling; the unit of every other rate (normally 1).
    pub g: f64,
    /// Cavity photon decay rate.
    pub kappa: f64,
    /// Spontaneous emission rate of level 2 (the only decaying level).
    pub gamma: f64,
    /// Common (one-photon) detuning of level 2, entering as `-Delta |2><2|`.
    pub big_delta: f64,
    /// Two-photon detuning of level sigma, entering as `-delta |sigma><sigma|`.
    pub small_delta: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams { g: 1.0, kappa: 0.0, gamma: 0.0, big_delta: 0.0, small_delta: 0.0 }
    }
}

impl SystemParams {
    /// Panics on unusable parameters (checked by every builder).
    fn validate(&self) {
        assert!(
            self.g > 0.0 && self.g.is_finite(),
            "coupling g must be positive and finite, got {}",
            self.g
        );
        assert!(
            self.kappa >= 0.0 && self.kappa.is_finite(),
            "kappa must be nonnegative and finite, got {}",
            self.kappa
        );
        assert!(
            self.gamma >= 0.0 && self.gamma.is_finite(),
            "Gamma must be nonnegative and finite, got {}",
            self.gamma
        );
        assert!(self.big_delta.is_finite(), "Delta must be finite");
        assert!(self.small_delta.is_finite(), "delta must be finite");
    }
}

/// Collective Rabi amplitudes of the two drives. The per-atom signs and the
/// `1/sqrt(2)` on `Omega_1` are applied by the builders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserAmplitudes {
    /// Collective amplitude of the laser driving `1 <-> 2`.
    pub omega1: Complex64,
    /// Collective amplitude of the laser driving `sigma <-> 2`.
    pub omega_sigma: Complex64,
}

impl LaserAmplitudes {
    /// Real amplitudes.
    pub fn real(omega1: f64, omega_sigma: f64) -> Self {
        LaserAmplitudes {
            omega1: Complex64::new(omega1, 0.0),
            omega_sigma: Complex64::new(omega_sigma, 0.0),
        }
    }

    /// Both lasers off.
    pub fn off() -> Self {
        Self::real(0.0, 0.0)
    }
}

/// Dimension of the effective three-level model.
pub const EFF_DIM: usize = 3;
/// Index of `|11>` in the effective model.
pub const EFF_IDX_11: usize = 0;
/// Index of the maximally entangled `|A>` in the effective model.
pub const EFF_IDX_A: usize = 1;
/// Index of the singlet `|alpha>` in the effective model.
pub const EFF_IDX_ALPHA: usize = 2;

/// Per-atom sign of the `Omega_1` drive (includes the `1/sqrt(2)` factor).
fn omega1_weight(atom: usize) -> f64 {
    let root = 1.0 / 2f64.sqrt();
    if atom == 0 {
        -root
    } else {
        root
    }
}

/// Per-atom sign of the `Omega_sigma` drive.
fn omega_sigma_weight(atom: usize) -> f64 {
    if atom == 0 {
        -1.0
    } else {
        1.0
    }
}

/// One matrix slot written by the lasers: `H[row][col] = weight * Omega / 2`
/// (and the conjugate mirror). Slots are disjoint from every static entry,
/// so a refresh overwrites them without touching the rest of the matrix.
#[derive(Debug, Clone, Copy)]
struct LaserSlot {
    row: usize,
    col: usize,
    weight: f64,
    sigma_laser: bool,
}

fn atom_levels(atom: usize, own: AtomLevel, other: AtomLevel) -> (AtomLevel, AtomLevel) {
    if atom == 0 {
        (own, other)
    } else {
        (other, own)
    }
}

fn laser_slots(space: HilbertSpace) -> Vec<LaserSlot> {
    let mut slots = Vec::new();
    for atom in 0..2 {
        for other in AtomLevel::ALL {
            for n in 0..space.photon_states() {
                let (l1, l2) = atom_levels(atom, AtomLevel::One, other);
                let one = space.basis_index(l1, l2, n).expect("in range");
                let (l1, l2) = atom_levels(atom, AtomLevel::Sigma, other);
                let sigma = space.basis_index(l1, l2, n).expect("in range");
                let (l1, l2) = atom_levels(atom, AtomLevel::Two, other);
                let two = space.basis_index(l1, l2, n).expect("in range");
                slots.push(LaserSlot {
                    row: one,
                    col: two,
                    weight: omega1_weight(atom),
                    sigma_laser: false,
                });
                slots.push(LaserSlot {
                    row: sigma,
                    col: two,
                    weight: omega_sigma_weight(atom),
                    sigma_laser: true,
                });
            }
        }
    }
    slots
}

fn write_laser_slots(h: &mut OperatorMatrix, slots: &[LaserSlot], lasers: &LaserAmplitudes) {
    for slot in slots {
        let omega = if slot.sigma_laser { lasers.omega_sigma } else { lasers.omega1 };
        let value = 0.5 * slot.weight * omega;
        h.set(slot.row, slot.col, value);
        h.set(slot.col, slot.row, value.conj());
    }
}

/// Static (laser-independent) part: cavity couplings, detunings and, when
/// `conditional` is set, the anti-Hermitian no-photon decay terms.
fn build_static(space: HilbertSpace, params: &SystemParams, conditional: bool) -> OperatorMatrix {
    params.validate();
    let mut h = OperatorMatrix::zeros(space.dim());
    // Cavity exchange g sqrt(n+1) |2, n><1, n+1| per atom. The coupling out
    // of the highest retained photon number is dropped by the truncation.
    for atom in 0..2 {
        for other in AtomLevel::ALL {
            for n in 0..space.n_max() {
                let (l1, l2) = atom_levels(atom, AtomLevel::Two, other);
                let row = space.basis_index(l1, l2, n).expect("in range");
                let (l1, l2) = atom_levels(atom, AtomLevel::One, other);
                let col = space.basis_index(l1, l2, n + 1).expect("in range");
                let amp = params.g * ((n + 1) as f64).sqrt();
                h.add_hermitian_pair(row, col, Complex64::new(amp, 0.0));
            }
        }
    }
    // Detuning diagonal, plus the conditional decay diagonal.
    for idx in 0..space.dim() {
        let (l1, l2, n) = space.basis_labels(idx);
        let sigmas =
            usize::from(l1 == AtomLevel::Sigma) + usize::from(l2 == AtomLevel::Sigma);
        let twos = usize::from(l1 == AtomLevel::Two) + usize::from(l2 == AtomLevel::Two);
        let re = -params.small_delta * (sigmas as f64) - params.big_delta * (twos as f64);
        let im = if conditional {
            -0.5 * (params.kappa * (n as f64) + params.gamma * (twos as f64))
        } else {
            0.0
        };
        if re != 0.0 || im != 0.0 {
            h.set(idx, idx, Complex64::new(re, im));
        }
    }
    h.set_hermitian(!conditional);
    h
}

/// Full Hermitian Hamiltonian for given laser amplitudes.
pub fn build_full(
    space: HilbertSpace,
    params: &SystemParams,
    lasers: &LaserAmplitudes,
) -> OperatorMatrix {
    let mut h = build_static(space, params, false);
    write_laser_slots(&mut h, &laser_slots(space), lasers);
    h
}

/// Conditional (no-photon-emission) Hamiltonian: the full Hamiltonian with
/// `-i kappa b'b/2 - i Gamma sum_i |2><2|_i / 2` added to the diagonal.
/// Evolution under it is norm-decreasing; the squared norm of the propagated
/// state is the no-emission success probability `P_0`.
pub fn build_conditional(
    space: HilbertSpace,
    params: &SystemParams,
    lasers: &LaserAmplitudes,
) -> OperatorMatrix {
    let mut h = build_static(space, params, true);
    write_laser_slots(&mut h, &laser_slots(space), lasers);
    h
}

/// Effective three-level Hamiltonian on `{|11>, |A>, |alpha>}`:
/// couplings `Omega_1/2` (`|11> <-> |alpha>`) and `Omega_sigma/2`
/// (`|A> <-> |alpha>`), with diagonal `(0, -delta, -Delta)`.
pub fn build_effective(params: &SystemParams, lasers: &LaserAmplitudes) -> OperatorMatrix {
    params.validate();
    let mut h = OperatorMatrix::zeros(EFF_DIM);
    h.set_hermitian_pair(EFF_IDX_ALPHA, EFF_IDX_11, 0.5 * lasers.omega1);
    h.set_hermitian_pair(EFF_IDX_ALPHA, EFF_IDX_A, 0.5 * lasers.omega_sigma);
    h.set(EFF_IDX_A, EFF_IDX_A, Complex64::new(-params.small_delta, 0.0));
    h.set(
        EFF_IDX_ALPHA,
        EFF_IDX_ALPHA,
        Complex64::new(-params.big_delta, 0.0),
    );
    h
}

/// Reduced two-level Raman Hamiltonian on `{|11>, |A>}` after adiabatic
/// elimination of `|alpha>`; requires `Delta != 0`.
pub fn build_raman_reduced(
    params: &SystemParams,
    lasers: &LaserAmplitudes,
) -> Result<OperatorMatrix> {
    params.validate();
    let constants = RamanConstants::from_params(params, lasers)?;
    let mut h = OperatorMatrix::zeros(2);
    h.set(0, 0, Complex64::new(-constants.delta_11, 0.0));
    h.set(1, 1, Complex64::new(-constants.delta_a, 0.0));
    h.set_hermitian_pair(1, 0, 0.5 * constants.omega.conj());
    Ok(h)
}

/// Embed a three-level effective Hamiltonian into the full space over the
/// basis `{|11, 0>, |A, 0>, |alpha, 0>}`.
pub fn embed_effective(space: HilbertSpace, h_eff: &OperatorMatrix) -> Result<OperatorMatrix> {
    if h_eff.dim() != EFF_DIM {
        return Err(CoreError::DimensionMismatch { expected: EFF_DIM, got: h_eff.dim() });
    }
    let basis = effective_basis(space)?;
    let mut h = OperatorMatrix::zeros(space.dim());
    for a in 0..EFF_DIM {
        for b in 0..EFF_DIM {
            let coeff = h_eff.get(a, b);
            if coeff == Complex64::ZERO {
                continue;
            }
            for (i, vi) in basis[a].amplitudes().iter().enumerate() {
                if vi.norm_sqr() == 0.0 {
                    continue;
                }
                for (j, vj) in basis[b].amplitudes().iter().enumerate() {
                    if vj.norm_sqr() == 0.0 {
                        continue;
                    }
                    h.add_to(i, j, coeff * vi * vj.conj());
                }
            }
        }
    }
    Ok(h)
}

fn effective_basis(space: HilbertSpace) -> Result<[QuantumState; 3]> {
    use crate::hilbert::{make_named_state, NamedState};
    let one_one = QuantumState::basis(space, AtomLevel::One, AtomLevel::One, 0)?;
    let a = make_named_state(space, NamedState::A)?;
    let alpha = make_named_state(space, NamedState::Alpha)?;
    Ok([one_one, a, alpha])
}

/// Largest deviation between `P H P` (the full Hamiltonian compressed onto
/// the decoherence-free subspace by the projector `P`) and the embedded
/// effective laser Hamiltonian, at `delta = Delta = 0`. Exactly zero in exact
/// arithmetic: the cavity coupling is annihilated by `P` and the laser part
/// reduces to the three-level model.
pub fn check_projector_identity(space: HilbertSpace, lasers: &LaserAmplitudes) -> f64 {
    let params = SystemParams::default();
    let h = build_full(space, &params, lasers);
    let h_eff = build_effective(&params, lasers);
    let embedded = embed_effective(space, &h_eff).expect("3x3 by construction");
    let mut worst: f64 = 0.0;
    let mut column = QuantumState::zero(space);
    for j in 0..space.dim() {
        column.amplitudes_mut().fill(Complex64::ZERO);
        column.amplitudes_mut()[j] = Complex64::new(1.0, 0.0);
        let pj = dfs_project(&column);
        let hpj = h.mul_vec(pj.amplitudes()).expect("dims match");
        let php = dfs_project(&QuantumState::from_amplitudes(space, hpj).expect("dims match"));
        let reference = embedded.mul_vec(column.amplitudes()).expect("dims match");
        for (a, b) in php.amplitudes().iter().zip(&reference) {
            worst = worst.max((a - b).norm());
        }
    }
    worst
}

/// A time-dependent Hamiltonian assembled from a static part plus laser
/// slots refreshed from a [`Drive`]. Implements [`HamiltonianSource`] for the
/// integrator; sampling times are clamped to the drive window so that
/// end-of-interval rounding never queries the schedule out of range.
#[derive(Debug, Clone)]
pub struct DrivenHamiltonian<D: Drive> {
    space: HilbertSpace,
    drive: D,
    static_part: OperatorMatrix,
    slots: Vec<LaserSlot>,
}

impl<D: Drive> DrivenHamiltonian<D> {
    /// Hermitian (non-conditional) driven Hamiltonian.
    pub fn full(space: HilbertSpace, params: &SystemParams, drive: D) -> Self {
        DrivenHamiltonian {
            space,
            drive,
            static_part: build_static(space, params, false),
            slots: laser_slots(space),
        }
    }

    /// Conditional driven Hamiltonian (no-photon evolution).
    pub fn conditional(space: HilbertSpace, params: &SystemParams, drive: D) -> Self {
        DrivenHamiltonian {
            space,
            drive,
            static_part: build_static(space, params, true),
            slots: laser_slots(space),
        }
    }

    /// The underlying drive.
    pub fn drive(&self) -> &D {
        &self.drive
    }

    fn amplitudes_at(&self, t: f64) -> LaserAmplitudes {
        let clamped = t.clamp(0.0, self.drive.duration());
        let (omega1, omega_sigma) = self.drive.amplitudes(clamped);
        LaserAmplitudes { omega1, omega_sigma }
    }
}

impl<D: Drive> HamiltonianSource for DrivenHamiltonian<D> {
    fn dim(&self) -> usize {
        self.space.dim()
    }

    fn init(&self, out: &mut OperatorMatrix) {
        out.copy_from(&self.static_part);
        write_laser_slots(out, &self.slots, &self.amplitudes_at(0.0));
    }

    fn refresh(&self, t: f64, out: &mut OperatorMatrix) {
        write_laser_slots(out, &self.slots, &self.amplitudes_at(t));
    }

    fn is_constant(&self) -> bool {
        self.drive.is_constant()
    }
}
