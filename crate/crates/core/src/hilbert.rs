//! Basis bookkeeping for two four-level atoms and a truncated cavity mode.
//!
//! A basis vector is `|l1, l2, n>`: the levels of atom 1 and atom 2 and the
//! cavity photon number `n <= n_max`. Indices are row-major in that order, so
//! `index = (l1 * 4 + l2) * (n_max + 1) + n`.

#[allow(unused_imports)]
use num_traits::Float as _;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{CoreError, Result};

/// Number of levels per atom.
pub const ATOM_LEVELS: usize = 4;

/// Default cavity truncation used by the worked examples. Headline results
/// are insensitive to raising it (they agree at `2` and `3` to better than
/// `1e-6`), because the conditional dynamics keeps at most one photon
/// virtually excited.
pub const DEFAULT_N_MAX: usize = 2;

/// Single-atom level: qubit states `|0>`, `|1>`, the auxiliary ground state
/// `|sigma>`, and the excited state `|2>` (the only level that decays).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum AtomLevel {
    /// Qubit level `|0>`; completely decoupled from cavity and lasers.
    Zero = 0,
    /// Qubit level `|1>`; couples to `|2>` via the cavity and the first laser.
    One = 1,
    /// Auxiliary ground level `|sigma>`; couples to `|2>` via the second laser.
    Sigma = 2,
    /// Excited level `|2>`; decays with rate `Gamma`.
    Two = 3,
}

impl AtomLevel {
    /// All levels in index order.
    pub const ALL: [AtomLevel; ATOM_LEVELS] =
        [AtomLevel::Zero, AtomLevel::One, AtomLevel::Sigma, AtomLevel::Two];

    /// Position of the level in the single-atom basis.
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Level at a given single-atom basis position (`idx < 4`).
    pub fn from_index(idx: usize) -> Option<AtomLevel> {
        Self::ALL.get(idx).copied()
    }

    /// Short text label (`"0"`, `"1"`, `"sigma"`, `"2"`).
    pub const fn label(self) -> &'static str {
        match self {
            AtomLevel::Zero => "0",
            AtomLevel::One => "1",
            AtomLevel::Sigma => "sigma",
            AtomLevel::Two => "2",
        }
    }

    /// Parse a text label as produced by [`AtomLevel::label`].
    pub fn parse(s: &str) -> Option<AtomLevel> {
        match s {
            "0" => Some(AtomLevel::Zero),
            "1" => Some(AtomLevel::One),
            "sigma" | "s" => Some(AtomLevel::Sigma),
            "2" => Some(AtomLevel::Two),
            _ => None,
        }
    }
}

/// Product space of the two atoms and the truncated cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpace {
    n_max: usize,
}

impl HilbertSpace {
    /// Space retaining cavity Fock states `|0> ..= |n_max>`.
    pub const fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    /// Largest retained photon number.
    pub const fn n_max(self) -> usize {
        self.n_max
    }

    /// Number of photon states, `n_max + 1`.
    pub const fn photon_states(self) -> usize {
        self.n_max + 1
    }

    /// Total dimension `16 * (n_max + 1)`.
    pub const fn dim(self) -> usize {
        ATOM_LEVELS * ATOM_LEVELS * (self.n_max + 1)
    }

    /// Index of `|l1, l2, n>`; rejects photon numbers beyond the truncation.
    pub fn basis_index(self, l1: AtomLevel, l2: AtomLevel, n: usize) -> Result<usize> {
        if n > self.n_max {
            return Err(CoreError::TruncationExceeded { n, n_max: self.n_max });
        }
        Ok((l1.index() * ATOM_LEVELS + l2.index()) * self.photon_states() + n)
    }

    /// Labels `(l1, l2, n)` of a basis index.
    ///
    /// # Panics
    /// If `index >= self.dim()`.
    pub fn basis_labels(self, index: usize) -> (AtomLevel, AtomLevel, usize) {
        assert!(index < self.dim(), "basis index {index} out of range for dim {}", self.dim());
        let ph = self.photon_states();
        let n = index % ph;
        let atoms = index / ph;
        let l1 = AtomLevel::from_index(atoms / ATOM_LEVELS).expect("in range");
        let l2 = AtomLevel::from_index(atoms % ATOM_LEVELS).expect("in range");
        (l1, l2, n)
    }
}

/// Pure state of the atom-atom-cavity system.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    space: HilbertSpace,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// The zero vector (useful as an accumulator).
    pub fn zero(space: HilbertSpace) -> Self {
        Self { space, amps: vec![Complex64::ZERO; space.dim()] }
    }

    /// Basis state `|l1, l2, n>`.
    pub fn basis(space: HilbertSpace, l1: AtomLevel, l2: AtomLevel, n: usize) -> Result<Self> {
        let mut s = Self::zero(space);
        let idx = space.basis_index(l1, l2, n)?;
        s.amps[idx] = Complex64::ONE;
        Ok(s)
    }

    /// Build a state from a raw amplitude vector.
    pub fn from_amplitudes(space: HilbertSpace, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(CoreError::DimensionMismatch { expected: space.dim(), got: amps.len() });
        }
        Ok(Self { space, amps })
    }

    /// The space this state lives in.
    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    /// Amplitude vector, basis-ordered.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Mutable amplitude vector.
    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Amplitude on `|l1, l2, n>`.
    pub fn amp(&self, l1: AtomLevel, l2: AtomLevel, n: usize) -> Result<Complex64> {
        Ok(self.amps[self.space.basis_index(l1, l2, n)?])
    }

    /// Set the amplitude on `|l1, l2, n>`.
    pub fn set_amp(&mut self, l1: AtomLevel, l2: AtomLevel, n: usize, a: Complex64) -> Result<()> {
        let idx = self.space.basis_index(l1, l2, n)?;
        self.amps[idx] = a;
        Ok(())
    }

    /// Squared norm `<psi|psi>`.
    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Norm `sqrt(<psi|psi>)`.
    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn overlap(&self, other: &QuantumState) -> Result<Complex64> {
        if self.amps.len() != other.amps.len() {
            return Err(CoreError::DimensionMismatch {
                expected: self.amps.len(),
                got: other.amps.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Unit-norm copy; rejects (numerically) zero states.
    pub fn normalized(&self) -> Result<QuantumState> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(CoreError::ZeroNormState);
        }
        let mut out = self.clone();
        for a in &mut out.amps {
            *a /= n;
        }
        Ok(out)
    }

    /// Scale all amplitudes in place.
    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    /// Accumulate `c * other` into `self`.
    pub fn axpy(&mut self, c: Complex64, other: &QuantumState) -> Result<()> {
        if self.amps.len() != other.amps.len() {
            return Err(CoreError::DimensionMismatch {
                expected: self.amps.len(),
                got: other.amps.len(),
            });
        }
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += c * b;
        }
        Ok(())
    }
}

/// Distinguished two-atom states (all with the cavity in `|0>`).
///
/// `theta`/`phi` parametrize the adiabatic basis of the effective three-level
/// system: `tan(theta)` is the drive ratio `Omega_1/Omega_sigma` and `phi` the
/// relative drive phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedState {
    /// Singlet `|alpha> = (|12> - |21>)/sqrt(2)`; trapped under the cavity
    /// coupling because the two emission paths interfere destructively.
    Alpha,
    /// Maximally entangled target `|A> = (|sigma 1> + |1 sigma>)/sqrt(2)`.
    A,
    /// `|alpha~> = (|sigma 2> - |2 sigma>)/sqrt(2)`.
    AlphaTilde,
    /// `|A~> = (|sigma 1> - |1 sigma>)/sqrt(2)`; decoupled from sign-matched
    /// drives of the two atoms.
    ATilde,
    /// Dark state `|E0> = cos(theta)|11> - e^{i phi} sin(theta)|A>`.
    E0 {
        /// Mixing angle.
        theta: f64,
        /// Relative drive phase.
        phi: f64,
    },
    /// Bright state
    /// `|E+> = (sin(theta)|11> + e^{i phi} cos(theta)|A> + |alpha>)/sqrt(2)`.
    EPlus {
        /// Mixing angle.
        theta: f64,
        /// Relative drive phase.
        phi: f64,
    },
    /// Bright state
    /// `|E-> = (sin(theta)|11> + e^{i phi} cos(theta)|A> - |alpha>)/sqrt(2)`.
    EMinus {
        /// Mixing angle.
        theta: f64,
        /// Relative drive phase.
        phi: f64,
    },
}

/// Construct one of the distinguished entangled states.
pub fn make_named_state(space: HilbertSpace, which: NamedState) -> Result<QuantumState> {
    use AtomLevel::{One, Sigma, Two};
    let rt2 = core::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut s = QuantumState::zero(space);
    match which {
        NamedState::Alpha => {
            s.set_amp(One, Two, 0, re(rt2))?;
            s.set_amp(Two, One, 0, re(-rt2))?;
        }
        NamedState::A => {
            s.set_amp(Sigma, One, 0, re(rt2))?;
            s.set_amp(One, Sigma, 0, re(rt2))?;
        }
        NamedState::AlphaTilde => {
            s.set_amp(Sigma, Two, 0, re(rt2))?;
            s.set_amp(Two, Sigma, 0, re(-rt2))?;
        }
        NamedState::ATilde => {
            s.set_amp(Sigma, One, 0, re(rt2))?;
            s.set_amp(One, Sigma, 0, re(-rt2))?;
        }
        NamedState::E0 { theta, phi } => {
            let a = make_named_state(space, NamedState::A)?;
            s.set_amp(One, One, 0, re(theta.cos()))?;
            s.axpy(-Complex64::new(0.0, phi).exp() * theta.sin(), &a)?;
        }
        NamedState::EPlus { theta, phi } | NamedState::EMinus { theta, phi } => {
            let sign = if matches!(which, NamedState::EPlus { .. }) { 1.0 } else { -1.0 };
            let a = make_named_state(space, NamedState::A)?;
            let alpha = make_named_state(space, NamedState::Alpha)?;
            s.set_amp(One, One, 0, re(theta.sin() * rt2))?;
            s.axpy(Complex64::new(0.0, phi).exp() * theta.cos() * rt2, &a)?;
            s.axpy(re(sign * rt2), &alpha)?;
        }
    }
    Ok(s)
}

/// Project onto the decoherence-free subspace of the conditional dynamics:
/// the span of `|alpha>` and the nine products `|ij>` with `i, j` drawn from
/// `{0, 1, sigma}`, all with an empty cavity. States in this span never
/// populate the decaying level `|2>` or the cavity mode, so they emit no
/// photons under the bare (laser-free) evolution.
pub fn dfs_project(state: &QuantumState) -> QuantumState {
    use AtomLevel::{One, Two};
    let space = state.space();
    let rt2 = core::f64::consts::FRAC_1_SQRT_2;
    let mut out = QuantumState::zero(space);
    // Ground products |ij, 0> pass through untouched.
    for &l1 in &[AtomLevel::Zero, AtomLevel::One, AtomLevel::Sigma] {
        for &l2 in &[AtomLevel::Zero, AtomLevel::One, AtomLevel::Sigma] {
            let a = state.amp(l1, l2, 0).expect("n = 0 always in range");
            out.set_amp(l1, l2, 0, a).expect("n = 0 always in range");
        }
    }
    // The singlet component of the {|12>, |21>} sector survives.
    let c = rt2
        * (state.amp(One, Two, 0).expect("n = 0") - state.amp(Two, One, 0).expect("n = 0"));
    out.set_amp(One, Two, 0, Complex64::new(rt2, 0.0) * c).expect("n = 0");
    out.set_amp(Two, One, 0, Complex64::new(-rt2, 0.0) * c).expect("n = 0");
    out
}

/// Conditional fidelity `|<target|psi>|^2 / <psi|psi>`: the fidelity of the
/// renormalized no-photon state against a unit-norm `target`.
pub fn fidelity_conditional(target: &QuantumState, state: &QuantumState) -> Result<f64> {
    let n2 = state.norm2();
    if n2 == 0.0 || !n2.is_finite() {
        return Err(CoreError::ZeroNormState);
    }
    Ok(target.overlap(state)?.norm_sqr() / n2)
}
