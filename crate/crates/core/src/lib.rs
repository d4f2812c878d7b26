//! Conditional (no-photon) dynamics and decoherence-free entangling phase
//! gates for two four-level atoms coupled to a single optical-cavity mode.
//!
//! The model: each atom carries two qubit levels `|0>`, `|1>`, an auxiliary
//! ground level `|sigma>` and one excited level `|2>`; the cavity couples the
//! `1 <-> 2` transition with strength `g`, lasers drive `1 <-> 2` and
//! `sigma <-> 2` with opposite signs on the two atoms, and the only decay
//! channels are cavity leakage `kappa` and spontaneous emission `Gamma` from
//! `|2>`. Conditioned on *no* photon ever being detected, the state evolves
//! under a non-Hermitian Hamiltonian; within the decoherence-free subspace
//! spanned by the singlet `|alpha> = (|12> - |21>)/sqrt(2)` and the
//! excitation-free product states, the lasers effectively couple only
//! `|11>`, `|A> = (|sigma 1> + |1 sigma>)/sqrt(2)` and `|alpha>`. Two-qubit
//! entangling phase gates are obtained from Raman-type (`E-Raman`) or
//! adiabatic-passage (`E-STIRAP`) drives of the `|11> <-> |A>` transition, the
//! latter supporting both dynamical and geometric (Berry-phase) gate designs.
//!
//! Units: `hbar = 1` throughout, and all rates/frequencies are quoted in
//! units of the cavity coupling (`g = 1` in every worked example).
//!
//! Layout:
//! - [`hilbert`]: basis bookkeeping, named entangled states, the
//!   decoherence-free-subspace projector;
//! - [`operator`]: dense complex matrices with a split-storage multiply kernel;
//! - [`hamiltonian`]: full, conditional and effective Hamiltonian builders;
//! - [`pulses`]: laser pulse schedules and control angles;
//! - [`propagate`]: fixed-step RK4 propagation and decay windows;
//! - [`analytic`]: closed-form propagators, adiabatic eigensystem, Berry
//!   phases and ramp quadratures;
//! - [`gates`]: entangling phase-gate protocols and gate metrics.
//!
//! The crate is `no_std`-compatible (requires `alloc`): disable the default
//! `std` feature and enable `libm` to supply the float math.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("phasegate-core needs either the `std` or the `libm` feature for float math");

pub mod analytic;
pub mod error;
pub mod gates;
pub mod hamiltonian;
pub mod hilbert;
pub mod operator;
pub mod propagate;
pub mod pulses;

pub use error::{CoreError, Result};
pub use num_complex::Complex64;
