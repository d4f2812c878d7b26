//! Error type shared by all modules.

use core::fmt;

/// Errors reported by the simulator core.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// A cavity photon number exceeded the configured truncation.
    TruncationExceeded {
        /// Requested photon number.
        n: usize,
        /// Largest photon number the space retains.
        n_max: usize,
    },
    /// Two objects that must share a dimension do not.
    DimensionMismatch {
        /// Dimension expected by the operation.
        expected: usize,
        /// Dimension actually supplied.
        got: usize,
    },
    /// An operation required a state with nonzero norm.
    ZeroNormState,
    /// A Raman-type reduction divides by the common detuning, which was zero.
    ZeroDetuning,
    /// Control angles are undefined because both drive amplitudes vanish.
    DegenerateDrive {
        /// Time at which the drive degenerated.
        t: f64,
    },
    /// A duration or rate that must be positive was not.
    NonPositiveDuration {
        /// Offending value.
        value: f64,
    },
    /// The state left the representable range during integration.
    NonFiniteAmplitude {
        /// Step index at which the divergence was detected.
        step: usize,
        /// Time at which the divergence was detected.
        t: f64,
    },
    /// A closed control loop was required but the path does not close.
    OpenPath,
    /// An adiabatic transport formula required the path to start on `|11>`.
    PathNotAnchored,
    /// A controlled-phase angle is undefined because a computational-basis
    /// branch amplitude is too small to carry a phase.
    UndefinedPhase {
        /// Two-qubit branch label, e.g. `"01"`.
        branch: &'static str,
    },
    /// A quadrature/ramp operation was applied to a non-ramp pulse schedule.
    NotARamp,
    /// A pulse schedule was evaluated outside its defined time window.
    OutOfSchedule {
        /// Requested time.
        t: f64,
        /// Schedule duration; valid times lie in `[0, total]`.
        total: f64,
    },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TruncationExceeded { n, n_max } => {
                write!(f, "photon number {n} exceeds cavity truncation n_max = {n_max}")
            }
            Self::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::ZeroNormState => write!(f, "state has zero norm"),
            Self::ZeroDetuning => {
                write!(f, "Raman reduction requires a nonzero common detuning Delta")
            }
            Self::DegenerateDrive { t } => {
                write!(f, "control angles undefined at t = {t}: both drive amplitudes vanish")
            }
            Self::NonPositiveDuration { value } => {
                write!(f, "duration/rate must be positive, got {value}")
            }
            Self::NonFiniteAmplitude { step, t } => {
                write!(f, "non-finite amplitude at step {step} (t = {t}); integration diverged")
            }
            Self::OpenPath => write!(f, "geometric phases require a closed control loop"),
            Self::PathNotAnchored => {
                write!(f, "adiabatic transport here requires the path to start at theta = 0")
            }
            Self::UndefinedPhase { branch } => {
                write!(f, "branch |{branch}> amplitude too small to define a phase")
            }
            Self::NotARamp => write!(f, "operation only applies to ramp-shaped pulse schedules"),
            Self::OutOfSchedule { t, total } => {
                write!(f, "t = {t} outside the pulse schedule window [0, {total}]")
            }
        }
    }
}

impl core::error::Error for CoreError {}

/// Convenience alias used across the crate.
pub type Result<T> = core::result::Result<T, CoreError>;
