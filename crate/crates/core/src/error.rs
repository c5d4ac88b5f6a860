use num_complex::Complex64 as C64;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// `|det(M)|` fell below the singularity threshold; the linear system has
    /// no (unique) steady state. Carries the offending determinant.
    #[error("singular drift system: det(M) = {re:+e}{im:+e}i has modulus below tolerance", re = .det.re, im = .det.im)]
    SingularSystem { det: C64 },

    /// A dark-phase solver was called with one of the drives switched off;
    /// without both drives the phase difference has no effect.
    #[error("dark condition undefined: both drive magnitudes must be positive")]
    DriveOff,

    /// `collective_coupling` requires at least one atom.
    #[error("collective coupling needs at least one atom (got N = 0)")]
    ZeroAtoms,

    /// Fixed-step integration was asked to take steps too large for the
    /// spectrum of the drift matrix.
    #[error("step size dt = {dt} too large: dt * spectral radius = {product:.3e} exceeds 0.1")]
    StepSizeTooLarge { dt: f64, product: f64 },

    /// Truncated Fock space would exceed the configured Hilbert-space cap.
    #[error("Fock dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    /// The Lindblad oracle only supports damping (all decay rates positive).
    #[error("oracle requires loss-only parameters (all decay rates > 0)")]
    LossOnlyRequired,

    /// The trace-constrained generator could not be factorized; the steady
    /// state is not unique.
    #[error("generator is degenerate: no unique steady density state")]
    DegenerateGenerator,

    /// Symmetric three-mode design needs `delta > gamma/2`, otherwise the
    /// collective coupling would be imaginary.
    #[error("infeasible design: delta = {delta} must exceed gamma/2 = {bound}")]
    InfeasibleDesign { delta: f64, bound: f64 },

    /// Malformed argument combinations (bad sweep grids, mismatched
    /// dimensions, non-positive times, ...).
    #[error("invalid input: {0}")]
    BadInput(String),

    /// Problems reading, writing, or interpreting a JSON parameter file.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
