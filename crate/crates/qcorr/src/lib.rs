//! Quantum-correlation toolkit for two-qubit systems.
//!
//! The crate measures three correlation quantifiers on two-qubit density
//! operators — concurrence (entanglement), the F3 steering quantifier
//! (EPR steering under three-measurement criteria), and interferometric
//! power (discord-type correlations) — and tracks how they evolve when one
//! qubit of the pair passes through a noisy channel (phase damping,
//! generalized amplitude damping, or collective "squeezed" dephasing on
//! the pair) or when two pairs are fused by entanglement swapping.
//!
//! Layering:
//!
//! * [`states`] — density-operator construction and validation, the
//!   Almeida one-parameter family, Bell states, tensor products, partial
//!   traces, and the X-form fast path.
//! * [`quantifiers`] — concurrence, correlation matrix, F3 steering,
//!   quantum Fisher information, interferometric power (plus a
//!   brute-force oracle), and negativity.
//! * [`channels`] — Kraus-operator channels, single-qubit lifting,
//!   closed-form images of Almeida states under each channel, and the
//!   p(t) reparameterization.
//! * [`swapping`] — Bell-basis measurement on the inner qubits of two
//!   pairs and the resulting conditional states.
//! * [`sweep`] — deterministic parameter sweeps, sudden-death/revival
//!   detection, figure-preset data sets, and the CLI entry point.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod quantifiers;
pub mod states;
pub mod swapping;
pub mod sweep;

pub use error::Error;
pub use num_complex::Complex64;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Tolerance for Hermiticity checks on density operators.
pub const TOL_HERM: f64 = 1e-10;
/// Tolerance for unit-trace checks on density operators.
pub const TOL_TRACE: f64 = 1e-10;
/// Tolerance below which a negative eigenvalue fails positivity.
pub const TOL_PSD: f64 = 1e-10;
/// Tolerance for recognizing the X pattern of sparsity.
pub const TOL_X: f64 = 1e-10;
/// Tolerance for the Kraus completeness check (CPTP).
pub const TOL_CPTP: f64 = 1e-12;
/// Tolerance for treating eigenvalue pairs as degenerate in spectral sums.
pub const TOL_DEG: f64 = 1e-12;
/// Probabilities below this are treated as zero (swap outcomes).
pub const TOL_PROB: f64 = 1e-12;
/// Quantifier values at or below this count as "zero" for death/revival.
pub const TOL_ZERO: f64 = 1e-9;
