//! Free-fermion toolkit for M-leg SSH ladders.
//!
//! The ladder couples M half-filled Su-Schrieffer-Heeger chains with
//! alternating intrachain hoppings `1 ∓ δ_s` and a uniform interchain
//! hopping `z`. The crate covers:
//!
//! - **model**: real-space and Bloch Hamiltonians plus the chiral-symmetry
//!   unitaries that put every Bloch block in off-block-diagonal form.
//! - **topology**: winding-number invariants by two independent numerical
//!   routes (Green's-function trace and projector block), the closed-form
//!   result for uniform dimerization, and 2-D phase-diagram sweeps.
//! - **gaussian**: ground-state / thermal correlation matrices, Wick
//!   determinants and quadratic time evolution.
//! - **entanglement**: joint particle-number distributions of the four edge
//!   modes, the projected two-qubit density matrix, logarithmic negativity,
//!   entanglement of formation, operational entanglement and Uhlmann fidelity.
//! - **bell**: CHSH correlators and scans, finite-temperature CHSH, and the
//!   fidelity-based rotation protocol.
//! - **fock**: brute-force many-body oracle (full Fock-space diagonalization
//!   for up to 14 modes) used to validate the Gaussian pipeline.
//! - **sweep**: configuration-driven sweeps with CSV output, backing the CLI.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod bell;
pub mod entanglement;
pub mod fock;
pub mod gaussian;
pub(crate) mod linalg;
pub mod model;
pub mod sweep;
pub mod topology;

use thiserror::Error;

/// Errors shared across the library surface.
#[derive(Debug, Error)]
pub enum Error {
    /// The Brillouin-zone spectrum touches zero; the winding number is undefined.
    #[error("gapless spectrum: minimum |E(k)| = {gap:.3e} is below tolerance {tol:.1e}")]
    GaplessSpectrum { gap: f64, tol: f64 },

    /// The requested chiral symmetry does not exist for these parameters.
    #[error("invalid symmetry: {0}")]
    InvalidSymmetry(String),

    /// The (1,1) particle-number sector carries no weight.
    #[error("empty (1,1) sector: p(1,1) = {0:.3e}")]
    EmptySector(f64),

    /// Operands have incompatible shapes.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// The Fock-space oracle is capped at 14 modes.
    #[error("system too large for the Fock oracle: {0} modes (cap 14)")]
    TooLarge(usize),

    /// Malformed ladder parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
