//! Error type shared across the library.

use thiserror::Error;

/// Library-wide error enumeration.
///
/// The CLI maps these onto exit codes: configuration/validation problems
/// give 2, numerical failures 3, capacity overruns 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A requested lattice or state does not fit in addressable memory.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// Operation applied outside its validity domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested model is not defined for the given input.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    /// No root of the closed-form dressed potential matched the two-atom
    /// ladder eigenvalue within tolerance.
    #[error(
        "numerical branch selection failed for the exact dressed potential at \
         r = {r_m:.6e} m (delta = {delta_rad:.6e} rad/s, omega = {omega_rad:.6e} rad/s)"
    )]
    NumericalBranch {
        r_m: f64,
        delta_rad: f64,
        omega_rad: f64,
    },

    /// Mean spin length vanished; the state is over-wound and the squeezing
    /// parameter is undefined.
    #[error("degenerate state: mean spin length is zero")]
    DegenerateState,

    /// Quantum-defect data is missing a requested series.
    #[error("quantum defect data error: {0}")]
    Data(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;
