//! Error type for solver configuration, operator construction, and evolution.

use thiserror::Error;

/// Errors produced while validating a configuration, building discrete
/// operators, or evolving the system.
#[derive(Error, Debug)]
pub enum SolverError {
    /// The configuration is inconsistent or outside the supported regime.
    #[error("configuration error: {0}")]
    Config(String),

    /// The angular quadrature failed to converge at the requested band
    /// limit; the operator matrices are unreliable.
    #[error("quadrature non-convergence: {0}")]
    Quadrature(String),

    /// A non-finite value appeared in the state during evolution.
    #[error("numeric blow-up at step {step} (t = {time}): {detail}")]
    BlowUp {
        /// Index of the offending time step.
        step: usize,
        /// Evolution time at which the non-finite value was detected.
        time: f64,
        /// Which array went non-finite.
        detail: String,
    },

    /// Writing an output artifact failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
