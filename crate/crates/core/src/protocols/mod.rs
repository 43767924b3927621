//! Adaptive protocols built from the tilted 3-chain gate: the monitor-and-correct
//! feedback scheme and imaginary-time evolution by repeated application.

mod feedback;
mod ite;

pub use feedback::*;
pub use ite::*;

use crate::mbqc::MbqcError;
use crate::numeric::NumericError;
use thiserror::Error;

/// `|a − 1|` below this makes the correction schedule degenerate.
pub const DEGENERATE_A_TOL: f64 = 1e-6;

/// Longest feedback tree that is simulated.
pub const MAX_ATTEMPTS: usize = 64;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ProtocolError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Mbqc(#[from] MbqcError),
    #[error("a = {0} is degenerate: the gate is already unitary and there is nothing to correct")]
    DegenerateA(f64),
    #[error("a must be positive and finite, got {0}")]
    InvalidA(f64),
    #[error("need at least one attempt")]
    NoAttempts,
    #[error("{n} attempts exceeds the cap of {cap}")]
    TooManyAttempts { n: usize, cap: usize },
    #[error("input must be a single qubit, got {0} qubits")]
    NotSingleQubit(usize),
}

/// Rejects `a` that is nonpositive, non-finite or within [`DEGENERATE_A_TOL`] of 1.
pub fn check_feedback_a(a: f64) -> Result<(), ProtocolError> {
    if !a.is_finite() || a <= 0.0 {
        return Err(ProtocolError::InvalidA(a));
    }
    if (a - 1.0).abs() < DEGENERATE_A_TOL {
        return Err(ProtocolError::DegenerateA(a));
    }
    Ok(())
}
