//! Cluster states, measurement patterns and their induced operators.
//!
//! A pattern's nodes all start in `|+⟩` except inputs, which carry the input
//! state; CZ acts on every edge; every non-output node is then measured. The
//! Kraus operator of an outcome string maps the input register (input nodes in
//! ascending id) to the output register (output nodes in ascending id).

mod basis;
mod engine;
mod file;
mod pattern;
mod random;

use crate::numeric::NumericError;
use thiserror::Error;

pub use basis::MeasurementBasis;
pub use engine::{
    all_outcomes, build_cluster_state, extract_kraus, inject_input, measure_qubit, naive_flip_fidelity,
    operator_from_choi, pattern_operator_entropy, run_pattern, MeasurePolicy, OutcomePolicy, RunRecord,
    Simulator, ZERO_PROBABILITY,
};
pub use file::{PatternFile, PatternFileError};
pub use pattern::{MeasurementPattern, Role};
pub use random::{random_basis, random_outcomes, random_pattern};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MbqcError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("invalid pattern: {0}")]
    Invalid(String),
    #[error("expected {expected} input qubits, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("expected {expected} outcome bits, found {found}")]
    OutcomeLength { expected: usize, found: usize },
    #[error("outcome bit must be 0 or 1, found {0}")]
    InvalidBit(u8),
    #[error("outcome on node {node} has probability {probability:e}")]
    ImpossibleBranch { node: usize, probability: f64 },
    #[error("{n} qubits exceed the cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },
}
