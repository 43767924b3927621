//! ZX diagrams with exact tensor semantics, a small sound rewrite system,
//! formal sums of diagrams and equivalence checks.
//!
//! Green spider with phase `α`: `|0…0⟩⟨0…0| + e^{iα}|1…1⟩⟨1…1|`. Red spider
//! with phase `β`: `|+…+⟩⟨+…+| + e^{iβ}|−…−⟩⟨−…−|`. A Hadamard wire carries
//! the Hadamard matrix. Scalars are tracked exactly.

mod builders;
mod diagram;
mod random;
mod rewrite;
mod sum;
mod tensor;
mod text;

use crate::mbqc::MbqcError;
use crate::numeric::{best_scalar, scalar_deviation, ComplexMatrix, NumericError, C64};
use std::f64::consts::TAU;
use thiserror::Error;

pub use builders::{
    bubble_diagram, cx_diagram, fig7_diagram, pattern_to_zx, pattern_to_zx_sum, phase_gate, swap_diagram,
    teleport_diagram,
};
pub use diagram::{Edge, EdgeId, EdgeKind, Vertex, VertexId, VertexKind, ZxDiagram};
pub use random::random_diagram;
pub use rewrite::{
    applicable, apply, cancel_hadamard_pair, color_change, fuse_spiders, remove_identity, remove_self_loop,
    simplify, Rewrite,
};
pub use sum::{measurement_effect, measurement_effect_sum, red_measurement_expand, spider, xz_measurement_effect, DiagramSum};
pub use text::{ZxFile, ZxParseError};

/// Default cap on the number of wires contracted by `to_matrix`.
pub const DEFAULT_MAX_WIRES: usize = 20;

/// Phases closer than this to a multiple of 2π count as zero.
pub const PHASE_TOL: f64 = 1e-12;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ZxError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Pattern(#[from] MbqcError),
    #[error("{wires} wires exceed the contraction cap of {cap}")]
    TooManyWires { wires: usize, cap: usize },
    #[error("intermediate tensor over {0} wires is too large")]
    ContractionTooLarge(usize),
    #[error("boundary {0} does not have exactly one wire")]
    DanglingWire(VertexId),
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("boundary signatures differ: {left:?} vs {right:?}")]
    SignatureMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("no edge {0}")]
    NoSuchEdge(EdgeId),
    #[error("no vertex {0}")]
    NoSuchVertex(VertexId),
    #[error("rewrite not applicable: {0}")]
    NotApplicable(String),
}

pub(crate) fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(TAU);
    if w >= TAU || phase_is_zero(w) {
        0.0
    } else {
        w
    }
}

pub(crate) fn phase_is_zero(p: f64) -> bool {
    let w = p.rem_euclid(TAU);
    w < PHASE_TOL || TAU - w < PHASE_TOL
}

/// Anything with a matrix and a boundary signature `(inputs, outputs)`.
pub trait ZxTerm {
    fn signature(&self) -> (usize, usize);
    fn matrix(&self) -> Result<ComplexMatrix, ZxError>;
}

impl ZxTerm for ZxDiagram {
    fn signature(&self) -> (usize, usize) {
        (self.n_inputs(), self.n_outputs())
    }
    fn matrix(&self) -> Result<ComplexMatrix, ZxError> {
        self.to_matrix()
    }
}

impl ZxTerm for DiagramSum {
    fn signature(&self) -> (usize, usize) {
        (self.n_inputs(), self.n_outputs())
    }
    fn matrix(&self) -> Result<ComplexMatrix, ZxError> {
        self.to_matrix()
    }
}

impl ZxTerm for ComplexMatrix {
    fn signature(&self) -> (usize, usize) {
        let q = |n: usize| if n.is_power_of_two() { n.trailing_zeros() as usize } else { usize::MAX };
        (q(self.ncols()), q(self.nrows()))
    }
    fn matrix(&self) -> Result<ComplexMatrix, ZxError> {
        Ok(self.clone())
    }
}

impl ZxTerm for crate::LinearMap {
    fn signature(&self) -> (usize, usize) {
        (self.n_in(), self.n_out())
    }
    fn matrix(&self) -> Result<ComplexMatrix, ZxError> {
        Ok(self.matrix().clone())
    }
}

/// Outcome of an equivalence check.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Scalar `z` minimizing `‖a − z·b‖`.
    pub ratio: C64,
    /// `‖a − z·b‖ / ‖a‖` at the best `z`.
    pub deviation: f64,
}

/// Compares two terms up to a nonzero scalar.
pub fn verify_equiv(a: &dyn ZxTerm, b: &dyn ZxTerm, tol: f64) -> Result<Equivalence, ZxError> {
    if a.signature() != b.signature() {
        return Err(ZxError::SignatureMismatch { left: a.signature(), right: b.signature() });
    }
    let (ma, mb) = (a.matrix()?, b.matrix()?);
    let equivalent = crate::numeric::equal_up_to_scalar(&ma, &mb, tol)?;
    Ok(Equivalence { equivalent, ratio: best_scalar(&ma, &mb)?, deviation: scalar_deviation(&ma, &mb)? })
}
