//! Dense complex linear algebra shared by every other module.
//!
//! Qubit `k` is bit `k` of a basis-state index, so qubit 0 is the least
//! significant bit. A matrix built as [`tensor_product`]`(a, b)` therefore acts
//! with `a` on the higher qubit and `b` on the lower one; `Z ⊗ I` flips the
//! sign of every index whose bit 1 is set.
//!
//! Entropies are in nats.

mod entropy;
mod linalg;
mod schmidt;
mod state;
pub mod std_gates;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub use entropy::{renyi2_entropy, vn_entropy};
pub use linalg::{
    apply_gate, best_scalar, dagger, equal_up_to_scalar, frobenius_norm, is_hermitian,
    is_unitary, matrix_sqrt_psd, max_eigenvalue_psd, scalar_deviation, singular_values,
    tensor_product,
};
pub use schmidt::{schmidt, SchmidtData};
pub use state::StateVector;
pub(crate) use state::norm_sq;

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;

/// Largest matrix dimension per axis accepted by [`tensor_product`].
pub const MAX_AXIS_DIM: usize = 1 << 16;
/// Qubit cap for dense statevectors.
pub const DEFAULT_MAX_QUBITS: usize = 16;
/// Schmidt coefficients below this are dropped.
pub const SCHMIDT_CUTOFF: f64 = 1e-12;
/// Default tolerance for up-to-scalar comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Normalization slack for [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum NumericError {
    #[error("dimension {dim} exceeds the per-axis cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },
    #[error("{n} qubits exceed the cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {0} listed twice")]
    DuplicateQubit(usize),
    #[error("bipartition must be a proper nonempty subset")]
    InvalidPartition,
    #[error("coefficients are not normalized (sum of squares {0})")]
    Unnormalized(f64),
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch((usize, usize), (usize, usize)),
    #[error("zero matrix or vector")]
    Zero,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix has eigenvalue {0} below the PSD tolerance")]
    NegativeEigenvalue(f64),
    #[error("non-finite entry")]
    NonFinite,
}

pub type Result<T, E = NumericError> = std::result::Result<T, E>;

/// `log2` of a power-of-two length.
pub(crate) fn qubits_for_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(NumericError::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
