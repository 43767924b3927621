//! Linear maps between qubit registers.

use crate::numeric::{
    self, apply_gate, frobenius_norm, qubits_for_len, renyi2_entropy, singular_values, vn_entropy,
    ComplexMatrix, NumericError, StateVector, C64,
};
use std::ops::Mul;

/// A `2^n_out × 2^n_in` complex matrix. Gates, Kraus operators and the
/// operator `N̂` induced by a measured pattern all live here.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    matrix: ComplexMatrix,
    n_in: usize,
    n_out: usize,
}

impl LinearMap {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, NumericError> {
        let n_out = qubits_for_len(matrix.nrows())?;
        let n_in = qubits_for_len(matrix.ncols())?;
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        Ok(Self { matrix, n_in, n_out })
    }

    /// Wraps a matrix the caller knows has power-of-two finite dimensions.
    pub(crate) fn from_matrix(matrix: ComplexMatrix) -> Self {
        Self::new(matrix).expect("power-of-two finite matrix")
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::from_matrix(ComplexMatrix::identity(1 << n_qubits, 1 << n_qubits))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn is_square(&self) -> bool {
        self.n_in == self.n_out
    }

    pub fn dagger(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), n_in: self.n_out, n_out: self.n_in }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self { matrix: &self.matrix * factor, ..*self }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(&self.matrix)
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &LinearMap) -> Result<Self, NumericError> {
        if self.n_in != other.n_out {
            return Err(NumericError::DimensionMismatch { expected: self.n_in, found: other.n_out });
        }
        Ok(Self::from_matrix(&self.matrix * &other.matrix))
    }

    /// Applies the map to a state without renormalizing.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector, NumericError> {
        if self.is_square() {
            let targets: Vec<usize> = (0..self.n_in).collect();
            return apply_gate(state, &self.matrix, &targets);
        }
        if state.dim() != self.matrix.ncols() {
            return Err(NumericError::DimensionMismatch { expected: self.matrix.ncols(), found: state.dim() });
        }
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        let out = &self.matrix * v;
        StateVector::raw(out.iter().cloned().collect())
    }

    /// `⟨ψ|A†A|ψ⟩` for a normalized `ψ`.
    pub fn expectation_dagger_self(&self, state: &StateVector) -> Result<f64, NumericError> {
        Ok(self.apply(state)?.norm_sq() / state.norm_sq())
    }

    pub fn singular_values(&self) -> Vec<f64> {
        singular_values(&self.matrix)
    }

    /// Singular values rescaled so their squares sum to one.
    pub fn operator_spectrum(&self) -> Result<Vec<f64>, NumericError> {
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return Err(NumericError::Zero);
        }
        Ok(self.singular_values().into_iter().map(|s| s / norm).collect())
    }

    /// Operator entanglement `S_op` in nats.
    pub fn operator_entropy(&self) -> Result<f64, NumericError> {
        vn_entropy(&self.operator_spectrum()?)
    }

    pub fn operator_renyi2(&self) -> Result<f64, NumericError> {
        renyi2_entropy(&self.operator_spectrum()?)
    }

    pub fn equal_up_to_scalar(&self, other: &LinearMap, tol: f64) -> Result<bool, NumericError> {
        numeric::equal_up_to_scalar(&self.matrix, &other.matrix, tol)
    }

    pub fn deviation_from(&self, other: &LinearMap) -> Result<f64, NumericError> {
        numeric::scalar_deviation(&self.matrix, &other.matrix)
    }
}

impl Mul for &LinearMap {
    type Output = LinearMap;

    fn mul(self, rhs: &LinearMap) -> LinearMap {
        self.compose(rhs).expect("compatible dimensions")
    }
}

impl From<LinearMap> for ComplexMatrix {
    fn from(m: LinearMap) -> Self {
        m.matrix
    }
}
