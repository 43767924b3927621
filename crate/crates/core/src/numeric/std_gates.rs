//! Fixed gate matrices in the crate's little-endian qubit convention.

use super::{c, tensor_product, ComplexMatrix, C64};
use std::f64::consts::FRAC_1_SQRT_2;

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1., 0.), c(-1., 0.)]))
}

pub fn hadamard() -> ComplexMatrix {
    let h = c(FRAC_1_SQRT_2, 0.);
    ComplexMatrix::from_row_slice(2, 2, &[h, h, h, -h])
}

pub fn phase(angle: f64) -> ComplexMatrix {
    diag(&[c(1., 0.), C64::from_polar(1.0, angle)])
}

pub fn diag(entries: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

pub fn cz() -> ComplexMatrix {
    diag(&[c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)])
}

pub fn swap() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m[(r, col)] = c(1., 0.);
    }
    m
}

/// CNOT on a two-qubit register; `control` and `target` are 0 or 1.
pub fn cnot(control: usize, target: usize) -> ComplexMatrix {
    assert!(control < 2 && target < 2 && control != target);
    let mut m = ComplexMatrix::zeros(4, 4);
    for col in 0..4usize {
        let row = if (col >> control) & 1 == 1 { col ^ (1 << target) } else { col };
        m[(row, col)] = c(1., 0.);
    }
    m
}

/// `X ⊗ X` on two qubits.
pub fn xx() -> ComplexMatrix {
    tensor_product(&pauli_x(), &pauli_x()).expect("2x2 factors")
}
