use super::{
    ComplexMatrix, NumericError, Result, StateVector, C64, MAX_AXIS_DIM,
};

const HERMITIAN_TOL: f64 = 1e-10;
const PSD_CLAMP: f64 = 1e-8;

/// Kronecker product `a ⊗ b`; `b` occupies the low qubits.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (rows, cols) = (a.nrows() * b.nrows(), a.ncols() * b.ncols());
    for dim in [rows, cols] {
        if dim > MAX_AXIS_DIM {
            return Err(NumericError::DimensionOverflow { dim, cap: MAX_AXIS_DIM });
        }
    }
    Ok(a.kronecker(b))
}

pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Applies `gate` to `targets`; bit `j` of the gate's index is qubit `targets[j]`.
pub fn apply_gate(state: &StateVector, gate: &ComplexMatrix, targets: &[usize]) -> Result<StateVector> {
    let mut amps = state.amplitudes().to_vec();
    apply_gate_in_place(&mut amps, state.n_qubits(), gate, targets)?;
    StateVector::raw(amps)
}

pub(crate) fn apply_gate_in_place(
    amps: &mut [C64],
    n_qubits: usize,
    gate: &ComplexMatrix,
    targets: &[usize],
) -> Result<()> {
    let k = targets.len();
    let dim = 1usize << k;
    if gate.nrows() != gate.ncols() {
        return Err(NumericError::ShapeMismatch(gate.shape(), (dim, dim)));
    }
    if gate.nrows() != dim {
        return Err(NumericError::DimensionMismatch { expected: dim, found: gate.nrows() });
    }
    let mut mask = 0usize;
    for &t in targets {
        if t >= n_qubits {
            return Err(NumericError::QubitOutOfRange { qubit: t, n_qubits });
        }
        if mask & (1 << t) != 0 {
            return Err(NumericError::DuplicateQubit(t));
        }
        mask |= 1 << t;
    }
    let offsets: Vec<usize> = (0..dim)
        .map(|j| targets.iter().enumerate().map(|(b, &t)| ((j >> b) & 1) << t).sum())
        .collect();
    let mut buf = vec![C64::new(0.0, 0.0); dim];
    for base in (0..amps.len()).filter(|i| i & mask == 0) {
        for (j, off) in offsets.iter().enumerate() {
            buf[j] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            amps[base | off] = (0..dim).map(|cidx| gate[(r, cidx)] * buf[cidx]).sum();
        }
    }
    Ok(())
}

fn check_same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(NumericError::ShapeMismatch(a.shape(), b.shape()));
    }
    Ok(())
}

fn frob_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Cauchy–Schwarz test `|⟨a,b⟩|² ≥ (1 − tol)⟨a,a⟩⟨b,b⟩` on the Frobenius product.
pub fn equal_up_to_scalar(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    check_same_shape(a, b)?;
    let (aa, bb) = (frob_inner(a, a).re, frob_inner(b, b).re);
    if aa == 0.0 || bb == 0.0 {
        return Err(NumericError::Zero);
    }
    Ok(frob_inner(a, b).norm_sqr() >= (1.0 - tol) * aa * bb)
}

/// The complex `c` minimizing `‖a − c·b‖`.
pub fn best_scalar(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    check_same_shape(a, b)?;
    let bb = frob_inner(b, b).re;
    if bb == 0.0 {
        return Err(NumericError::Zero);
    }
    Ok(frob_inner(b, a) / bb)
}

/// `min_c ‖a − c·b‖ / ‖a‖`. Unlike a cosine test this keeps full precision
/// near zero.
pub fn scalar_deviation(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let c = best_scalar(a, b)?;
    let na = frobenius_norm(a);
    if na == 0.0 {
        return Err(NumericError::Zero);
    }
    Ok(frobenius_norm(&(a - b * c)) / na)
}

pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    (m - m.adjoint()).iter().all(|z| z.norm() <= tol * scale)
}

pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    m.nrows() == m.ncols()
        && (m.adjoint() * m - ComplexMatrix::identity(m.nrows(), m.ncols()))
            .iter()
            .all(|z| z.norm() <= tol)
}

fn hermitian_eigen(m: &ComplexMatrix) -> Result<nalgebra::SymmetricEigen<C64, nalgebra::Dyn>> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(NumericError::NonFinite);
    }
    if !is_hermitian(m, HERMITIAN_TOL) {
        return Err(NumericError::NotHermitian);
    }
    // symmetrize away roundoff before the eigensolver sees it
    let sym = (m + m.adjoint()).scale(0.5);
    Ok(sym.symmetric_eigen())
}

/// Hermitian PSD square root through the eigendecomposition.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    let mut roots = Vec::with_capacity(eig.eigenvalues.len());
    for &lambda in eig.eigenvalues.iter() {
        if lambda < -PSD_CLAMP {
            return Err(NumericError::NegativeEigenvalue(lambda));
        }
        roots.push(C64::new(lambda.max(0.0).sqrt(), 0.0));
    }
    let d = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(roots));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

pub fn max_eigenvalue_psd(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigen(m)?;
    Ok(eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
}

/// Singular values, largest first.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}
