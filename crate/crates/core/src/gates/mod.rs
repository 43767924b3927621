//! Closed-form nonunitary gates, POVM conventions and success-probability bounds.
//!
//! `M₀(θ) = diag(cos θ/2, sin θ/2)` and `M₁(θ) = diag(sin θ/2, −cos θ/2)`; with
//! `a = cot(θ/2)` these equal `diag(a, 1)/√(1+a²)` and `diag(1, −a)/√(1+a²)`.
//! A tilt `ε` from the xy plane is `θ = π/2 − ε`.

mod patterns;

use crate::linear_map::LinearMap;
use crate::numeric::{
    c, is_hermitian, matrix_sqrt_psd, max_eigenvalue_psd, std_gates, ComplexMatrix, NumericError, StateVector,
    C64,
};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use thiserror::Error;

pub use patterns::{pattern_fig1c, pattern_fig1d, pattern_fig1e_xy, pattern_fig1e_xz, FIG1E_TILTED_NODE};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GateError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("|c| = {0} exceeds 1")]
    CoefficientTooLarge(f64),
    #[error("map must be square")]
    NotSquare,
    #[error("POVM normalization needs the full outcome family")]
    PovmNeedsFamily,
    #[error("outcome family does not sum to a multiple of the identity")]
    NotAPovmFamily,
    #[error("a must be finite and nonzero, got {0}")]
    InvalidA(f64),
}

/// `ε`, the polar angle `θ = π/2 − ε` and `a = cot(θ/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateParams {
    pub epsilon: f64,
    pub theta: f64,
    pub a: f64,
}

impl GateParams {
    pub fn from_epsilon(epsilon: f64) -> Self {
        let theta = FRAC_PI_2 - epsilon;
        Self { epsilon, theta, a: a_of_theta(theta) }
    }

    pub fn from_theta(theta: f64) -> Self {
        Self { epsilon: FRAC_PI_2 - theta, theta, a: a_of_theta(theta) }
    }

    /// Polar angle realizing `a`; negative `a` lands in `(π, 2π)`.
    pub fn from_a(a: f64) -> Result<Self, GateError> {
        if !a.is_finite() || a == 0.0 {
            return Err(GateError::InvalidA(a));
        }
        let half = (1.0 / a).atan();
        let theta = if a > 0.0 { 2.0 * half } else { 2.0 * (half + std::f64::consts::PI) };
        Ok(Self::from_theta(theta))
    }
}

/// `a = cot(θ/2)`.
pub fn a_of_theta(theta: f64) -> f64 {
    let (s, c) = (theta / 2.0).sin_cos();
    c / s
}

/// `a(ε) = cos ε / (1 − sin ε)`.
pub fn a_of_eps(epsilon: f64) -> f64 {
    epsilon.cos() / (1.0 - epsilon.sin())
}

/// Trigonometric POVM element for outcome `s` at polar angle `theta`.
pub fn m_povm(theta: f64, s: u8) -> LinearMap {
    let (sh, ch) = (theta / 2.0).sin_cos();
    let d = if s == 0 { [ch, sh] } else { [sh, -ch] };
    LinearMap::from_matrix(std_gates::diag(&[c(d[0], 0.0), c(d[1], 0.0)]))
}

/// POVM element in the `a` form; any finite nonzero `a` is allowed.
pub fn m_povm_a(a: f64, s: u8) -> Result<LinearMap, GateError> {
    if !a.is_finite() || a == 0.0 {
        return Err(GateError::InvalidA(a));
    }
    let n = (1.0 + a * a).sqrt().recip();
    let d = if s == 0 { [a * n, n] } else { [n, -a * n] };
    Ok(LinearMap::from_matrix(std_gates::diag(&[c(d[0], 0.0), c(d[1], 0.0)])))
}

fn pow(m: ComplexMatrix, s: u8) -> ComplexMatrix {
    if s == 0 {
        ComplexMatrix::identity(m.nrows(), m.ncols())
    } else {
        m
    }
}

fn half_sqrt2() -> C64 {
    c(FRAC_1_SQRT_2, 0.0)
}

/// `(1/√2)·H·M_{s₂}·H·Z^{s₁}`.
pub fn gate_fig1c(epsilon: f64, s1: u8, s2: u8) -> LinearMap {
    let h = std_gates::hadamard();
    let m = m_povm(FRAC_PI_2 - epsilon, s2).into_matrix();
    LinearMap::from_matrix(&h * m * &h * pow(std_gates::pauli_z(), s1) * half_sqrt2())
}

/// `(1/√2)·X^{s₂}·M_{s₁}`.
pub fn gate_fig1d(epsilon: f64, s1: u8, s2: u8) -> LinearMap {
    let m = m_povm(FRAC_PI_2 - epsilon, s1).into_matrix();
    LinearMap::from_matrix(pow(std_gates::pauli_x(), s2) * m * half_sqrt2())
}

/// `(cos(ε'/2)·I − sin(ε'/2)·X₁X₂)·SWAP` with `ε' = ε + sπ`, unit Frobenius norm.
pub fn gate_fig1e(epsilon: f64, s: u8) -> LinearMap {
    let e = epsilon + f64::from(s) * std::f64::consts::PI;
    let (sh, ch) = (e / 2.0).sin_cos();
    let core = ComplexMatrix::identity(4, 4) * c(ch, 0.0) - std_gates::xx() * c(sh, 0.0);
    // ‖core‖_F = 2
    LinearMap::from_matrix(core * std_gates::swap() * c(0.5, 0.0))
}

/// `(cos(φ/2)·I − i sin(φ/2)·X₁X₂)·SWAP`.
pub fn unitary_xx(phi: f64) -> LinearMap {
    let (sh, ch) = (phi / 2.0).sin_cos();
    let core = ComplexMatrix::identity(4, 4) * c(ch, 0.0) - std_gates::xx() * c(0.0, sh);
    LinearMap::from_matrix(core * std_gates::swap())
}

/// `X^{s₂}·Z^{s₁}`.
pub fn byproduct(s1: u8, s2: u8) -> LinearMap {
    LinearMap::from_matrix(pow(std_gates::pauli_x(), s2) * pow(std_gates::pauli_z(), s1))
}

/// `Ñ = n / σ_max(n)`, `m0 = c·Ñ`, `m1 = √(I − m0†m0)`.
pub fn povm_pair_for_target(n: &LinearMap, coeff: C64) -> Result<(LinearMap, LinearMap), GateError> {
    if coeff.norm() > 1.0 + 1e-12 {
        return Err(GateError::CoefficientTooLarge(coeff.norm()));
    }
    if !n.is_square() {
        return Err(GateError::NotSquare);
    }
    let top = n.singular_values().first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Err(NumericError::Zero.into());
    }
    let m0 = n.matrix() * (coeff / top);
    let dim = m0.nrows();
    let rest = ComplexMatrix::identity(dim, dim) - m0.adjoint() * &m0;
    let m1 = matrix_sqrt_psd(&hermitize(&rest))?;
    Ok((LinearMap::from_matrix(m0), LinearMap::from_matrix(m1)))
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

/// Largest attainable success probability `⟨N†N⟩ / max eig(N†N)`.
pub fn p_max(n: &LinearMap, psi: &StateVector) -> Result<f64, GateError> {
    let ntn = hermitize(&(n.matrix().adjoint() * n.matrix()));
    let top = max_eigenvalue_psd(&ntn)?;
    if top == 0.0 {
        return Err(NumericError::Zero.into());
    }
    Ok(n.apply(psi)?.norm_sq() / psi.norm_sq() / top)
}

/// The three normalizations in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormConvention {
    /// `Σ_s M_s†M_s = I` over an outcome family.
    Povm,
    /// `Σ μ² = 1`.
    UnitFrobenius,
    /// Largest singular value 1.
    UnitMaxEig,
}

/// Positive rescaling of a single map. `Povm` needs the family, see
/// [`renormalize_family`].
pub fn renormalize(map: &LinearMap, convention: NormConvention) -> Result<LinearMap, GateError> {
    let scale = match convention {
        NormConvention::Povm => return Err(GateError::PovmNeedsFamily),
        NormConvention::UnitFrobenius => map.frobenius_norm(),
        NormConvention::UnitMaxEig => map.singular_values().first().copied().unwrap_or(0.0),
    };
    if scale == 0.0 {
        return Err(NumericError::Zero.into());
    }
    Ok(map.scale(c(scale.recip(), 0.0)))
}

/// Rescales every member of an outcome family by one common positive factor.
/// For `Povm` the family must satisfy `Σ M†M ∝ I` within `1e-10`.
pub fn renormalize_family(family: &[LinearMap], convention: NormConvention) -> Result<Vec<LinearMap>, GateError> {
    if convention != NormConvention::Povm {
        return family.iter().map(|m| renormalize(m, convention)).collect();
    }
    let first = family.first().ok_or(GateError::NotAPovmFamily)?;
    let dim = first.matrix().ncols();
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for m in family {
        if m.matrix().ncols() != dim {
            return Err(GateError::NotAPovmFamily);
        }
        sum += m.matrix().adjoint() * m.matrix();
    }
    let lambda = sum.trace().re / dim as f64;
    if lambda <= 0.0 || !is_hermitian(&sum, 1e-10) {
        return Err(GateError::NotAPovmFamily);
    }
    if (&sum - ComplexMatrix::identity(dim, dim) * c(lambda, 0.0)).norm() > 1e-10 * lambda.max(1.0) {
        return Err(GateError::NotAPovmFamily);
    }
    let f = c(lambda.sqrt().recip(), 0.0);
    Ok(family.iter().map(|m| m.scale(f)).collect())
}

/// `cos(β/2)|0⟩ + e^{iφ} sin(β/2)|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochState {
    pub beta: f64,
    pub varphi: f64,
}

impl BlochState {
    pub fn new(beta: f64, varphi: f64) -> Self {
        Self { beta, varphi }
    }

    pub fn state(&self) -> StateVector {
        StateVector::bloch(self.beta, self.varphi)
    }

    /// `cos²(β/2) + a⁻² sin²(β/2)`, the best success probability of `M₀(a)`.
    pub fn p_max_m0(&self, a: f64) -> f64 {
        let (s, c) = (self.beta / 2.0).sin_cos();
        c * c + s * s / (a * a)
    }
}
