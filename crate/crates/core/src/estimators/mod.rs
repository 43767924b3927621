//! Second Rényi operator entanglement of a single-qubit map: exact, from a
//! simulated two-copy SWAP test, and from randomized measurements on the Choi
//! state (Hamming-distance formula and classical shadows).

mod randomized;
mod swap;
mod unitary;

pub use randomized::*;
pub use swap::*;
pub use unitary::*;

use crate::linear_map::LinearMap;
use crate::numeric::{ComplexMatrix, NumericError, StateVector, C64};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum EstimatorError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("map must be square, got {n_out}x{n_in} qubits")]
    NotSquare { n_in: usize, n_out: usize },
    #[error("estimator needs a single-qubit output, got {0} qubits")]
    NotSingleQubit(usize),
    #[error("purity estimate {0} is not positive; increase shots or unitaries")]
    NonPositivePurity(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    SwapTest,
    Hamming,
    HammingPooled,
    Shadow,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::SwapTest => "swap",
            Method::Hamming => "hamming",
            Method::HammingPooled => "hamming-pooled",
            Method::Shadow => "shadow",
        }
    }
}

/// An entropy estimate in nats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateReport {
    pub value: f64,
    /// Standard error of `value`; never negative.
    pub std_error: f64,
    /// Spread of the individual repeats (0 for a single run).
    pub std_dev: f64,
    pub method: Method,
    pub repeats: usize,
}

/// Normalized `(I ⊗ N)|Φ⁺⟩`: reference on the low qubits, output on the high
/// ones, amplitude `N[o, r]` at index `r + 2^{n}·o`.
pub fn choi_state(n: &LinearMap) -> Result<StateVector, EstimatorError> {
    if !n.is_square() {
        return Err(EstimatorError::NotSquare { n_in: n.n_in(), n_out: n.n_out() });
    }
    let m = n.matrix();
    let dim = m.ncols();
    let mut amps = vec![C64::new(0.0, 0.0); dim * dim];
    for o in 0..dim {
        for r in 0..dim {
            amps[r + dim * o] = m[(o, r)];
        }
    }
    Ok(StateVector::from_unnormalized(amps)?)
}

/// Reduced density matrix of the high `n_qubits − n_low` qubits.
pub fn high_marginal(state: &StateVector, n_low: usize) -> ComplexMatrix {
    let low = 1usize << n_low;
    let high = state.dim() / low;
    let a = state.amplitudes();
    ComplexMatrix::from_fn(high, high, |i, j| (0..low).map(|r| a[r + low * i] * a[r + low * j].conj()).sum())
}

/// Reduced state of the Choi state's output qubit.
pub(crate) fn output_marginal(n: &LinearMap) -> Result<ComplexMatrix, EstimatorError> {
    if n.n_out() != 1 {
        return Err(EstimatorError::NotSingleQubit(n.n_out()));
    }
    let choi = choi_state(n)?;
    Ok(high_marginal(&choi, n.n_in()))
}

/// `−ln Σ μ⁴` of the unit-Frobenius singular values.
pub fn exact_renyi2_op(n: &LinearMap) -> Result<f64, EstimatorError> {
    Ok(n.operator_renyi2()?)
}

pub(crate) fn entropy_from_purity(purity: f64) -> Result<f64, EstimatorError> {
    if purity <= 0.0 || !purity.is_finite() {
        return Err(EstimatorError::NonPositivePurity(purity));
    }
    Ok(-purity.ln())
}

/// Seed of repeat `r`, derived from its own ChaCha stream.
pub fn sub_seed(seed: u64, r: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r + 1);
    rng.next_u64()
}

/// Runs `run(sub_seed(seed, r))` for `r < repeats` in parallel and reports the
/// mean and spread of the values in repeat order.
pub fn repeat_estimate<F>(repeats: usize, seed: u64, method: Method, run: F) -> Result<EstimateReport, EstimatorError>
where
    F: Fn(u64) -> Result<f64, EstimatorError> + Sync,
{
    if repeats == 0 {
        return Err(EstimatorError::Config("repeats must be at least 1".into()));
    }
    let values = (0..repeats as u64)
        .into_par_iter()
        .map(|r| run(sub_seed(seed, r)))
        .collect::<Result<Vec<f64>, _>>()?;
    let (mean, std_dev) = mean_std(&values);
    Ok(EstimateReport { value: mean, std_error: std_dev / (repeats as f64).sqrt(), std_dev, method, repeats })
}

/// Mean and sample standard deviation (0 for fewer than two values).
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
