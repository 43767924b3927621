use super::{choi_state, entropy_from_purity, mean_std, EstimateReport, EstimatorError, Method};
use crate::linear_map::LinearMap;
use crate::numeric::{apply_gate, std_gates, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

/// Batches used for the standard error.
const BATCHES: u64 = 20;

/// Born probability that the destructive two-copy test (CNOT between the two
/// output qubits, `H` on the first, measure both) reads `11`. Equals
/// `(1 − Tr ρ²)/2` for the output marginal `ρ`.
pub fn swap_test_p11(n: &LinearMap) -> Result<f64, EstimatorError> {
    if n.n_in() != 1 || n.n_out() != 1 {
        return Err(EstimatorError::NotSingleQubit(n.n_out()));
    }
    // copy A on qubits 0 (reference) and 1 (output), copy B on 2 and 3
    let choi = choi_state(n)?;
    let two = StateVector::concat(&choi, &choi);
    let s = apply_gate(&two, &std_gates::cnot(0, 1), &[1, 3])?;
    let s = apply_gate(&s, &std_gates::hadamard(), &[1])?;
    Ok(s.amplitudes().iter().enumerate().filter(|(i, _)| i & 0b1010 == 0b1010).map(|(_, z)| z.norm_sqr()).sum())
}

/// Purity `1 − 2·P(11)` from `shots` sampled two-copy measurements, turned into
/// `−ln(purity)`. The standard error is the spread over 20 equal batches.
pub fn swap_test_renyi2(n: &LinearMap, shots: u64, seed: u64) -> Result<EstimateReport, EstimatorError> {
    if shots < BATCHES {
        return Err(EstimatorError::Config(format!("need at least {BATCHES} shots")));
    }
    let p11 = swap_test_p11(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0u64;
    let mut batch_purity = Vec::with_capacity(BATCHES as usize);
    for b in 0..BATCHES {
        let size = shots / BATCHES + u64::from(b < shots % BATCHES);
        let hits = Binomial::new(size, p11.clamp(0.0, 1.0)).expect("valid binomial").sample(&mut rng);
        total += hits;
        batch_purity.push(1.0 - 2.0 * hits as f64 / size as f64);
    }
    let purity = 1.0 - 2.0 * total as f64 / shots as f64;
    let value = entropy_from_purity(purity)?;
    let (_, spread) = mean_std(&batch_purity);
    let std_error = spread / (BATCHES as f64).sqrt() / purity;
    Ok(EstimateReport { value, std_error, std_dev: 0.0, method: Method::SwapTest, repeats: 1 })
}
