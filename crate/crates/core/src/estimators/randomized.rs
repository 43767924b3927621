use super::{
    entropy_from_purity, mean_std, output_marginal, repeat_estimate, sample_unitary, Ensemble, EstimateReport,
    EstimatorError, Method,
};
use crate::linear_map::LinearMap;
use crate::numeric::{std_gates, ComplexMatrix, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

/// Randomized-measurement settings: `M` unitaries, `K` shots each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShadowConfig {
    pub n_unitaries: usize,
    pub shots_per_unitary: u64,
    pub ensemble: Ensemble,
    pub seed: u64,
}

impl ShadowConfig {
    pub fn new(n_unitaries: usize, shots_per_unitary: u64, ensemble: Ensemble, seed: u64) -> Result<Self, EstimatorError> {
        let cfg = Self { n_unitaries, shots_per_unitary, ensemble, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `M = 40`, `K = 500`, Haar.
    pub fn standard(seed: u64) -> Self {
        Self { n_unitaries: 40, shots_per_unitary: 500, ensemble: Ensemble::Haar, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    fn validate(&self) -> Result<(), EstimatorError> {
        if self.n_unitaries < 2 {
            return Err(EstimatorError::Config("need at least 2 unitaries".into()));
        }
        if self.shots_per_unitary < 2 {
            return Err(EstimatorError::Config("need at least 2 shots per unitary".into()));
        }
        Ok(())
    }
}

/// How the Hamming-distance formula combines unitaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HammingAveraging {
    /// Evaluate the formula per unitary (unbiased within each unitary) and
    /// average the results.
    #[default]
    PerUnitary,
    /// Average `P(s)` over all unitaries first, then evaluate once. The pooled
    /// distribution tends to uniform for any state, so this reads `ln 2`.
    PooledFirst,
}

/// One simulated unitary: `U` and the outcome counts `[n₀, n₁]` of `K` shots on `UρU†`.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomizedRecord {
    pub unitary: ComplexMatrix,
    pub counts: [u64; 2],
}

/// Draws the unitaries and shots of one randomized-measurement run on the
/// output qubit of the Choi state of `n`.
pub fn randomized_measurements(n: &LinearMap, cfg: &ShadowConfig) -> Result<Vec<RandomizedRecord>, EstimatorError> {
    cfg.validate()?;
    let rho = output_marginal(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.n_unitaries);
    for _ in 0..cfg.n_unitaries {
        let u = sample_unitary(cfg.ensemble, &mut rng);
        let rotated = &u * &rho * u.adjoint();
        let p1 = rotated[(1, 1)].re.clamp(0.0, 1.0);
        let n1 = Binomial::new(cfg.shots_per_unitary, p1).expect("valid binomial").sample(&mut rng);
        out.push(RandomizedRecord { unitary: u, counts: [cfg.shots_per_unitary - n1, n1] });
    }
    Ok(out)
}

/// `2 Σ_{s,s′} (−2)^{−D(s,s′)} P(s)P(s′)` for one qubit, with products of equal
/// outcomes counted without replacement so the estimate is unbiased.
fn hamming_purity(counts: [u64; 2]) -> f64 {
    let [a, b] = counts.map(|c| c as f64);
    let k = a + b;
    let same = a * (a - 1.0) + b * (b - 1.0);
    let cross = 2.0 * a * b;
    2.0 * (same - 0.5 * cross) / (k * (k - 1.0))
}

/// One run of the Hamming-distance estimator.
pub fn hamming_renyi2_with(
    n: &LinearMap,
    cfg: &ShadowConfig,
    averaging: HammingAveraging,
) -> Result<EstimateReport, EstimatorError> {
    let records = randomized_measurements(n, cfg)?;
    match averaging {
        HammingAveraging::PerUnitary => {
            let per: Vec<f64> = records.iter().map(|r| hamming_purity(r.counts)).collect();
            let (purity, spread) = mean_std(&per);
            let value = entropy_from_purity(purity)?;
            let std_error = spread / (per.len() as f64).sqrt() / purity;
            Ok(EstimateReport { value, std_error, std_dev: 0.0, method: Method::Hamming, repeats: 1 })
        }
        HammingAveraging::PooledFirst => {
            let total = (cfg.shots_per_unitary * records.len() as u64) as f64;
            let ones: u64 = records.iter().map(|r| r.counts[1]).sum();
            let p1 = ones as f64 / total;
            let p0 = 1.0 - p1;
            let purity = 2.0 * (p0 * p0 + p1 * p1 - p0 * p1);
            Ok(EstimateReport { value: entropy_from_purity(purity)?, std_error: 0.0, std_dev: 0.0, method: Method::HammingPooled, repeats: 1 })
        }
    }
}

pub fn hamming_renyi2(n: &LinearMap, cfg: &ShadowConfig) -> Result<EstimateReport, EstimatorError> {
    hamming_renyi2_with(n, cfg, HammingAveraging::default())
}

/// `repeats` independent runs with seeds derived from `cfg.seed`.
pub fn hamming_renyi2_repeated(
    n: &LinearMap,
    cfg: &ShadowConfig,
    averaging: HammingAveraging,
    repeats: usize,
) -> Result<EstimateReport, EstimatorError> {
    let method = match averaging {
        HammingAveraging::PerUnitary => Method::Hamming,
        HammingAveraging::PooledFirst => Method::HammingPooled,
    };
    repeat_estimate(repeats, cfg.seed, method, |s| Ok(hamming_renyi2_with(n, &cfg.with_seed(s), averaging)?.value))
}

/// `ρ̄_m = 3·U_m†·diag(P̂_m)·U_m − I` per unitary. Hermitian with unit trace,
/// not necessarily positive.
pub fn shadow_states(n: &LinearMap, cfg: &ShadowConfig) -> Result<Vec<ComplexMatrix>, EstimatorError> {
    Ok(randomized_measurements(n, cfg)?.iter().map(|r| shadow_from_counts(&r.unitary, r.counts)).collect())
}

pub fn shadow_from_counts(u: &ComplexMatrix, counts: [u64; 2]) -> ComplexMatrix {
    let k = (counts[0] + counts[1]) as f64;
    let p = std_gates::diag(&[C64::new(counts[0] as f64 / k, 0.0), C64::new(counts[1] as f64 / k, 0.0)]);
    u.adjoint() * p * u * C64::new(3.0, 0.0) - std_gates::identity(2)
}

fn tr_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    // Tr(AB) for Hermitian A, B is real
    a.iter().zip(b.transpose().iter()).map(|(x, y)| x * y).sum::<C64>().re
}

/// `(1/(M(M−1))) Σ_{m≠m′} Tr(ρ̄_m ρ̄_{m′})`.
pub fn shadow_purity(shadows: &[ComplexMatrix]) -> Result<f64, EstimatorError> {
    let m = shadows.len();
    if m < 2 {
        return Err(EstimatorError::Config("need at least 2 shadows".into()));
    }
    let sum = shadows.iter().fold(ComplexMatrix::zeros(2, 2), |acc, s| acc + s);
    let diag: f64 = shadows.iter().map(|s| tr_product(s, s)).sum();
    Ok((tr_product(&sum, &sum) - diag) / (m * (m - 1)) as f64)
}

/// Entropy from pairwise shadow overlaps. The standard error is a jackknife
/// over shadows (0 when `M = 2`).
pub fn shadow_renyi2(shadows: &[ComplexMatrix]) -> Result<EstimateReport, EstimatorError> {
    let purity = shadow_purity(shadows)?;
    let value = entropy_from_purity(purity)?;
    let m = shadows.len();
    let std_error = if m < 3 {
        0.0
    } else {
        let leave_out: Vec<f64> = (0..m)
            .map(|i| {
                let rest: Vec<ComplexMatrix> =
                    shadows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.clone()).collect();
                shadow_purity(&rest).expect("at least two remain")
            })
            .collect();
        let (_, spread) = mean_std(&leave_out);
        // jackknife variance (m−1)/m Σ (x_i − x̄)² = (m−1)²/m · s²
        spread * (m as f64 - 1.0) / (m as f64).sqrt() / purity
    };
    Ok(EstimateReport { value, std_error, std_dev: 0.0, method: Method::Shadow, repeats: 1 })
}

pub fn shadow_renyi2_repeated(n: &LinearMap, cfg: &ShadowConfig, repeats: usize) -> Result<EstimateReport, EstimatorError> {
    repeat_estimate(repeats, cfg.seed, Method::Shadow, |s| {
        let shadows = shadow_states(n, &cfg.with_seed(s))?;
        entropy_from_purity(shadow_purity(&shadows)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::exact_renyi2_op;
    use crate::gates::{gate_fig1d, m_povm};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn hamming_plug_in_examples() {
        // exact P = 1/2 gives purity 2(1/2 − 1/4) = 1/2
        let p = 0.5;
        assert_abs_diff_eq!(2.0 * (p * p + p * p - p * p), 0.5);
        // without-replacement form on large balanced counts
        assert_abs_diff_eq!(hamming_purity([500_000, 500_000]), 0.5, epsilon = 1e-5);
        assert_abs_diff_eq!(hamming_purity([1000, 0]), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn pure_marginal_reads_zero_on_average() {
        let proj = m_povm(0.0, 0);
        let cfg = ShadowConfig::new(400, 200, Ensemble::Haar, 5).unwrap();
        let r = hamming_renyi2(&proj, &cfg).unwrap();
        assert!(r.value.abs() < 4.0 * r.std_error + 0.02, "{r:?}");
    }

    #[test]
    fn pooled_averaging_collapses_to_ln2() {
        let proj = m_povm(0.0, 0);
        let cfg = ShadowConfig::new(400, 500, Ensemble::Haar, 5).unwrap();
        let r = hamming_renyi2_with(&proj, &cfg, HammingAveraging::PooledFirst).unwrap();
        assert!((r.value - LN_2).abs() < 0.02, "{r:?}");
    }

    #[test]
    fn shadow_examples() {
        let u = std_gates::identity(2);
        let s = shadow_from_counts(&u, [10, 0]);
        let want = std_gates::diag(&[C64::new(2.0, 0.0), C64::new(-1.0, 0.0)]);
        assert!((s - want).norm() < 1e-15);
        let half = std_gates::identity(2) * C64::new(0.5, 0.0);
        assert_abs_diff_eq!(shadow_renyi2(&vec![half; 5]).unwrap().value, LN_2, epsilon = 1e-12);
        let zero = std_gates::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_abs_diff_eq!(shadow_renyi2(&vec![zero; 5]).unwrap().value, 0.0, epsilon = 1e-12);
        assert!(shadow_renyi2(&[std_gates::identity(2)]).is_err());
    }

    #[test]
    fn shadows_have_unit_trace_and_average_to_marginal() {
        let n = gate_fig1d(0.6, 0, 0);
        let cfg = ShadowConfig::new(4000, 100, Ensemble::Haar, 8).unwrap();
        let shadows = shadow_states(&n, &cfg).unwrap();
        let mut mean = ComplexMatrix::zeros(2, 2);
        for s in &shadows {
            assert_abs_diff_eq!(s.trace().re, 1.0, epsilon = 1e-12);
            assert!((s - s.adjoint()).norm() < 1e-12);
            mean += s;
        }
        mean /= C64::new(shadows.len() as f64, 0.0);
        let rho = output_marginal(&n).unwrap();
        assert!((mean - rho).camax() < 0.05);
    }

    #[test]
    fn clifford_ensemble_also_converges() {
        let n = gate_fig1d(0.6, 0, 0);
        let exact = exact_renyi2_op(&n).unwrap();
        let cfg = ShadowConfig::new(2000, 500, Ensemble::Clifford1q, 2).unwrap();
        assert!((hamming_renyi2(&n, &cfg).unwrap().value - exact).abs() < 0.05);
        let s = shadow_renyi2(&shadow_states(&n, &cfg).unwrap()).unwrap();
        assert!((s.value - exact).abs() < 0.05);
    }

    #[test]
    fn estimators_ignore_global_scalars() {
        let n = gate_fig1d(0.9, 0, 0);
        let scaled = n.scale(C64::new(-3.0, 2.0));
        let cfg = ShadowConfig::standard(12);
        assert_abs_diff_eq!(hamming_renyi2(&n, &cfg).unwrap().value, hamming_renyi2(&scaled, &cfg).unwrap().value, epsilon = 1e-9);
        let a = shadow_renyi2(&shadow_states(&n, &cfg).unwrap()).unwrap().value;
        let b = shadow_renyi2(&shadow_states(&scaled, &cfg).unwrap()).unwrap().value;
        assert_abs_diff_eq!(a, b, epsilon = 1e-9);
    }

    #[test]
    fn config_validation() {
        assert!(ShadowConfig::new(1, 500, Ensemble::Haar, 0).is_err());
        assert!(ShadowConfig::new(40, 1, Ensemble::Haar, 0).is_err());
        assert!(hamming_renyi2(&LinearMap::identity(2), &ShadowConfig::standard(0)).is_err());
    }
}
