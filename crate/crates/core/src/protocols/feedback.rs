use super::{check_feedback_a, ProtocolError, MAX_ATTEMPTS};
use crate::gates::BlochState;
use crate::numeric::{StateVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Trajectories simulated per RNG stream. Fixed so results do not depend on
/// the thread count.
const CHUNK: usize = 4096;

/// Correction angles from `a₁ = a`, `a_{n+1} = −a_n²`, so `a_n = −a^{2^{n−1}}`
/// for `n ≥ 2`. Only this sign choice makes `M₀(a_n)·Π M₁(a_i) ∝ M₀(a)` at
/// every depth; an alternating sign fails from the third attempt on. Kept as
/// sign and `ln|a_n|` since `|a_n|` overflows after about ten doublings.
#[derive(Clone, Debug, PartialEq)]
pub struct FeedbackSchedule {
    pub base_a: f64,
    signs: Vec<f64>,
    log_abs: Vec<f64>,
}

impl FeedbackSchedule {
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// `a_n` as floats by repeated squaring; entries past the `f64` range are `−∞`.
    pub fn terms(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        let mut a = self.base_a;
        for _ in 0..self.len() {
            out.push(a);
            a = -a * a;
        }
        out
    }

    /// `(sign, ln|a_n|)` of attempt `n` (1-based).
    pub fn term_log(&self, n: usize) -> (f64, f64) {
        (self.signs[n - 1], self.log_abs[n - 1])
    }

    /// POVM element `M_s(a_n)` of attempt `n` as its diagonal, evaluated
    /// without forming `a_n`.
    pub fn povm_diag(&self, n: usize, s: u8) -> [f64; 2] {
        let (sign, l) = self.term_log(n);
        // 1/√(1+a²) and |a|/√(1+a²)
        let small = (1.0 + (2.0 * l).exp()).sqrt().recip();
        let large = (1.0 + (-2.0 * l).exp()).sqrt().recip();
        if s == 0 {
            [sign * large, small]
        } else {
            [small, -sign * large]
        }
    }
}

pub fn feedback_schedule(a: f64, n: usize) -> Result<FeedbackSchedule, ProtocolError> {
    check_feedback_a(a)?;
    if n == 0 {
        return Err(ProtocolError::NoAttempts);
    }
    let signs = (0..n).map(|k| if k == 0 { 1.0 } else { -1.0 }).collect();
    let log_abs = (0..n).map(|k| 2f64.powi(k as i32) * a.ln()).collect();
    Ok(FeedbackSchedule { base_a: a, signs, log_abs })
}

/// `(a² − 1)/(a^{2^n} − a^{−2^n})`, written with `sinh` so large `n` gives 0
/// instead of `∞/∞`.
pub fn attempt_factor(a: f64, n: usize) -> f64 {
    let x = 2f64.powi(n as i32) * a.ln();
    (a * a - 1.0) / (2.0 * x.sinh())
}

/// `Σ_{i=1}^{n}` of [`attempt_factor`]. Tends to 1 for `a > 1` and to `a²`
/// for `a < 1`.
pub fn bracket_sum(a: f64, n: usize) -> f64 {
    (1..=n).map(|i| attempt_factor(a, i)).sum()
}

/// Probability that the `n`-th attempt is the first success:
/// `(cos²(β/2) + a⁻² sin²(β/2))·(a² − 1)/(a^{2^n} − a^{−2^n})`.
pub fn p_attempt(a: f64, psi: &BlochState, n: usize) -> Result<f64, ProtocolError> {
    check_feedback_a(a)?;
    if n == 0 {
        return Err(ProtocolError::NoAttempts);
    }
    Ok(psi.p_max_m0(a) * attempt_factor(a, n))
}

/// Probability of success within `n` attempts.
pub fn p_success(a: f64, psi: &BlochState, n: usize) -> Result<f64, ProtocolError> {
    check_feedback_a(a)?;
    if n == 0 {
        return Err(ProtocolError::NoAttempts);
    }
    Ok(psi.p_max_m0(a) * bracket_sum(a, n))
}

/// `⟨M₀†M₀⟩ / max eig(M₀†M₀)` for `M₀(a)`, the `n → ∞` limit of [`p_success`].
pub fn p_success_limit(a: f64, psi: &BlochState) -> Result<f64, ProtocolError> {
    check_feedback_a(a)?;
    let (s, c) = (psi.beta / 2.0).sin_cos();
    Ok((a * a * c * c + s * s) / (a * a).max(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryStats {
    /// `successes[k]` trajectories first succeeded on attempt `k + 1`.
    pub successes: Vec<u64>,
    /// Trajectories that failed every attempt.
    pub failures: u64,
    pub trajectories: u64,
    pub seed: u64,
    /// Smallest fidelity between a successful output and `M₀(a)|ψ⟩`; 1 when
    /// nothing succeeded.
    pub min_success_fidelity: f64,
}

impl TrajectoryStats {
    /// Empirical probability of success within `n` attempts.
    pub fn p_success(&self, n: usize) -> f64 {
        let hits: u64 = self.successes.iter().take(n).sum();
        hits as f64 / self.trajectories as f64
    }

    /// Empirical probability that attempt `n` is the first success.
    pub fn p_attempt(&self, n: usize) -> f64 {
        self.successes[n - 1] as f64 / self.trajectories as f64
    }

    fn empty(n: usize, seed: u64) -> Self {
        Self { successes: vec![0; n], failures: 0, trajectories: 0, seed, min_success_fidelity: 1.0 }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.successes.iter_mut().zip(&other.successes) {
            *a += b;
        }
        self.failures += other.failures;
        self.trajectories += other.trajectories;
        self.min_success_fidelity = self.min_success_fidelity.min(other.min_success_fidelity);
        self
    }
}

/// Monte Carlo over the decision tree: attempt `k` measures `{M₀(a_k), M₁(a_k)}`
/// on the renormalized state and stops at the first outcome 0.
pub fn simulate_feedback(
    a: f64,
    psi: &StateVector,
    n_max: usize,
    trajectories: u64,
    seed: u64,
) -> Result<TrajectoryStats, ProtocolError> {
    if psi.n_qubits() != 1 {
        return Err(ProtocolError::NotSingleQubit(psi.n_qubits()));
    }
    if n_max > MAX_ATTEMPTS {
        return Err(ProtocolError::TooManyAttempts { n: n_max, cap: MAX_ATTEMPTS });
    }
    let schedule = feedback_schedule(a, n_max)?;
    let amps = psi.amplitudes();
    let start = [amps[0], amps[1]];
    let m0 = schedule.povm_diag(1, 0);
    let target = normalize([start[0] * m0[0], start[1] * m0[1]]);
    let chunks = trajectories.div_ceil(CHUNK as u64);
    let stats = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = (trajectories - chunk * CHUNK as u64).min(CHUNK as u64);
            let mut stats = TrajectoryStats::empty(n_max, seed);
            for _ in 0..count {
                run_trajectory(&schedule, start, target, &mut rng, &mut stats);
            }
            stats.trajectories = count;
            stats
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(TrajectoryStats::empty(n_max, seed), TrajectoryStats::merge);
    Ok(stats)
}

fn normalize(v: [C64; 2]) -> [C64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

fn run_trajectory(
    schedule: &FeedbackSchedule,
    start: [C64; 2],
    target: [C64; 2],
    rng: &mut ChaCha8Rng,
    stats: &mut TrajectoryStats,
) {
    let mut state = normalize(start);
    for k in 1..=schedule.len() {
        let d0 = schedule.povm_diag(k, 0);
        let good = [state[0] * d0[0], state[1] * d0[1]];
        let p0 = good[0].norm_sqr() + good[1].norm_sqr();
        if rng.random::<f64>() < p0 {
            let out = normalize(good);
            let overlap = target[0].conj() * out[0] + target[1].conj() * out[1];
            stats.min_success_fidelity = stats.min_success_fidelity.min(overlap.norm_sqr());
            stats.successes[k - 1] += 1;
            return;
        }
        let d1 = schedule.povm_diag(k, 1);
        state = normalize([state[0] * d1[0], state[1] * d1[1]]);
    }
    stats.failures += 1;
}
