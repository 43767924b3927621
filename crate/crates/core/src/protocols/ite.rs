use super::ProtocolError;
use crate::gates::{a_of_eps, gate_fig1d};
use crate::mbqc::{inject_input, measure_qubit, MbqcError, MeasurementBasis, MeasurePolicy, MeasurementPattern};
use crate::numeric::{apply_gate, std_gates, StateVector, C64, DEFAULT_MAX_QUBITS, DEFAULT_TOL};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, SQRT_2};

/// Largest `n` simulated as one `2n + 1`-node chain; longer runs are split into
/// 3-node segments.
pub const MAX_CHAIN_STEPS: usize = (DEFAULT_MAX_QUBITS - 1) / 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IteMode {
    /// `N̂_ε` applied `n` times to `|+⟩`.
    Matrices,
    /// The measurement chain itself.
    Mbqc,
}

/// How the cluster is laid out in `Mbqc` mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainLayout {
    /// One chain when it fits under the qubit cap, segments otherwise.
    Auto,
    Chain,
    Segments,
}

/// What happens to the X-basis outcomes. Tilted outcomes are always
/// postselected to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ByproductPolicy {
    Postselect,
    /// Sample each X outcome and undo the resulting `X` byproduct.
    Correct { seed: u64 },
    /// As `Correct`, with the X outcomes given.
    CorrectWith(Vec<u8>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IteResult {
    /// `|⟨0|out⟩|²`.
    pub p0: f64,
    /// `(n/2)·ln a`.
    pub tau: f64,
    pub output: StateVector,
    /// Probability of the postselected branch.
    pub branch_probability: f64,
    /// X-basis outcomes, one per step.
    pub x_outcomes: Vec<u8>,
}

/// `N̂_ε = √2·gate_fig1d(ε, 0, 0)`, i.e. `M₀` at polar angle `π/2 − ε`.
pub fn ite_gate(epsilon: f64) -> crate::LinearMap {
    gate_fig1d(epsilon, 0, 0).scale(C64::new(SQRT_2, 0.0))
}

pub fn ite_tau(epsilon: f64, n: usize) -> f64 {
    n as f64 / 2.0 * a_of_eps(epsilon).ln()
}

/// `a^{2n}/(1 + a^{2n})`, the ground-state weight after `n` steps from `|+⟩`.
pub fn ite_p0_closed_form(epsilon: f64, n: usize) -> f64 {
    let x = 2.0 * n as f64 * a_of_eps(epsilon).ln();
    // logistic in x, stable for large n
    1.0 / (1.0 + (-x).exp())
}

pub fn ite_chain(epsilon: f64, n: usize, mode: IteMode, policy: &ByproductPolicy) -> Result<IteResult, ProtocolError> {
    ite_chain_with(epsilon, n, mode, ChainLayout::Auto, policy)
}

pub fn ite_chain_with(
    epsilon: f64,
    n: usize,
    mode: IteMode,
    layout: ChainLayout,
    policy: &ByproductPolicy,
) -> Result<IteResult, ProtocolError> {
    if let ByproductPolicy::CorrectWith(bits) = policy {
        if bits.len() != n {
            return Err(MbqcError::OutcomeLength { expected: n, found: bits.len() }.into());
        }
    }
    let tau = ite_tau(epsilon, n);
    let plus = StateVector::plus(1);
    let (output, branch_probability, x_outcomes) = match mode {
        IteMode::Matrices => {
            let gate = ite_gate(epsilon);
            let mut v = plus;
            let mut prob = 1.0;
            for _ in 0..n {
                let next = gate.apply(&v)?;
                prob *= next.norm_sq();
                v = next.renormalized()?;
            }
            (v, prob, vec![0; n])
        }
        IteMode::Mbqc => {
            let chain = match layout {
                ChainLayout::Auto => n <= MAX_CHAIN_STEPS,
                ChainLayout::Chain => true,
                ChainLayout::Segments => false,
            };
            let per_cluster = if chain { n.max(1) } else { 1 };
            let mut runner = Runner::new(epsilon, policy);
            let mut v = plus;
            let mut done = 0;
            while done < n {
                let k = per_cluster.min(n - done);
                v = runner.run_cluster(&v, k)?;
                done += k;
            }
            if runner.parity == 1 {
                v = apply_gate(&v, &std_gates::pauli_x(), &[0])?;
            }
            (v, runner.probability, runner.outcomes)
        }
    };
    Ok(IteResult { p0: output.prob_zero(0)?, tau, output, branch_probability, x_outcomes })
}

struct Runner<'a> {
    theta: f64,
    policy: &'a ByproductPolicy,
    rng: Option<ChaCha8Rng>,
    /// Pending `X` on the logical qubit.
    parity: u8,
    probability: f64,
    outcomes: Vec<u8>,
}

impl<'a> Runner<'a> {
    fn new(epsilon: f64, policy: &'a ByproductPolicy) -> Self {
        let rng = match policy {
            ByproductPolicy::Correct { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            _ => None,
        };
        Self { theta: PI / 2.0 - epsilon, policy, rng, parity: 0, probability: 1.0, outcomes: Vec::new() }
    }

    /// Runs `steps` tilted/X pairs on one `2·steps + 1` chain.
    fn run_cluster(&mut self, input: &StateVector, steps: usize) -> Result<StateVector, ProtocolError> {
        let bases = vec![MeasurementBasis::x(); 2 * steps];
        let pattern = MeasurementPattern::chain(&bases);
        let mut state = inject_input(input, &pattern)?;
        for _ in 0..steps {
            // M₀(π − θ)·X = X·M₀(θ): a pending X flips the tilt
            let theta = if self.parity == 1 { PI - self.theta } else { self.theta };
            let (_, p, next) = measure_qubit(&state, 0, &MeasurementBasis::new(theta, 0.0), MeasurePolicy::Postselect(0))?;
            self.probability *= p;
            let policy = match (self.policy, &mut self.rng) {
                (ByproductPolicy::Postselect, _) => MeasurePolicy::Postselect(0),
                (ByproductPolicy::CorrectWith(bits), _) => MeasurePolicy::Postselect(bits[self.outcomes.len()]),
                (ByproductPolicy::Correct { .. }, Some(rng)) => MeasurePolicy::Sample { seed: rng.next_u64() },
                (ByproductPolicy::Correct { .. }, None) => unreachable!(),
            };
            let (s, p, next) = measure_qubit(&next, 0, &MeasurementBasis::x(), policy)?;
            if !matches!(self.policy, ByproductPolicy::Correct { .. }) {
                self.probability *= p;
            }
            self.outcomes.push(s);
            self.parity ^= s;
            state = next;
        }
        Ok(state.renormalized()?)
    }
}

/// One step of the compacted circuit: CZ onto a fresh `|+⟩`, measure the old
/// qubit at `θ` with outcome 0, then `H`. Leaves `M₀|ψ⟩` with no byproduct.
pub fn compact_step(epsilon: f64, psi: &StateVector) -> Result<StateVector, ProtocolError> {
    let pair = StateVector::concat(psi, &StateVector::plus(1));
    let entangled = apply_gate(&pair, &std_gates::cz(), &[0, 1])?;
    let basis = MeasurementBasis::new(PI / 2.0 - epsilon, 0.0);
    let (_, _, rest) = measure_qubit(&entangled, 0, &basis, MeasurePolicy::Postselect(0))?;
    Ok(apply_gate(&rest, &std_gates::hadamard(), &[0])?)
}

/// Compares the output distribution of the compacted single-qubit circuit
/// with the full chain, both with X outcomes postselected and with every X
/// outcome string corrected. Strings are enumerated exhaustively up to 10 steps.
pub fn compact_chain_equivalence(epsilon: f64, n: usize) -> Result<bool, ProtocolError> {
    if n == 0 {
        return Err(ProtocolError::NoAttempts);
    }
    let mut v = StateVector::plus(1);
    for _ in 0..n {
        v = compact_step(epsilon, &v)?;
    }
    let p0 = v.prob_zero(0)?;
    let close = |r: &IteResult| (r.p0 - p0).abs() <= DEFAULT_TOL;
    if !close(&ite_chain(epsilon, n, IteMode::Mbqc, &ByproductPolicy::Postselect)?) {
        return Ok(false);
    }
    let strings = crate::mbqc::all_outcomes(n.min(10));
    for bits in strings {
        let mut full = bits.clone();
        full.resize(n, 0);
        if !close(&ite_chain(epsilon, n, IteMode::Mbqc, &ByproductPolicy::CorrectWith(full))?) {
            return Ok(false);
        }
    }
    Ok(true)
}
