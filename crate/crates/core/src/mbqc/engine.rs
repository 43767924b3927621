use super::{MbqcError, MeasurementBasis, MeasurementPattern};
use crate::linear_map::LinearMap;
use crate::numeric::{schmidt, ComplexMatrix, SchmidtData, StateVector, C64, DEFAULT_MAX_QUBITS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_1_SQRT_2;

/// Branches less likely than this are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-14;

/// How a whole pattern run picks its outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutcomePolicy {
    Sample { seed: u64 },
    /// One bit per measured node, aligned with the pattern's order.
    Postselect(Vec<u8>),
}

/// How a single measurement picks its outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurePolicy {
    Sample { seed: u64 },
    Postselect(u8),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub outcomes: Vec<u8>,
    pub joint_probability: f64,
    /// Born probability of each step conditioned on the earlier ones.
    pub step_probabilities: Vec<f64>,
    pub output_state: StateVector,
}

/// Dense pattern simulator with a qubit cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Simulator {
    pub max_qubits: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Self { max_qubits: DEFAULT_MAX_QUBITS }
    }
}

impl Simulator {
    pub fn new(max_qubits: usize) -> Self {
        Self { max_qubits }
    }

    fn check_cap(&self, n: usize) -> Result<(), MbqcError> {
        if n > self.max_qubits {
            return Err(MbqcError::TooManyQubits { n, cap: self.max_qubits });
        }
        Ok(())
    }

    /// `|+⟩^⊗n` followed by CZ on every edge.
    pub fn build_cluster_state(&self, nodes: usize, edges: &[(usize, usize)]) -> Result<StateVector, MbqcError> {
        self.check_cap(nodes)?;
        check_edges(nodes, edges)?;
        let amps = graph_amplitudes(nodes, edges, &[], &[C64::new(1.0, 0.0)]);
        Ok(StateVector::new(amps)?)
    }

    /// Places `input` on the input nodes (input qubit `j` on the `j`-th input
    /// in ascending id), `|+⟩` elsewhere, then CZ on every edge.
    pub fn inject_input(&self, input: &StateVector, pattern: &MeasurementPattern) -> Result<StateVector, MbqcError> {
        self.check_cap(pattern.n_nodes())?;
        let inputs = pattern.inputs();
        if input.n_qubits() != inputs.len() {
            return Err(MbqcError::SizeMismatch { expected: inputs.len(), found: input.n_qubits() });
        }
        let amps = graph_amplitudes(pattern.n_nodes(), pattern.edges(), &inputs, input.amplitudes());
        Ok(StateVector::from_unnormalized(amps)?)
    }

    /// Runs every measurement of `pattern` in order. The output state lives on
    /// the output nodes in ascending id.
    pub fn run_pattern(
        &self,
        pattern: &MeasurementPattern,
        input: &StateVector,
        policy: &OutcomePolicy,
    ) -> Result<RunRecord, MbqcError> {
        if let OutcomePolicy::Postselect(bits) = policy {
            check_outcomes(pattern, bits)?;
        }
        let mut rng = match policy {
            OutcomePolicy::Sample { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            OutcomePolicy::Postselect(_) => None,
        };
        let mut amps = self.inject_input(input, pattern)?.into_amplitudes();
        let mut alive: Vec<usize> = (0..pattern.n_nodes()).collect();
        let mut outcomes = Vec::with_capacity(pattern.n_measured());
        let mut steps = Vec::with_capacity(pattern.n_measured());
        for (k, &node) in pattern.order().iter().enumerate() {
            let pos = take_position(&mut alive, node);
            let basis = pattern.basis(node).expect("measured node has a basis");
            let choice = match (&mut rng, policy) {
                (Some(rng), _) => Choice::Uniform(rng.random::<f64>()),
                (None, OutcomePolicy::Postselect(bits)) => Choice::Fixed(bits[k]),
                _ => unreachable!(),
            };
            let (s, p, next) = measure_amps(&amps, pos, &basis, choice, node)?;
            amps = next;
            outcomes.push(s);
            steps.push(p);
        }
        Ok(RunRecord {
            outcomes,
            joint_probability: steps.iter().product(),
            step_probabilities: steps,
            output_state: StateVector::from_unnormalized(amps)?,
        })
    }

    /// The `2^{n_O} × 2^{n_I}` Kraus operator of one outcome string, built
    /// column by column from computational-basis inputs without renormalizing.
    pub fn extract_kraus(&self, pattern: &MeasurementPattern, outcomes: &[u8]) -> Result<LinearMap, MbqcError> {
        self.check_cap(pattern.n_nodes())?;
        check_outcomes(pattern, outcomes)?;
        let inputs = pattern.inputs();
        let d_in = 1usize << inputs.len();
        let d_out = 1usize << pattern.n_outputs();
        let bras: Vec<(usize, [C64; 2])> = pattern
            .order()
            .iter()
            .zip(outcomes)
            .map(|(&node, &s)| (node, pattern.basis(node).expect("measured").bra(s)))
            .collect();
        let mut matrix = ComplexMatrix::zeros(d_out, d_in);
        for col in 0..d_in {
            let mut e = vec![C64::new(0.0, 0.0); d_in];
            e[col] = C64::new(1.0, 0.0);
            let mut amps = graph_amplitudes(pattern.n_nodes(), pattern.edges(), &inputs, &e);
            let mut alive: Vec<usize> = (0..pattern.n_nodes()).collect();
            for (node, bra) in &bras {
                let pos = take_position(&mut alive, *node);
                amps = project(&amps, pos, bra);
            }
            for (row, z) in amps.into_iter().enumerate() {
                matrix[(row, col)] = z;
            }
        }
        Ok(LinearMap::from_matrix(matrix))
    }

    /// `N̂` from the Choi route: a maximally entangled reference is attached to
    /// the inputs, the pattern is postselected on `outcomes`, and the surviving
    /// amplitudes are reshaped into a unit-Frobenius operator.
    pub fn operator_from_choi(
        &self,
        pattern: &MeasurementPattern,
        outcomes: &[u8],
    ) -> Result<(LinearMap, SchmidtData), MbqcError> {
        let n_in = pattern.n_inputs();
        let n = pattern.n_nodes();
        self.check_cap(n + n_in)?;
        check_outcomes(pattern, outcomes)?;
        let inputs = pattern.inputs();
        let scale = (1.0 / (1u64 << n_in) as f64).sqrt() * FRAC_1_SQRT_2.powi((n - n_in) as i32);
        let mut amps = vec![C64::new(0.0, 0.0); 1 << (n + n_in)];
        for idx in 0..(1usize << n) {
            let r = gather(idx, &inputs);
            amps[r | (idx << n_in)] = C64::new(scale * edge_sign(idx, pattern.edges()), 0.0);
        }
        let mut alive: Vec<usize> = (0..n).collect();
        for (&node, &s) in pattern.order().iter().zip(outcomes) {
            let pos = n_in + take_position(&mut alive, node);
            let basis = pattern.basis(node).expect("measured");
            let (_, _, next) = measure_amps(&amps, pos, &basis, Choice::Fixed(s), node)?;
            amps = next;
        }
        let d_in = 1usize << n_in;
        let d_out = 1usize << pattern.n_outputs();
        let matrix = ComplexMatrix::from_fn(d_out, d_in, |o, r| amps[r + (o << n_in)]);
        let map = LinearMap::from_matrix(matrix);
        let state = StateVector::new(amps)?;
        let data = if n_in == 0 {
            SchmidtData {
                coefficients: vec![1.0],
                left_basis: vec![StateVector::vacuum()],
                right_basis: vec![state],
                left_qubits: vec![],
                right_qubits: (0..pattern.n_outputs()).collect(),
            }
        } else {
            schmidt(&state, &(0..n_in).collect::<Vec<_>>())?
        };
        Ok((map, data))
    }
}

/// Measures one qubit of `state` and removes it from the register.
/// Returns the outcome, its Born probability and the renormalized remainder.
pub fn measure_qubit(
    state: &StateVector,
    qubit: usize,
    basis: &MeasurementBasis,
    policy: MeasurePolicy,
) -> Result<(u8, f64, StateVector), MbqcError> {
    if qubit >= state.n_qubits() {
        return Err(MbqcError::Numeric(crate::numeric::NumericError::QubitOutOfRange {
            qubit,
            n_qubits: state.n_qubits(),
        }));
    }
    let choice = match policy {
        MeasurePolicy::Sample { seed } => Choice::Uniform(ChaCha8Rng::seed_from_u64(seed).random::<f64>()),
        MeasurePolicy::Postselect(s) => Choice::Fixed(s),
    };
    let (s, p, amps) = measure_amps(state.amplitudes(), qubit, basis, choice, qubit)?;
    Ok((s, p, StateVector::from_unnormalized(amps)?))
}

pub fn build_cluster_state(nodes: usize, edges: &[(usize, usize)]) -> Result<StateVector, MbqcError> {
    Simulator::default().build_cluster_state(nodes, edges)
}

pub fn inject_input(input: &StateVector, pattern: &MeasurementPattern) -> Result<StateVector, MbqcError> {
    Simulator::default().inject_input(input, pattern)
}

pub fn run_pattern(
    pattern: &MeasurementPattern,
    input: &StateVector,
    policy: &OutcomePolicy,
) -> Result<RunRecord, MbqcError> {
    Simulator::default().run_pattern(pattern, input, policy)
}

pub fn extract_kraus(pattern: &MeasurementPattern, outcomes: &[u8]) -> Result<LinearMap, MbqcError> {
    Simulator::default().extract_kraus(pattern, outcomes)
}

pub fn operator_from_choi(
    pattern: &MeasurementPattern,
    outcomes: &[u8],
) -> Result<(LinearMap, SchmidtData), MbqcError> {
    Simulator::default().operator_from_choi(pattern, outcomes)
}

/// Operator entanglement of the pattern's induced operator for one outcome string.
pub fn pattern_operator_entropy(pattern: &MeasurementPattern, outcomes: &[u8]) -> Result<f64, MbqcError> {
    let (_, data) = operator_from_choi(pattern, outcomes)?;
    Ok(crate::numeric::vn_entropy(&data.coefficients)?)
}

/// Every outcome string of `m` measurements, first measurement in bit 0.
pub fn all_outcomes(m: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..(1usize << m)).map(move |k| (0..m).map(|j| ((k >> j) & 1) as u8).collect())
}

/// Fidelity between the `s = 0` state of a 3-chain cluster measured on the
/// middle qubit and the `s = 1` state after flipping the middle qubit back to
/// `|+n̂⟩`. The flip leaves the neighbours in the wrong state, so this is below one.
pub fn naive_flip_fidelity(basis: MeasurementBasis) -> Result<f64, MbqcError> {
    let cluster = build_cluster_state(3, &[(0, 1), (1, 2)])?;
    let (_, _, good) = measure_qubit(&cluster, 1, &basis, MeasurePolicy::Postselect(0))?;
    let (_, _, bad) = measure_qubit(&cluster, 1, &basis, MeasurePolicy::Postselect(1))?;
    // both carry the same |+n> on the middle qubit, which drops out of the overlap
    Ok(good.fidelity(&bad)?)
}

#[derive(Clone, Copy)]
enum Choice {
    Fixed(u8),
    Uniform(f64),
}

fn measure_amps(
    amps: &[C64],
    pos: usize,
    basis: &MeasurementBasis,
    choice: Choice,
    node: usize,
) -> Result<(u8, f64, Vec<C64>), MbqcError> {
    let total = crate::numeric::norm_sq(amps);
    if total == 0.0 {
        return Err(MbqcError::ImpossibleBranch { node, probability: 0.0 });
    }
    let branch = |s: u8| {
        let out = project(amps, pos, &basis.bra(s));
        let p = crate::numeric::norm_sq(&out) / total;
        (out, p)
    };
    let (s, (out, p)) = match choice {
        Choice::Fixed(s) => {
            if s > 1 {
                return Err(MbqcError::InvalidBit(s));
            }
            (s, branch(s))
        }
        Choice::Uniform(u) => {
            let zero = branch(0);
            if u < zero.1 {
                (0, zero)
            } else {
                (1, branch(1))
            }
        }
    };
    if p < ZERO_PROBABILITY {
        return Err(MbqcError::ImpossibleBranch { node, probability: p });
    }
    let scale = (p * total).sqrt().recip();
    Ok((s, p, out.into_iter().map(|z| z * scale).collect()))
}

/// Contracts qubit `pos` with `bra`; the register shrinks by one qubit.
fn project(amps: &[C64], pos: usize, bra: &[C64; 2]) -> Vec<C64> {
    let half = amps.len() / 2;
    let low_mask = (1usize << pos) - 1;
    (0..half)
        .map(|i| {
            let i0 = ((i & !low_mask) << 1) | (i & low_mask);
            bra[0] * amps[i0] + bra[1] * amps[i0 | (1 << pos)]
        })
        .collect()
}

/// Amplitudes of `input` (on `input_nodes`) ⊗ `|+⟩` elsewhere, then CZ on every edge.
fn graph_amplitudes(n: usize, edges: &[(usize, usize)], input_nodes: &[usize], input: &[C64]) -> Vec<C64> {
    let scale = FRAC_1_SQRT_2.powi((n - input_nodes.len()) as i32);
    (0..(1usize << n))
        .map(|idx| input[gather(idx, input_nodes)] * (scale * edge_sign(idx, edges)))
        .collect()
}

fn gather(idx: usize, positions: &[usize]) -> usize {
    positions.iter().enumerate().fold(0, |acc, (j, &p)| acc | (((idx >> p) & 1) << j))
}

fn edge_sign(idx: usize, edges: &[(usize, usize)]) -> f64 {
    let parity = edges.iter().filter(|&&(u, v)| (idx >> u) & (idx >> v) & 1 == 1).count();
    if parity % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn take_position(alive: &mut Vec<usize>, node: usize) -> usize {
    let pos = alive.iter().position(|&v| v == node).expect("node still in register");
    alive.remove(pos);
    pos
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> Result<(), MbqcError> {
    for &(u, v) in edges {
        if u >= n || v >= n || u == v {
            return Err(MbqcError::Invalid(format!("invalid edge ({u}, {v}) for {n} nodes")));
        }
    }
    Ok(())
}

fn check_outcomes(pattern: &MeasurementPattern, bits: &[u8]) -> Result<(), MbqcError> {
    if bits.len() != pattern.n_measured() {
        return Err(MbqcError::OutcomeLength { expected: pattern.n_measured(), found: bits.len() });
    }
    if let Some(&b) = bits.iter().find(|&&b| b > 1) {
        return Err(MbqcError::InvalidBit(b));
    }
    Ok(())
}
