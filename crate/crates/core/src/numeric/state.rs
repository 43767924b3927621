use super::{qubits_for_len, NumericError, Result, C64, NORM_TOL};
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::FRAC_1_SQRT_2;

/// Dense amplitude vector over `n` qubits.
///
/// Constructors produce unit-norm states. Applying a nonunitary gate through
/// [`super::apply_gate`] yields a vector flagged as unnormalized; call
/// [`StateVector::renormalized`] to get back a physical state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
    normalized: bool,
}

impl StateVector {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        let norm_sq = norm_sq(&amps);
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(NumericError::Unnormalized(norm_sq));
        }
        Ok(Self { n_qubits, amps, normalized: true })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn from_unnormalized(mut amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        let norm = norm_sq(&amps).sqrt();
        if norm == 0.0 {
            return Err(NumericError::Zero);
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n_qubits, amps, normalized: true })
    }

    /// Amplitudes that may carry any norm.
    pub(crate) fn raw(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let normalized = (norm_sq(&amps) - 1.0).abs() <= NORM_TOL;
        Ok(Self { n_qubits, amps, normalized })
    }

    /// The 0-qubit state `[1]`.
    pub fn vacuum() -> Self {
        Self { n_qubits: 0, amps: vec![C64::new(1.0, 0.0)], normalized: true }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Self { n_qubits, amps, normalized: true }
    }

    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    /// `|+⟩^⊗n`.
    pub fn plus(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let a = C64::new((dim as f64).sqrt().recip(), 0.0);
        Self { n_qubits, amps: vec![a; dim], normalized: true }
    }

    /// `cos(β/2)|0⟩ + e^{iφ} sin(β/2)|1⟩`.
    pub fn bloch(beta: f64, varphi: f64) -> Self {
        let amps = vec![
            C64::new((beta / 2.0).cos(), 0.0),
            C64::from_polar((beta / 2.0).sin(), varphi),
        ];
        Self { n_qubits: 1, amps, normalized: true }
    }

    /// Single-qubit named states: `0`, `1`, `+`, `-`, `+i`, `-i`.
    pub fn named(label: &str) -> Option<Self> {
        let h = FRAC_1_SQRT_2;
        let v = match label {
            "0" => [C64::new(1., 0.), C64::new(0., 0.)],
            "1" => [C64::new(0., 0.), C64::new(1., 0.)],
            "+" => [C64::new(h, 0.), C64::new(h, 0.)],
            "-" => [C64::new(h, 0.), C64::new(-h, 0.)],
            "+i" => [C64::new(h, 0.), C64::new(0., h)],
            "-i" => [C64::new(h, 0.), C64::new(0., -h)],
            _ => return None,
        };
        Some(Self { n_qubits: 1, amps: v.to_vec(), normalized: true })
    }

    /// Haar-distributed pure state drawn from complex Gaussians.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let amps: Vec<C64> = (0..1usize << n_qubits)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_unnormalized(amps).expect("gaussian vector is nonzero")
    }

    /// Product state with `low` on qubits `0..low.n` and `high` above it.
    pub fn concat(low: &StateVector, high: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(low.amps.len() * high.amps.len());
        for h in &high.amps {
            amps.extend(low.amps.iter().map(|l| l * h));
        }
        StateVector {
            n_qubits: low.n_qubits + high.n_qubits,
            amps,
            normalized: low.normalized && high.normalized,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.amps)
    }

    pub fn renormalized(&self) -> Result<StateVector> {
        Self::from_unnormalized(self.amps.clone())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(NumericError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`; insensitive to global phase and norm.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        let ov = self.inner(other)?.norm_sqr();
        let den = self.norm_sq() * other.norm_sq();
        if den == 0.0 {
            return Err(NumericError::Zero);
        }
        Ok(ov / den)
    }

    /// Probability that `qubit` reads 0 in the computational basis.
    pub fn prob_zero(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.n_qubits {
            return Err(NumericError::QubitOutOfRange { qubit, n_qubits: self.n_qubits });
        }
        let p0: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> qubit) & 1 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(p0 / self.norm_sq())
    }

    /// Computational-basis probabilities of the full register.
    pub fn probabilities(&self) -> Vec<f64> {
        let n = self.norm_sq();
        self.amps.iter().map(|a| a.norm_sqr() / n).collect()
    }
}

pub(crate) fn norm_sq(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}
