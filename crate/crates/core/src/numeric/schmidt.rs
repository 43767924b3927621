use super::{ComplexMatrix, NumericError, Result, StateVector, C64, SCHMIDT_CUTOFF};

/// Schmidt decomposition `|ψ⟩ = Σ_α μ_α |α;L⟩ ⊗ |α;R⟩`.
#[derive(Clone, Debug)]
pub struct SchmidtData {
    /// Non-increasing, each above the cutoff.
    pub coefficients: Vec<f64>,
    /// States over `left_qubits` (bit `j` is `left_qubits[j]`).
    pub left_basis: Vec<StateVector>,
    pub right_basis: Vec<StateVector>,
    pub left_qubits: Vec<usize>,
    pub right_qubits: Vec<usize>,
}

impl SchmidtData {
    /// Squared coefficients, i.e. the entanglement spectrum.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|m| m * m).collect()
    }

    /// Rebuilds `Σ μ_α |α;L⟩⊗|α;R⟩` in the original qubit order.
    pub fn reassemble(&self) -> StateVector {
        let n = self.left_qubits.len() + self.right_qubits.len();
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        for (alpha, &mu) in self.coefficients.iter().enumerate() {
            let (l, r) = (&self.left_basis[alpha], &self.right_basis[alpha]);
            for (li, la) in l.amplitudes().iter().enumerate() {
                let lbits = scatter(li, &self.left_qubits);
                for (ri, ra) in r.amplitudes().iter().enumerate() {
                    amps[lbits | scatter(ri, &self.right_qubits)] += la * ra * mu;
                }
            }
        }
        StateVector::raw(amps).expect("power-of-two length")
    }
}

fn scatter(local: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().map(|(j, &q)| ((local >> j) & 1) << q).sum()
}

fn gather(global: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().map(|(j, &q)| ((global >> q) & 1) << j).sum()
}

/// Schmidt decomposition across `left_qubits` versus the rest.
pub fn schmidt(state: &StateVector, left_qubits: &[usize]) -> Result<SchmidtData> {
    let n = state.n_qubits();
    let mut left: Vec<usize> = left_qubits.to_vec();
    left.sort_unstable();
    for w in left.windows(2) {
        if w[0] == w[1] {
            return Err(NumericError::DuplicateQubit(w[0]));
        }
    }
    if let Some(&q) = left.iter().find(|&&q| q >= n) {
        return Err(NumericError::QubitOutOfRange { qubit: q, n_qubits: n });
    }
    if left.is_empty() || left.len() == n {
        return Err(NumericError::InvalidPartition);
    }
    let right: Vec<usize> = (0..n).filter(|q| !left.contains(q)).collect();

    let (dl, dr) = (1usize << left.len(), 1usize << right.len());
    let mut m = ComplexMatrix::zeros(dl, dr);
    for (i, a) in state.amplitudes().iter().enumerate() {
        m[(gather(i, &left), gather(i, &right))] = *a;
    }
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let mut data = SchmidtData {
        coefficients: Vec::new(),
        left_basis: Vec::new(),
        right_basis: Vec::new(),
        left_qubits: left,
        right_qubits: right,
    };
    for alpha in order {
        let mu = svd.singular_values[alpha];
        if mu < SCHMIDT_CUTOFF {
            continue;
        }
        data.coefficients.push(mu);
        data.left_basis.push(StateVector::raw(u.column(alpha).iter().cloned().collect())?);
        data.right_basis.push(StateVector::raw(v_t.row(alpha).iter().cloned().collect())?);
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn bell_state_has_equal_coefficients() {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let bell = StateVector::new(vec![h, C64::new(0., 0.), C64::new(0., 0.), h]).unwrap();
        let s = schmidt(&bell, &[0]).unwrap();
        assert_eq!(s.coefficients.len(), 2);
        for mu in &s.coefficients {
            assert!((mu - FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_has_single_coefficient() {
        let s = schmidt(&StateVector::plus(2), &[0]).unwrap();
        assert_eq!(s.coefficients.len(), 1);
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_errors() {
        let st = StateVector::plus(2);
        assert!(matches!(schmidt(&st, &[]), Err(NumericError::InvalidPartition)));
        assert!(matches!(schmidt(&st, &[0, 1]), Err(NumericError::InvalidPartition)));
        assert!(matches!(schmidt(&st, &[0, 0]), Err(NumericError::DuplicateQubit(0))));
    }

    #[test]
    fn reassembly_and_orthonormality_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=10usize {
            let st = StateVector::random(n, &mut rng);
            let left: Vec<usize> = (0..n).filter(|q| q % 3 != 1).take(n - 1).collect();
            let s = schmidt(&st, &left).unwrap();
            let w: f64 = s.weights().iter().sum();
            assert!((w - 1.0).abs() < 1e-10);
            assert!(s.coefficients.windows(2).all(|p| p[0] >= p[1]));
            let back = s.reassemble();
            let err: f64 = back
                .amplitudes()
                .iter()
                .zip(st.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "n={n} err={err}");
            for basis in [&s.left_basis, &s.right_basis] {
                for (i, a) in basis.iter().enumerate() {
                    for (j, b) in basis.iter().enumerate() {
                        let ip = a.inner(b).unwrap();
                        let target = if i == j { 1.0 } else { 0.0 };
                        assert!((ip - C64::new(target, 0.0)).norm() < 1e-10);
                    }
                }
            }
        }
    }
}
