use mbqc_core::gates::{
    gate_fig1c, gate_fig1d, gate_fig1e, pattern_fig1c, pattern_fig1d, pattern_fig1e_xy, pattern_fig1e_xz,
    unitary_xx, FIG1E_TILTED_NODE,
};
use mbqc_core::mbqc::{
    all_outcomes, extract_kraus, naive_flip_fidelity, operator_from_choi, random_outcomes, random_pattern,
    run_pattern, MeasurementBasis, MeasurementPattern, OutcomePolicy,
};
use mbqc_core::numeric::{vn_entropy, ComplexMatrix, StateVector};
use mbqc_core::LinearMap;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eps_grid() -> impl Iterator<Item = f64> {
    (0..=15).map(|k| 0.1 * k as f64)
}

#[test]
fn single_qubit_gates_match_pattern_kraus() {
    for eps in eps_grid() {
        for (s1, s2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let kc = extract_kraus(&pattern_fig1c(eps), &[s1, s2]).unwrap();
            assert!(kc.equal_up_to_scalar(&gate_fig1c(eps, s1, s2), 1e-10).unwrap(), "1c eps {eps} s ({s1},{s2})");
            let kd = extract_kraus(&pattern_fig1d(eps), &[s1, s2]).unwrap();
            assert!(kd.equal_up_to_scalar(&gate_fig1d(eps, s1, s2), 1e-10).unwrap(), "1d eps {eps} s ({s1},{s2})");
            // POVM normalization is exact, not just up to scalar
            let norm_c = kc.frobenius_norm();
            assert!((norm_c - gate_fig1c(eps, s1, s2).frobenius_norm()).abs() < 1e-12);
        }
    }
}

fn tilted_outcomes(pattern: &MeasurementPattern, s: u8) -> Vec<u8> {
    pattern.order().iter().map(|&v| if v == FIG1E_TILTED_NODE { s } else { 0 }).collect()
}

#[test]
fn two_qubit_grid_reproduces_closed_forms() {
    for eps in eps_grid() {
        let p = pattern_fig1e_xz(eps);
        for s in 0..2 {
            let k = extract_kraus(&p, &tilted_outcomes(&p, s)).unwrap();
            assert!(k.equal_up_to_scalar(&gate_fig1e(eps, s), 1e-10).unwrap(), "eps {eps} s {s}");
        }
        let phi = 2.0 * eps;
        let q = pattern_fig1e_xy(phi);
        let k = extract_kraus(&q, &tilted_outcomes(&q, 0)).unwrap();
        assert!(k.equal_up_to_scalar(&unitary_xx(phi), 1e-10).unwrap(), "phi {phi}");
    }
}

#[test]
fn run_fig1d_matches_projector_algebra() {
    let eps = 0.25;
    let psi = StateVector::plus(1);
    let rec = run_pattern(&pattern_fig1d(eps), &psi, &OutcomePolicy::Postselect(vec![0, 0])).unwrap();
    let m = gate_fig1d(eps, 0, 0);
    let expected = m.apply(&psi).unwrap();
    assert!((rec.joint_probability - expected.norm_sq()).abs() < 1e-12);
    assert!((rec.output_state.fidelity(&expected).unwrap() - 1.0).abs() < 1e-12);
    // direct evaluation: (cos²(θ/2) + sin²(θ/2)) / 4 with |+> input
    let a = mbqc_core::gates::a_of_eps(eps);
    assert!((rec.joint_probability - 0.25 * (a * a + 1.0) / (1.0 + a * a)).abs() < 1e-12);
}

#[test]
fn choi_spectrum_examples() {
    let (map, data) = operator_from_choi(&pattern_fig1d(0.0), &[0, 0]).unwrap();
    assert!(map.equal_up_to_scalar(&LinearMap::identity(1), 1e-12).unwrap());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((data.coefficients[0] - r).abs() < 1e-12 && (data.coefficients[1] - r).abs() < 1e-12);

    let a: f64 = 1.287424;
    let (_, data) = operator_from_choi(&pattern_fig1d(0.25), &[0, 0]).unwrap();
    let w = data.weights();
    assert!((w[0] - a * a / (1.0 + a * a)).abs() < 1e-5);
    assert!((w[1] - 1.0 / (1.0 + a * a)).abs() < 1e-5);
}

#[test]
fn choi_and_kraus_agree_on_random_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let p = random_pattern(&mut rng, 8);
        let s = random_outcomes(&mut rng, &p);
        let k = extract_kraus(&p, &s).unwrap();
        let (n, data) = operator_from_choi(&p, &s).unwrap();
        assert!(k.equal_up_to_scalar(&n, 1e-9).unwrap());
        assert!((n.frobenius_norm() - 1.0).abs() < 1e-10);
        let total: f64 = data.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}

#[test]
fn kraus_families_are_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let p = random_pattern(&mut rng, 6);
        let d = 1usize << p.n_inputs();
        let mut sum = ComplexMatrix::zeros(d, d);
        for s in all_outcomes(p.n_measured()) {
            let k = extract_kraus(&p, &s).unwrap();
            sum += k.matrix().adjoint() * k.matrix();
        }
        assert!((sum - ComplexMatrix::identity(d, d)).norm() < 1e-10);
    }
}

#[test]
fn measurement_order_does_not_change_kraus() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let p = random_pattern(&mut rng, 7);
        let s = random_outcomes(&mut rng, &p);
        let mut order = p.order().to_vec();
        let mut perm: Vec<usize> = (0..order.len()).collect();
        perm.reverse();
        order = perm.iter().map(|&i| order[i]).collect();
        let s_rev: Vec<u8> = perm.iter().map(|&i| s[i]).collect();
        let q = p.with_order(order).unwrap();
        let a = extract_kraus(&p, &s).unwrap();
        let b = extract_kraus(&q, &s_rev).unwrap();
        assert!(a.equal_up_to_scalar(&b, 1e-10).unwrap());
    }
}

#[test]
fn sampled_frequencies_follow_born_rule() {
    let p = pattern_fig1d(0.6);
    let psi = StateVector::bloch(1.0, 0.4);
    let shots = 100_000u64;
    let mut counts = [0u64; 4];
    for seed in 0..shots {
        let rec = run_pattern(&p, &psi, &OutcomePolicy::Sample { seed }).unwrap();
        counts[(rec.outcomes[0] + 2 * rec.outcomes[1]) as usize] += 1;
    }
    for (idx, s) in all_outcomes(2).enumerate() {
        let prob = extract_kraus(&p, &s).unwrap().expectation_dagger_self(&psi).unwrap();
        let sd = (shots as f64 * prob * (1.0 - prob)).sqrt();
        let diff = (counts[idx] as f64 - shots as f64 * prob).abs();
        assert!(diff <= 4.0 * sd, "outcome {s:?}: {} vs {}", counts[idx], shots as f64 * prob);
    }
}

#[test]
fn outcome_independent_operator_entanglement() {
    for &(theta, phi) in &[(0.3, 0.0), (1.0, 2.0), (2.5, 4.0), (std::f64::consts::FRAC_PI_2, 1.0)] {
        let p = MeasurementPattern::chain(&[MeasurementBasis::x(), MeasurementBasis::new(theta, phi)]);
        let q = (theta / 2.0).sin().powi(2);
        let h = if q <= 0.0 || q >= 1.0 { 0.0 } else { -q * q.ln() - (1.0 - q) * (1.0 - q).ln() };
        for s in all_outcomes(2) {
            let (_, data) = operator_from_choi(&p, &s).unwrap();
            let sop = vn_entropy(&data.coefficients).unwrap();
            assert!((sop - h).abs() < 1e-10, "theta {theta} s {s:?}: {sop} vs {h}");
        }
    }
}

#[test]
fn naive_flip_fails_off_axis() {
    let f = naive_flip_fidelity(MeasurementBasis::new(std::f64::consts::FRAC_PI_4, 0.0)).unwrap();
    assert!(f < 1.0 - 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn state_operator_duality(seed in 0u64..u64::MAX) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_pattern(&mut rng, 7);
        let s = random_outcomes(&mut rng, &p);
        let psi = StateVector::random(p.n_inputs(), &mut rng);
        let (n, _) = operator_from_choi(&p, &s).unwrap();
        let predicted = n.apply(&psi).unwrap();
        prop_assume!(predicted.norm_sq() > 1e-10);
        let rec = run_pattern(&p, &psi, &OutcomePolicy::Postselect(s)).unwrap();
        let f = rec.output_state.fidelity(&predicted).unwrap();
        prop_assert!(f >= 1.0 - 1e-10);
    }

    #[test]
    fn two_qubit_grid_any_angle(eps in -3.0..3.0f64) {
        let p = pattern_fig1e_xz(eps);
        let k = extract_kraus(&p, &tilted_outcomes(&p, 0)).unwrap();
        prop_assert!(k.equal_up_to_scalar(&gate_fig1e(eps, 0), 1e-10).unwrap());
    }
}
