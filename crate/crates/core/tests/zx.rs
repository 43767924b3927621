use mbqc_core::gates::{byproduct, gate_fig1c, gate_fig1d, gate_fig1e, pattern_fig1c, pattern_fig1d, pattern_fig1e_xy, pattern_fig1e_xz, unitary_xx, FIG1E_TILTED_NODE};
use mbqc_core::mbqc::{all_outcomes, extract_kraus, MeasurementBasis};
use mbqc_core::numeric::{equal_up_to_scalar, scalar_deviation, std_gates, ComplexMatrix, C64};
use mbqc_core::zx::*;
use mbqc_core::LinearMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && (a - b).norm() <= tol
}

fn chain(phases: &[(bool, f64)]) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let mut prev = d.add_input();
    for &(green, p) in phases {
        let v = if green { d.add_green(p) } else { d.add_red(p) };
        d.add_edge(prev, v, EdgeKind::Plain);
        prev = v;
    }
    let o = d.add_output();
    d.add_edge(prev, o, EdgeKind::Plain);
    d
}

#[test]
fn fusion_in_series_is_exact() {
    let d = chain(&[(true, 0.4), (true, 1.1)]);
    let wire = d.edges().find(|(_, e)| d.is_spider(e.a) && d.is_spider(e.b)).unwrap().0;
    let fused = fuse_spiders(&d, wire).unwrap();
    assert_eq!(fused.n_spiders(), 1);
    let want = std_gates::diag(&[c(1.0, 0.0), C64::from_polar(1.0, 1.5)]);
    assert!(close(&fused.to_matrix().unwrap(), &want, 1e-12));
    assert!(close(&d.to_matrix().unwrap(), &want, 1e-12));
    let zero = chain(&[(true, 0.0), (true, 0.0)]);
    let w = zero.edges().find(|(_, e)| zero.is_spider(e.a) && zero.is_spider(e.b)).unwrap().0;
    let (_, v) = fuse_spiders(&zero, w).unwrap().spiders().next().map(|(i, v)| (i, *v)).unwrap();
    assert_eq!(v.phase, 0.0);
}

#[test]
fn fusion_rejects_mixed_colours_and_hadamard() {
    let d = chain(&[(true, 0.4), (false, 1.1)]);
    let w = d.edges().find(|(_, e)| d.is_spider(e.a) && d.is_spider(e.b)).unwrap().0;
    assert!(fuse_spiders(&d, w).is_err());
    let mut h = ZxDiagram::new();
    let (a, b) = (h.add_green(0.0), h.add_green(0.0));
    let e = h.add_edge(a, b, EdgeKind::Hadamard);
    assert!(fuse_spiders(&h, e).is_err());
}

#[test]
fn fusion_exact_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let d = random_diagram(&mut rng, 6, 10);
        for r in applicable(&d) {
            if let Rewrite::Fuse(_) = r {
                let after = apply(&d, r).unwrap();
                assert!(close(&d.to_matrix().unwrap(), &after.to_matrix().unwrap(), 1e-12 * (1.0 + d.to_matrix().unwrap().norm())));
                checked += 1;
            }
        }
    }
}

#[test]
fn colour_change_examples() {
    let gamma = 0.9;
    let mut red = ZxDiagram::new();
    let i = red.add_input();
    let r = red.add_red(gamma);
    red.add_edge(i, r, EdgeKind::Plain);
    let changed = color_change(&red, r).unwrap();
    assert_eq!(changed.vertex(r).unwrap().kind, VertexKind::Green);
    assert!(changed.edges().all(|(_, e)| e.kind == EdgeKind::Hadamard));
    assert!(verify_equiv(&red, &changed, 1e-10).unwrap().equivalent);
    let twice = color_change(&changed, r).unwrap();
    assert!(verify_equiv(&red, &twice, 1e-10).unwrap().equivalent);
    assert_eq!(twice, red);
}

#[test]
fn cz_from_spiders() {
    let f = ZxFile::parse("inputs: a b\noutputs: c d\ng 0 : a c x\ng 0 : b d x\nwire x h\n").unwrap();
    let d = f.instantiate(&Default::default()).unwrap();
    assert!(verify_equiv(&d, &std_gates::cz(), 1e-10).unwrap().equivalent);
}

#[test]
fn rewrites_are_sound_on_random_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let mut applied = 0;
    let mut diagrams = 0;
    while applied < 200 || diagrams < 200 {
        let d = random_diagram(&mut rng, 6, 10);
        diagrams += 1;
        let before = d.to_matrix().unwrap();
        for r in applicable(&d) {
            let after = apply(&d, r).unwrap().to_matrix().unwrap();
            let scale = 1.0 + before.norm();
            // every rule here is scalar-exact
            assert!(close(&before, &after, 1e-10 * scale), "{r:?} changed the matrix");
            applied += 1;
        }
    }
}

#[test]
fn simplify_preserves_semantics_and_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let d = random_diagram(&mut rng, 6, 10);
        let s = simplify(&d);
        let (a, b) = (d.to_matrix().unwrap(), s.to_matrix().unwrap());
        assert!(close(&a, &b, 1e-10 * (1.0 + a.norm())));
        assert_eq!(simplify(&s), s);
    }
}

#[test]
fn teleportation_reduces_to_byproduct() {
    for s1 in 0..2u8 {
        for s2 in 0..2u8 {
            let d = teleport_diagram(s1, s2);
            let s = simplify(&d);
            assert!(verify_equiv(&s, &byproduct(s1, s2), 1e-10).unwrap().equivalent);
            // Z^{s1} is one green spider, X^{s2} a green spider between two H edges
            assert_eq!(s.n_spiders(), usize::from(s1) + usize::from(s2));
            // the same diagram built from the 3-chain pattern
            let p = pattern_to_zx(&mbqc_core::mbqc::MeasurementPattern::chain(&[MeasurementBasis::x(), MeasurementBasis::x()]), &[s1, s2]).unwrap();
            assert!(verify_equiv(&simplify(&p), &byproduct(s1, s2), 1e-10).unwrap().equivalent);
        }
    }
    let s = simplify(&teleport_diagram(0, 0));
    assert_eq!(s.n_spiders(), 0);
    assert_eq!(s.n_edges(), 1);
    assert!(verify_equiv(&s, &LinearMap::identity(1), 1e-12).unwrap().equivalent);
    let z = simplify(&teleport_diagram(1, 0));
    assert!(verify_equiv(&z, &std_gates::pauli_z(), 1e-12).unwrap().equivalent);
}

#[test]
fn red_expansion_examples() {
    let r2 = std::f64::consts::SQRT_2;
    for gamma in [0.0, PI, 0.7, 2.9] {
        let sum = red_measurement_expand(gamma).to_matrix().unwrap();
        let red = spider(false, gamma, 1, 0).to_matrix().unwrap();
        assert!(close(&sum, &(red * c(r2, 0.0)), 1e-12));
    }
    let zero = red_measurement_expand(0.0).to_matrix().unwrap();
    assert!(zero[(0, 1)].norm() < 1e-12 && zero[(0, 0)].norm() > 1.0);
    let one = red_measurement_expand(PI).to_matrix().unwrap();
    assert!(one[(0, 0)].norm() < 1e-12 && one[(0, 1)].norm() > 1.0);
}

#[test]
fn xz_effect_matches_measurement_bra() {
    for theta in [0.0, 0.3, FRAC_PI_2, 2.0, 4.0] {
        for s in 0..2u8 {
            let eff = xz_measurement_effect(theta, s).to_matrix().unwrap();
            let bra = MeasurementBasis::new(theta, 0.0).bra(s);
            let want = ComplexMatrix::from_row_slice(1, 2, &bra);
            assert!(equal_up_to_scalar(&eff, &want, 1e-10).unwrap(), "theta {theta} s {s}");
            let direct = spider(true, FRAC_PI_2, 1, 1).then(&spider(false, theta + f64::from(s) * PI, 1, 0)).unwrap();
            assert!(close(&eff, &direct.to_matrix().unwrap(), 1e-12));
        }
        let e0 = xz_measurement_effect(theta, 1).to_matrix().unwrap();
        let e1 = xz_measurement_effect(theta + PI, 0).to_matrix().unwrap();
        assert!(close(&e0, &e1, 1e-12));
    }
}

#[test]
fn general_effects_match_bras() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let b = mbqc_core::mbqc::random_basis(&mut rng);
        for s in 0..2u8 {
            let want = ComplexMatrix::from_row_slice(1, 2, &b.bra(s));
            assert!(equal_up_to_scalar(&measurement_effect(&b, s).to_matrix().unwrap(), &want, 1e-10).unwrap());
            assert!(equal_up_to_scalar(&measurement_effect_sum(&b, s).to_matrix().unwrap(), &want, 1e-10).unwrap());
        }
    }
    for phi in [0.0, 1.0, 4.0] {
        for theta in [FRAC_PI_2, 3.0 * FRAC_PI_2] {
            let b = MeasurementBasis::new(theta, phi);
            let e = measurement_effect(&b, 1);
            assert_eq!(e.n_spiders(), 1);
            let want = ComplexMatrix::from_row_slice(1, 2, &b.bra(1));
            assert!(equal_up_to_scalar(&e.to_matrix().unwrap(), &want, 1e-10).unwrap());
        }
    }
}

fn diagonal_form(theta: f64, s1: u8, s2: u8) -> ComplexMatrix {
    let e = C64::from_polar(1.0, theta + f64::from(s1) * PI);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let m = std_gates::diag(&[one + e, i - i * e]);
    if s2 == 1 {
        std_gates::pauli_x() * m
    } else {
        m
    }
}

#[test]
fn zx_pipeline_matches_kraus_for_chains() {
    for k in 0..=15 {
        let eps = 0.1 * k as f64;
        for s in all_outcomes(2) {
            for (pattern, gate) in [(pattern_fig1c(eps), gate_fig1c(eps, s[0], s[1])), (pattern_fig1d(eps), gate_fig1d(eps, s[0], s[1]))] {
                let kraus = extract_kraus(&pattern, &s).unwrap();
                let d = pattern_to_zx(&pattern, &s).unwrap();
                assert!(verify_equiv(&d, &kraus, 1e-9).unwrap().equivalent);
                let sum = pattern_to_zx_sum(&pattern, &s).unwrap();
                assert!(verify_equiv(&sum, &kraus, 1e-9).unwrap().equivalent);
                assert!(verify_equiv(&sum.simplify(), &gate, 1e-9).unwrap().equivalent);
            }
        }
    }
}

#[test]
fn fig1d_sum_reproduces_diagonal_form() {
    for theta in [0.3, 1.0, FRAC_PI_2, 2.5] {
        let eps = FRAC_PI_2 - theta;
        for s in all_outcomes(2) {
            let sum = pattern_to_zx_sum(&pattern_fig1d(eps), &s).unwrap().simplify();
            // an X-basis site has a single-term effect
            let expected = if (theta - FRAC_PI_2).abs() < 1e-12 { 1 } else { 2 };
            assert_eq!(sum.terms().len(), expected);
            for (_, term) in sum.terms() {
                assert!(term.spiders().all(|(_, v)| v.kind == VertexKind::Green));
            }
            let m = diagonal_form(theta, s[0], s[1]);
            assert!(verify_equiv(&sum, &m, 1e-10).unwrap().equivalent, "theta {theta} s {s:?}");
        }
    }
}

#[test]
fn bubble_acts_as_tangent_filter() {
    for eps in [0.1, 0.5, 1.0, 1.4] {
        let m = bubble_diagram(eps).to_matrix().unwrap();
        let t = (eps / 2.0).tan();
        // |0> -> |0> - t|1>, |1> -> -t|0> + |1>, one shared scalar
        let want = ComplexMatrix::identity(2, 2) - std_gates::pauli_x() * c(t, 0.0);
        let z = mbqc_core::numeric::best_scalar(&m, &want).unwrap();
        assert!(close(&m, &(want * z), 1e-12));
    }
}

#[test]
fn fig7_matches_two_qubit_forms() {
    for k in 0..10 {
        let eps = 0.15 * k as f64 + 0.05;
        let d = fig7_diagram(eps);
        let e = verify_equiv(&d, &gate_fig1e(eps, 0), 1e-10).unwrap();
        assert!(e.equivalent && e.deviation < 1e-10);
        let grid = pattern_fig1e_xz(eps);
        let outcomes: Vec<u8> = grid.order().iter().map(|_| 0).collect();
        let zx = pattern_to_zx(&grid, &outcomes).unwrap();
        assert!(verify_equiv(&zx, &gate_fig1e(eps, 0), 1e-9).unwrap().equivalent);
        let tilted: Vec<u8> = grid.order().iter().map(|&v| u8::from(v == FIG1E_TILTED_NODE)).collect();
        let zx1 = pattern_to_zx(&grid, &tilted).unwrap();
        assert!(verify_equiv(&zx1, &extract_kraus(&grid, &tilted).unwrap(), 1e-9).unwrap().equivalent);
        let phi = 0.3 * k as f64;
        let xy = pattern_fig1e_xy(phi);
        let zx = pattern_to_zx(&xy, &outcomes).unwrap();
        assert!(verify_equiv(&simplify(&zx), &unitary_xx(phi), 1e-9).unwrap().equivalent);
    }
}

#[test]
fn inequivalent_and_mismatched() {
    let e = verify_equiv(&LinearMap::identity(1), &std_gates::pauli_x(), 1e-10).unwrap();
    assert!(!e.equivalent);
    assert!(matches!(verify_equiv(&teleport_diagram(0, 0), &std_gates::cz(), 1e-10), Err(ZxError::SignatureMismatch { .. })));
}

#[test]
fn matrix_deviation_is_tiny_for_fig7() {
    let m = fig7_diagram(0.7).to_matrix().unwrap();
    assert!(scalar_deviation(&m, gate_fig1e(0.7, 0).matrix()).unwrap() < 1e-12);
}
