//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Reference matrices are rebuilt here from Pauli algebra rather than
//! taken from the library's gate constructors.

use mbqc_core::angle::Vars;
use mbqc_core::estimators::{exact_renyi2_op, swap_test_renyi2};
use mbqc_core::fixtures;
use mbqc_core::gates::{gate_fig1d, pattern_fig1c, pattern_fig1d, pattern_fig1e_xy, BlochState};
use mbqc_core::mbqc::{
    all_outcomes, extract_kraus, pattern_operator_entropy, random_outcomes, random_pattern, run_pattern,
    MeasurementBasis, MeasurementPattern, OutcomePolicy, Role,
};
use mbqc_core::numeric::{schmidt, scalar_deviation, std_gates, vn_entropy, ComplexMatrix, StateVector, C64};
use mbqc_core::protocols::{
    bracket_sum, ite_chain, p_attempt, p_success, p_success_limit, simulate_feedback, ByproductPolicy, IteMode,
};
use mbqc_core::zx::{applicable, apply, pattern_to_zx_sum, random_diagram, simplify, teleport_diagram, verify_equiv};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::process::Command;
use std::time::{Duration, Instant};

const TOL: f64 = 1e-10;

type Check = Result<String, String>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn dev(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, String> {
    scalar_deviation(a, b).map_err(err)
}

fn run(id: usize, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let mut result = f();
    let elapsed = start.elapsed();
    if let (Ok(_), Some(b)) = (&result, budget) {
        if elapsed > b {
            result = Err(format!("runtime {:.2} s over the {} s budget", elapsed.as_secs_f64(), b.as_secs()));
        }
    }
    let (tag, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} [{id:>2}] {name} ({:.2} s): {detail}", elapsed.as_secs_f64());
    result.is_ok()
}

fn pow(m: ComplexMatrix, s: u8) -> ComplexMatrix {
    if s == 1 {
        m
    } else {
        ComplexMatrix::identity(m.nrows(), m.ncols())
    }
}

/// `diag(cos θ/2, sin θ/2)` for s = 0, `diag(sin θ/2, −cos θ/2)` for s = 1.
fn povm(theta: f64, s: u8) -> ComplexMatrix {
    let (sh, ch) = (theta / 2.0).sin_cos();
    if s == 0 {
        std_gates::diag(&[c(ch, 0.0), c(sh, 0.0)])
    } else {
        std_gates::diag(&[c(sh, 0.0), c(-ch, 0.0)])
    }
}

fn hadamard_conjugated_povm(eps: f64, s1: u8, s2: u8) -> ComplexMatrix {
    let h = std_gates::hadamard();
    &h * povm(FRAC_PI_2 - eps, s2) * &h * pow(std_gates::pauli_z(), s1)
}

fn byproduct_after_povm(eps: f64, s1: u8, s2: u8) -> ComplexMatrix {
    pow(std_gates::pauli_x(), s2) * povm(FRAC_PI_2 - eps, s1)
}

/// `(cos(ε/2)·I − sin(ε/2)·X₁X₂)·SWAP`.
fn two_qubit_xz(eps: f64) -> ComplexMatrix {
    let (sh, ch) = (eps / 2.0).sin_cos();
    (ComplexMatrix::identity(4, 4) * c(ch, 0.0) - std_gates::xx() * c(sh, 0.0)) * std_gates::swap()
}

/// `e^{−i(φ/2)X₁X₂}·SWAP`.
fn two_qubit_xy(phi: f64) -> ComplexMatrix {
    let (sh, ch) = (phi / 2.0).sin_cos();
    (ComplexMatrix::identity(4, 4) * c(ch, 0.0) - std_gates::xx() * c(0.0, sh)) * std_gates::swap()
}

fn binary_entropy(p: f64) -> f64 {
    let h = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    h(p) + h(1.0 - p)
}

fn gate_identities() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..=15 {
        let eps = 0.1 * k as f64;
        for s in all_outcomes(2) {
            let kc = extract_kraus(&pattern_fig1c(eps), &s).map_err(err)?;
            let kd = extract_kraus(&pattern_fig1d(eps), &s).map_err(err)?;
            for (k, want, label) in [(kc, hadamard_conjugated_povm(eps, s[0], s[1]), "1c"), (kd, byproduct_after_povm(eps, s[0], s[1]), "1d")] {
                let d = dev(k.matrix(), &want)?;
                ensure(d <= TOL, || format!("{label} eps {eps} outcomes {s:?}: deviation {d:.3e}"))?;
                worst = worst.max(d);
            }
        }
    }
    Ok(format!("64 Kraus operators per pattern family, worst deviation {worst:.2e}"))
}

fn povm_completeness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let p = random_pattern(&mut rng, 8);
        let dim = 1usize << p.n_inputs();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for s in all_outcomes(p.n_measured()) {
            let k = extract_kraus(&p, &s).map_err(err)?;
            sum += k.matrix().adjoint() * k.matrix();
        }
        let d = (sum - ComplexMatrix::identity(dim, dim)).camax();
        ensure(d <= TOL, || format!("pattern {i} ({} nodes): max |ΣK†K − I| = {d:.3e}", p.n_nodes()))?;
        worst = worst.max(d);
    }
    Ok(format!("50 patterns, worst entry {worst:.2e}"))
}

/// `N̂ = (⊗ ⟨m_s|) Π CZ |ψ_in⟩ ⊗ |+⟩…`, summed over computational assignments of every node.
fn kraus_by_definition(p: &MeasurementPattern, s: &[u8]) -> ComplexMatrix {
    let n = p.n_nodes();
    let (ins, outs) = (p.inputs(), p.outputs());
    let bit = |x: usize, q: usize| (x >> q) & 1;
    let pack = |x: usize, nodes: &[usize]| nodes.iter().enumerate().map(|(j, &q)| bit(x, q) << j).sum::<usize>();
    let bras: Vec<(usize, [C64; 2])> = p
        .order()
        .iter()
        .zip(s)
        .map(|(&node, &sk)| {
            let b = p.basis(node).expect("measured node has a basis");
            let (sh, ch) = (b.theta() / 2.0).sin_cos();
            let e = C64::from_polar(1.0, -b.phi());
            let row = if sk == 0 { [c(ch, 0.0), e * sh] } else { [c(sh, 0.0), -e * ch] };
            (node, row)
        })
        .collect();
    let scale = 0.5f64.powf((n - ins.len()) as f64 / 2.0);
    let mut m = ComplexMatrix::zeros(1 << outs.len(), 1 << ins.len());
    for x in 0..(1usize << n) {
        let odd = p.edges().iter().filter(|&&(u, v)| bit(x, u) & bit(x, v) == 1).count() % 2 == 1;
        let mut amp = c(if odd { -scale } else { scale }, 0.0);
        for (node, row) in &bras {
            amp *= row[bit(x, *node)];
        }
        m[(pack(x, &outs), pack(x, &ins))] += amp;
    }
    m
}

fn duality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let p = random_pattern(&mut rng, 8);
        let s = random_outcomes(&mut rng, &p);
        let psi = if p.n_inputs() == 0 { StateVector::vacuum() } else { StateVector::random(p.n_inputs(), &mut rng) };
        let rec = run_pattern(&p, &psi, &OutcomePolicy::Postselect(s.clone())).map_err(err)?;
        let n = kraus_by_definition(&p, &s);
        let amps = psi.amplitudes();
        let v = (0..n.nrows()).map(|r| (0..n.ncols()).map(|k| n[(r, k)] * amps[k]).sum()).collect();
        let want = StateVector::from_unnormalized(v).map_err(err)?;
        let f = rec.output_state.fidelity(&want).map_err(err)?;
        ensure(f >= 1.0 - TOL, || format!("triple {i}: fidelity {f}"))?;
        worst = worst.max(1.0 - f);
    }
    Ok(format!("100 triples, worst 1 − F = {worst:.2e}"))
}

fn chain3(theta: f64) -> MeasurementPattern {
    let bases = BTreeMap::from([(1, MeasurementBasis::new(theta, 0.0))]);
    MeasurementPattern::new(vec![Role::Output, Role::Middle, Role::Output], vec![(0, 1), (1, 2)], bases, None)
        .expect("valid chain")
}

fn end_entropy(theta: f64, s: u8) -> Result<f64, String> {
    let rec = run_pattern(&chain3(theta), &StateVector::vacuum(), &OutcomePolicy::Postselect(vec![s])).map_err(err)?;
    let mu = schmidt(&rec.output_state, &[0]).map_err(err)?.coefficients;
    vn_entropy(&mu).map_err(err)
}

fn entanglement_law() -> Check {
    let mut worst: f64 = 0.0;
    for k in 1..100 {
        let theta = PI * k as f64 / 100.0;
        let want = binary_entropy((theta / 2.0).sin().powi(2));
        for s in 0..2u8 {
            let got = end_entropy(theta, s)?;
            ensure((got - want).abs() <= TOL, || format!("theta {theta} s {s}: {got} vs {want}"))?;
            worst = worst.max((got - want).abs());
        }
    }
    let mid = end_entropy(FRAC_PI_2, 0)?;
    ensure((mid - LN_2).abs() <= TOL, || format!("theta = pi/2 gives {mid}, not ln 2"))?;
    let low = end_entropy(0.0, 0)?;
    ensure(low.abs() <= TOL, || format!("theta = 0 gives {low}"))?;
    let near = end_entropy(1e-4, 0)?;
    ensure(near < 1e-7, || format!("theta = 1e-4 gives {near}"))?;
    let mut ratio: f64 = 0.0;
    for k in 1..=30 {
        let eps = 0.01 * k as f64;
        let s_op = pattern_operator_entropy(&pattern_fig1d(eps), &[0, 0]).map_err(err)?;
        let gap = (s_op - (LN_2 - eps * eps / 2.0)).abs();
        ensure(gap <= 10.0 * eps.powi(4), || format!("eps {eps}: |S_op − (ln 2 − eps²/2)| = {gap:.3e}"))?;
        ratio = ratio.max(gap / eps.powi(4));
    }
    Ok(format!("198 angles, worst {worst:.2e}; weak tilt gap at most {ratio:.3}·eps⁴"))
}

fn two_qubit_gate() -> Check {
    let fig7 = fixtures::diagram("fig7").ok_or("missing fig7 fixture")?;
    let grid = fixtures::pattern("fig1e").ok_or("missing fig1e fixture")?;
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let eps = 0.05 + 0.15 * k as f64;
        let vars = Vars::from([("eps".to_string(), eps)]);
        let want = two_qubit_xz(eps);
        let zx = fig7.instantiate(&vars).map_err(err)?.to_matrix().map_err(err)?;
        let d = dev(&zx, &want)?;
        ensure(d <= TOL, || format!("fig7 diagram eps {eps}: deviation {d:.3e}"))?;
        let p = grid.instantiate(&vars).map_err(err)?;
        let kr = extract_kraus(&p, &vec![0; p.n_measured()]).map_err(err)?;
        let dg = dev(kr.matrix(), &want)?;
        ensure(dg <= TOL, || format!("grid pattern eps {eps}: deviation {dg:.3e}"))?;
        let phi = 0.3 * k as f64 + 0.1;
        let xy = pattern_fig1e_xy(phi);
        let kx = extract_kraus(&xy, &vec![0; xy.n_measured()]).map_err(err)?;
        let dx = dev(kx.matrix(), &two_qubit_xy(phi))?;
        ensure(dx <= TOL, || format!("xy grid phi {phi}: deviation {dx:.3e}"))?;
        worst = worst.max(d).max(dg).max(dx);
    }
    Ok(format!("diagram, grid and xy variant at 10 angles, worst deviation {worst:.2e}"))
}

fn ite() -> Check {
    let eps: f64 = 0.25;
    let a = eps.cos() / (1.0 - eps.sin());
    let mut worst: f64 = 0.0;
    for n in 0..=5 {
        let m = ite_chain(eps, n, IteMode::Matrices, &ByproductPolicy::Postselect).map_err(err)?;
        for policy in [ByproductPolicy::Postselect, ByproductPolicy::Correct { seed: 17 + n as u64 }] {
            let q = ite_chain(eps, n, IteMode::Mbqc, &policy).map_err(err)?;
            let f = m.output.fidelity(&q.output).map_err(err)?;
            let dp = (m.p0 - q.p0).abs();
            ensure(f >= 1.0 - TOL && dp <= TOL, || format!("n {n} {policy:?}: 1 − F = {:.3e}, |Δp0| = {dp:.3e}", 1.0 - f))?;
            worst = worst.max(dp).max(1.0 - f);
        }
    }
    let mut p8 = 0.0;
    for n in 0..=8 {
        let q = ite_chain(eps, n, IteMode::Mbqc, &ByproductPolicy::Postselect).map_err(err)?;
        let x = a.powi(2 * n as i32);
        let want = x / (1.0 + x);
        ensure((q.p0 - want).abs() <= TOL, || format!("n {n}: p0 {} vs closed form {want}", q.p0))?;
        p8 = q.p0;
    }
    ensure((p8 - 0.9827).abs() <= 1e-3, || format!("p0 at n = 8 is {p8}"))?;
    Ok(format!("modes agree to {worst:.2e} for n ≤ 5; p0(8) = {p8:.5}"))
}

fn feedback() -> Check {
    let (a, beta, n_max, trajectories) = (2.0, FRAC_PI_2, 6, 100_000u64);
    let psi = BlochState::new(beta, 0.0);
    let stats = simulate_feedback(a, &StateVector::bloch(beta, 0.0), n_max, trajectories, 0).map_err(err)?;
    let big_n = trajectories as f64;
    let mut worst_z: f64 = 0.0;
    for n in 1..=n_max {
        let pairs = [
            ("p_attempt", p_attempt(a, &psi, n).map_err(err)?, stats.p_attempt(n)),
            ("p_success", p_success(a, &psi, n).map_err(err)?, stats.p_success(n)),
        ];
        for (label, exact, mc) in pairs {
            let sigma = (exact * (1.0 - exact) / big_n).sqrt();
            let gap = (exact - mc).abs();
            ensure(gap <= 4.0 * sigma, || format!("{label}({n}): analytic {exact} vs MC {mc}, 4σ = {:.3e}", 4.0 * sigma))?;
            if sigma > 0.0 {
                worst_z = worst_z.max(gap / sigma);
            }
        }
    }
    let bracket = bracket_sum(a, 6);
    ensure((bracket - 1.0).abs() <= 1e-9, || format!("bracket at n = 6 is {bracket}"))?;
    ensure(stats.min_success_fidelity >= 1.0 - TOL, || format!("success fidelity {}", stats.min_success_fidelity))?;
    // d(ε) = |p(∞) − (1 − 2 sin²(β/2) ε)| is O(ε²), so d/ε halves with ε
    let gap_over_eps = |eps: f64| -> Result<f64, String> {
        let a = eps.cos() / (1.0 - eps.sin());
        let lim = p_success_limit(a, &psi).map_err(err)?;
        Ok((lim - (1.0 - 2.0 * (beta / 2.0).sin().powi(2) * eps)).abs() / eps)
    };
    let mut ratios = Vec::new();
    let mut eps = 0.04;
    while eps > 0.002 {
        ratios.push(gap_over_eps(eps)? / gap_over_eps(eps / 2.0)?);
        eps /= 2.0;
    }
    ensure(ratios.iter().all(|r| (r - 2.0).abs() < 0.1), || format!("d/ε ratios {ratios:?}"))?;
    Ok(format!(
        "worst MC gap {worst_z:.2}σ over n ≤ 6, bracket − 1 = {:.1e}, min fidelity {:.12}, d/ε halving ratios {:.3?}",
        bracket - 1.0,
        stats.min_success_fidelity,
        ratios
    ))
}

fn diagonal_form(theta: f64, s1: u8, s2: u8) -> ComplexMatrix {
    let e = C64::from_polar(1.0, theta + f64::from(s1) * PI);
    let (one, i) = (c(1.0, 0.0), c(0.0, 1.0));
    pow(std_gates::pauli_x(), s2) * std_gates::diag(&[one + e, i - i * e])
}

fn zx_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut applied = 0;
    let mut worst: f64 = 0.0;
    while applied < 200 {
        let d = random_diagram(&mut rng, 6, 10);
        let before = d.to_matrix().map_err(err)?;
        for r in applicable(&d) {
            let after = apply(&d, r).map_err(err)?.to_matrix().map_err(err)?;
            // the rules keep scalars, so compare exactly; this also covers diagrams whose value is zero
            let gap = (&before - &after).norm() / (1.0 + before.norm());
            ensure(gap <= TOL, || format!("{r:?} changed the semantics (relative gap {gap:.3e})"))?;
            worst = worst.max(gap);
            applied += 1;
        }
    }
    for s1 in 0..2u8 {
        for s2 in 0..2u8 {
            let s = simplify(&teleport_diagram(s1, s2));
            let want = pow(std_gates::pauli_x(), s2) * pow(std_gates::pauli_z(), s1);
            let e = verify_equiv(&s, &want, TOL).map_err(err)?;
            ensure(e.equivalent, || format!("teleport ({s1},{s2}) reduces to the wrong map"))?;
        }
    }
    for theta in [0.2, 0.7, 1.2, FRAC_PI_2, 2.0, 2.9] {
        for s in all_outcomes(2) {
            let sum = pattern_to_zx_sum(&pattern_fig1d(FRAC_PI_2 - theta), &s).map_err(err)?.simplify();
            let e = verify_equiv(&sum, &diagonal_form(theta, s[0], s[1]), TOL).map_err(err)?;
            ensure(e.equivalent, || format!("diagonal form theta {theta} outcomes {s:?}: deviation {:.3e}", e.deviation))?;
        }
    }
    Ok(format!("{applied} rewrites, worst relative gap {worst:.2e}; teleportation and diagonal forms reproduced"))
}

fn sweep(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mbqc")).arg("sweep").args(args).output().map_err(err)?;
    ensure(out.status.success(), || {
        format!("`mbqc sweep {}` exited with {}: {}", args.join(" "), out.status, String::from_utf8_lossy(&out.stderr))
    })?;
    String::from_utf8(out.stdout).map_err(err)
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

fn estimators() -> Check {
    // the command's defaults: M = 40, K = 500, 10 repeats, 2·10⁴ SWAP shots, seed 0
    let csv = sweep(&["estimator"])?;
    let rows = data_rows(&csv);
    let header: Vec<&str> = rows[0].split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).ok_or(format!("no column {name}"));
    let (ce, cm, cv) = (col("epsilon")?, col("method")?, col("mean")?);
    let mut exact = BTreeMap::new();
    let mut seen = 0;
    let mut notes = Vec::new();
    for grid_eps in [0.0, 0.3, 0.6, 0.9, 1.2, 1.5] {
        let value = exact_renyi2_op(&gate_fig1d(grid_eps, 0, 0)).map_err(err)?;
        exact.insert((grid_eps * 10.0).round() as i64, value);
    }
    for line in &rows[1..] {
        let f: Vec<&str> = line.split(',').collect();
        let eps: f64 = f[ce].parse().map_err(err)?;
        let mean: f64 = f[cv].parse().map_err(err)?;
        let method = f[cm];
        let want = *exact.get(&((eps * 10.0).round() as i64)).ok_or(format!("unexpected epsilon {eps}"))?;
        let tol = match method {
            "exact" => {
                ensure((mean - want).abs() <= 1e-12, || format!("exact column {mean} vs {want}"))?;
                continue;
            }
            "swap" => 0.05,
            "hamming" | "shadow" => 0.1,
            other => return Err(format!("unexpected method {other}")),
        };
        seen += 1;
        ensure((mean - want).abs() <= tol, || format!("{method} at eps {eps}: {mean} vs exact {want} (±{tol})"))?;
        if eps == 0.0 {
            ensure((mean - LN_2).abs() <= tol, || format!("{method} at eps 0 reads {mean}, not ln 2"))?;
        }
        if (eps - 1.5).abs() < 1e-12 {
            ensure(mean <= 0.05, || format!("{method} at eps 1.5 reads {mean} > 0.05"))?;
            notes.push(format!("{method} {mean:.4}"));
        }
    }
    ensure(seen == 18, || format!("expected 18 estimator rows, found {seen}"))?;
    // the SWAP statistic alone, outside the sweep
    let direct = swap_test_renyi2(&gate_fig1d(0.0, 0, 0), 20_000, 99).map_err(err)?.value;
    ensure((direct - LN_2).abs() <= 0.05, || format!("single SWAP run at eps 0 reads {direct}"))?;
    Ok(format!("18 estimates within tolerance; at eps 1.5: {}", notes.join(", ")))
}

fn reproducibility() -> Check {
    let commands: [&[&str]; 6] = [
        &["sop"],
        &["ite"],
        &["ite", "--byproducts", "correct", "--seed", "5"],
        &["feedback", "--seed", "3"],
        &["estimator", "--seed", "4"],
        &["estimator", "--ensemble", "clifford1q", "--repeats", "3"],
    ];
    let mut total = 0;
    for args in commands {
        let (first, second) = (sweep(args)?, sweep(args)?);
        let (a, b) = (data_rows(&first), data_rows(&second));
        ensure(a.len() > 1, || format!("`{}` produced no data rows", args.join(" ")))?;
        ensure(a == b, || format!("`{}` differs between runs", args.join(" ")))?;
        total += a.len() - 1;
    }
    Ok(format!("6 sweep invocations, {total} data rows identical across reruns"))
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, "gate identities", secs(1), gate_identities),
        run(2, "POVM completeness", secs(30), povm_completeness),
        run(3, "duality", None, duality),
        run(4, "entanglement law", None, entanglement_law),
        run(5, "two-qubit gate", None, two_qubit_gate),
        run(6, "imaginary time evolution", secs(10), ite),
        run(7, "feedback protocol", secs(60), feedback),
        run(8, "ZX soundness", None, zx_soundness),
        run(9, "estimators", secs(120), estimators),
        run(10, "reproducibility", None, reproducibility),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
