use crate::args::{Byproducts, EnsembleArg, EstimatorArgs, FeedbackArgs, IteArgs, SopArgs, SweepOutput};
use crate::error::CliError;
use crate::output::{angle, emit, grid, num, RunManifest, Table};
use crate::Verdict;
use mbqc_core::estimators::{
    exact_renyi2_op, hamming_renyi2_repeated, repeat_estimate, shadow_renyi2_repeated, sub_seed, swap_test_renyi2,
    Ensemble, EstimateReport, HammingAveraging, Method, ShadowConfig,
};
use mbqc_core::gates::{a_of_eps, gate_fig1d, pattern_fig1d, BlochState};
use mbqc_core::mbqc::{extract_kraus, pattern_operator_entropy};
use mbqc_core::numeric::StateVector;
use mbqc_core::protocols::{
    check_feedback_a, ite_chain, ite_p0_closed_form, p_attempt, p_success, p_success_limit, simulate_feedback,
    ByproductPolicy, IteMode,
};
use rayon::prelude::*;

fn finish(table: &Table, manifest: &RunManifest, out: &SweepOutput) -> Result<Verdict, CliError> {
    emit(&table.render(manifest, out.format)?, &out.output)?;
    Ok(Verdict::Ok)
}

/// Runs `f` over the grid in parallel and returns results in grid order.
fn par_rows<T: Send, F>(points: &[f64], f: F) -> Result<Vec<T>, CliError>
where
    F: Fn(usize, f64) -> Result<T, CliError> + Sync,
{
    points.par_iter().enumerate().map(|(i, &x)| f(i, x)).collect()
}

pub fn sop(a: &SopArgs) -> Result<Verdict, CliError> {
    let eps = grid(&a.epsilon, Some(a.steps))?;
    let rows = par_rows(&eps, |_, e| {
        let pattern = pattern_fig1d(e);
        let kraus = extract_kraus(&pattern, &[0, 0])?;
        let s_op = kraus.operator_entropy()?;
        let s_op_choi = pattern_operator_entropy(&pattern, &[0, 0])?;
        let s2 = kraus.operator_renyi2()?;
        Ok(vec![num(e), num(a_of_eps(e)), num(s_op), num(s_op_choi), num(s2)])
    })?;
    let mut table = Table::new(&["epsilon", "a", "s_op", "s_op_choi", "s2_op"]);
    rows.into_iter().for_each(|r| table.push(r));
    let manifest = RunManifest::new("sweep sop", None).param("epsilon", &a.epsilon).param("steps", a.steps).param("outcomes", "00");
    finish(&table, &manifest, &a.out)
}

pub fn ite(a: &IteArgs) -> Result<Verdict, CliError> {
    let eps = angle(&a.epsilon)?;
    let ns: Vec<f64> = (0..=a.steps).map(|n| n as f64).collect();
    let rows = par_rows(&ns, |i, _| {
        let policy = match a.byproducts {
            Byproducts::Postselect => ByproductPolicy::Postselect,
            Byproducts::Correct => ByproductPolicy::Correct { seed: sub_seed(a.seed, i as u64) },
        };
        let m = ite_chain(eps, i, IteMode::Matrices, &ByproductPolicy::Postselect)?;
        let q = ite_chain(eps, i, IteMode::Mbqc, &policy)?;
        Ok(vec![
            i.to_string(),
            num(m.tau),
            num(m.p0),
            num(q.p0),
            num(ite_p0_closed_form(eps, i)),
            num(q.branch_probability),
        ])
    })?;
    let mut table = Table::new(&["n", "tau", "p0_matrices", "p0_mbqc", "p0_closed_form", "branch_probability"]);
    rows.into_iter().for_each(|r| table.push(r));
    let seed = (a.byproducts == Byproducts::Correct).then_some(a.seed);
    let manifest = RunManifest::new("sweep ite", seed)
        .param("epsilon", &a.epsilon)
        .param("steps", a.steps)
        .param("byproducts", format!("{:?}", a.byproducts).to_lowercase());
    finish(&table, &manifest, &a.out)
}

pub fn feedback(a: &FeedbackArgs) -> Result<Verdict, CliError> {
    let eps = grid(&a.epsilon, None)?;
    let beta = angle(&a.beta)?;
    if a.steps == 0 {
        return Err(CliError::usage("--steps must be at least 1"));
    }
    for &e in &eps {
        check_feedback_a(a_of_eps(e)).map_err(|err| CliError::usage(format!("epsilon {e}: {err}")))?;
    }
    let psi = BlochState::new(beta, 0.0);
    let blocks = par_rows(&eps, |i, e| {
        let av = a_of_eps(e);
        let mc = if a.shots > 0 {
            Some(simulate_feedback(av, &StateVector::bloch(beta, 0.0), a.steps, a.shots, sub_seed(a.seed, i as u64))?)
        } else {
            None
        };
        let limit = p_success_limit(av, &psi)?;
        let mut rows = Vec::with_capacity(a.steps);
        for n in 1..=a.steps {
            let (mc_p, mc_se) = match &mc {
                Some(st) => {
                    let p = st.p_success(n);
                    (num(p), num((p * (1.0 - p) / a.shots as f64).sqrt()))
                }
                None => (String::new(), String::new()),
            };
            rows.push(vec![
                num(e),
                num(av),
                num(beta),
                n.to_string(),
                num(p_attempt(av, &psi, n)?),
                num(p_success(av, &psi, n)?),
                num(limit),
                mc_p,
                mc_se,
            ]);
        }
        Ok(rows)
    })?;
    let mut table = Table::new(&[
        "epsilon",
        "a",
        "beta",
        "n",
        "p_attempt",
        "p_success",
        "p_success_limit",
        "mc_p_success",
        "mc_std_error",
    ]);
    blocks.into_iter().flatten().for_each(|r| table.push(r));
    let manifest = RunManifest::new("sweep feedback", Some(a.seed))
        .param("epsilon", &a.epsilon)
        .param("beta", &a.beta)
        .param("steps", a.steps)
        .param("trajectories", a.shots);
    finish(&table, &manifest, &a.out)
}

pub fn estimator(a: &EstimatorArgs) -> Result<Verdict, CliError> {
    let eps = grid(&a.epsilon, None)?;
    let ensemble = match a.ensemble {
        EnsembleArg::Haar => Ensemble::Haar,
        EnsembleArg::Clifford1q => Ensemble::Clifford1q,
    };
    let base = ShadowConfig::new(a.unitaries, a.shots, ensemble, a.seed)?;
    let blocks = par_rows(&eps, |i, e| {
        let n = gate_fig1d(e, 0, 0);
        let seed_for = |k: u64| sub_seed(a.seed, 4 * i as u64 + k);
        let exact = exact_renyi2_op(&n)?;
        let exact = EstimateReport { value: exact, std_error: 0.0, std_dev: 0.0, method: Method::Exact, repeats: 1 };
        let swap = repeat_estimate(a.repeats, seed_for(1), Method::SwapTest, |s| Ok(swap_test_renyi2(&n, a.swap_shots, s)?.value))?;
        let ham = hamming_renyi2_repeated(&n, &base.with_seed(seed_for(2)), HammingAveraging::PerUnitary, a.repeats)?;
        let sh = shadow_renyi2_repeated(&n, &base.with_seed(seed_for(3)), a.repeats)?;
        Ok([(exact, "", ""), (swap, "", ""), (ham, "M", "K"), (sh, "M", "K")]
            .into_iter()
            .map(|(r, m, k)| {
                vec![
                    num(e),
                    r.method.name().to_string(),
                    num(r.value),
                    num(r.std_error),
                    r.repeats.to_string(),
                    if m.is_empty() { String::new() } else { a.unitaries.to_string() },
                    if k.is_empty() {
                        if r.method == Method::SwapTest { a.swap_shots.to_string() } else { String::new() }
                    } else {
                        a.shots.to_string()
                    },
                    a.seed.to_string(),
                ]
            })
            .collect::<Vec<_>>())
    })?;
    let mut table = Table::new(&["epsilon", "method", "mean", "std_error", "repeats", "M", "K", "seed"]);
    blocks.into_iter().flatten().for_each(|r| table.push(r));
    let manifest = RunManifest::new("sweep estimator", Some(a.seed))
        .param("epsilon", &a.epsilon)
        .param("unitaries", a.unitaries)
        .param("shots", a.shots)
        .param("swap_shots", a.swap_shots)
        .param("repeats", a.repeats)
        .param("ensemble", ensemble.name());
    finish(&table, &manifest, &a.out)
}
