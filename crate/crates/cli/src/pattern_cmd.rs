use crate::args::{ExtractArgs, Format, RunArgs, VarArgs};
use crate::error::CliError;
use crate::output::{bind_vars, bits, check_bound, complex, emit, num};
use crate::Verdict;
use mbqc_core::fixtures;
use mbqc_core::mbqc::{extract_kraus, operator_from_choi, run_pattern, MeasurementPattern, OutcomePolicy, PatternFile};
use mbqc_core::numeric::{vn_entropy, StateVector, DEFAULT_TOL};
use serde_json::json;

/// Reads `path`, or a bundled pattern named `builtin:<name>`.
pub fn load_pattern(source: &str, vars: &VarArgs) -> Result<MeasurementPattern, CliError> {
    let file = match source.strip_prefix("builtin:") {
        Some(name) => fixtures::pattern(name).ok_or_else(|| {
            let names: Vec<&str> = fixtures::PATTERNS.iter().map(|(n, _)| *n).collect();
            CliError::usage(format!("no bundled pattern `{name}` (have {})", names.join(", ")))
        })?,
        None => {
            let text = std::fs::read_to_string(source).map_err(|e| CliError::usage(format!("{source}: {e}")))?;
            PatternFile::parse(&text).map_err(|e| CliError::usage(format!("{source}: {e}")))?
        }
    };
    let vars = bind_vars(vars)?;
    check_bound(&file.variables(), &vars)?;
    Ok(file.instantiate(&vars)?)
}

fn input_state(labels: Option<&str>, n_inputs: usize) -> Result<StateVector, CliError> {
    let labels: Vec<&str> = match labels {
        Some(s) => s.split(',').map(str::trim).collect(),
        None => vec!["+"; n_inputs],
    };
    if labels.len() != n_inputs {
        return Err(CliError::usage(format!("pattern has {n_inputs} inputs but {} labels were given", labels.len())));
    }
    let mut state = StateVector::vacuum();
    for l in labels {
        let q = StateVector::named(l).ok_or_else(|| CliError::usage(format!("unknown input label `{l}`")))?;
        state = StateVector::concat(&state, &q);
    }
    Ok(state)
}

fn bit_string(b: &[u8]) -> String {
    b.iter().map(|x| char::from(b'0' + x)).collect()
}

pub fn run(a: &RunArgs) -> Result<Verdict, CliError> {
    let pattern = load_pattern(&a.pattern, &a.vars)?;
    let input = input_state(a.input.as_deref(), pattern.n_inputs())?;
    let policy = match &a.postselect {
        Some(s) => OutcomePolicy::Postselect(bits(s)?),
        None => OutcomePolicy::Sample { seed: a.seed },
    };
    let rec = run_pattern(&pattern, &input, &policy)?;
    let amps = rec.output_state.amplitudes();
    let text = match a.format {
        Format::Json => {
            let doc = json!({
                "outcomes": bit_string(&rec.outcomes),
                "joint_probability": rec.joint_probability,
                "step_probabilities": rec.step_probabilities,
                "output_qubits": rec.output_state.n_qubits(),
                "amplitudes": amps.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        _ => {
            let mut s = format!("outcomes: {}\n", bit_string(&rec.outcomes));
            s += &format!("joint_probability: {}\n", num(rec.joint_probability));
            let steps: Vec<String> = rec.step_probabilities.iter().map(|p| num(*p)).collect();
            s += &format!("step_probabilities: {}\n", steps.join(" "));
            s += &format!("output_qubits: {}\namplitudes:\n", rec.output_state.n_qubits());
            for (i, z) in amps.iter().enumerate() {
                s += &format!("  {i}: {}\n", complex(*z));
            }
            s
        }
    };
    emit(&text, &a.output)?;
    Ok(Verdict::Ok)
}

pub fn extract(a: &ExtractArgs) -> Result<Verdict, CliError> {
    let pattern = load_pattern(&a.pattern, &a.vars)?;
    let outcomes = match &a.postselect {
        Some(s) => bits(s)?,
        None => vec![0; pattern.n_measured()],
    };
    let kraus = extract_kraus(&pattern, &outcomes)?;
    let (choi_map, data) = operator_from_choi(&pattern, &outcomes)?;
    let s_op = kraus.operator_entropy()?;
    let s2_op = kraus.operator_renyi2()?;
    let s_op_choi = vn_entropy(&data.coefficients)?;
    let agreement = kraus.equal_up_to_scalar(&choi_map, DEFAULT_TOL)? && (s_op - s_op_choi).abs() <= DEFAULT_TOL;
    let m = kraus.matrix();
    let text = match a.format {
        Format::Json => {
            let rows: Vec<Vec<[f64; 2]>> =
                (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
            let doc = json!({
                "outcomes": bit_string(&outcomes),
                "matrix": rows,
                "s_op": s_op,
                "s_op_choi": s_op_choi,
                "s2_op": s2_op,
                "agreement": agreement,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        _ => {
            let mut s = format!("outcomes: {}\nmatrix:\n", bit_string(&outcomes));
            for r in 0..m.nrows() {
                let row: Vec<String> = (0..m.ncols()).map(|c| complex(m[(r, c)])).collect();
                s += &format!("  [{}]\n", row.join(", "));
            }
            s += &format!("s_op: {}\ns_op_choi: {}\ns2_op: {}\nagreement: {agreement}\n", num(s_op), num(s_op_choi), num(s2_op));
            s
        }
    };
    emit(&text, &a.output)?;
    Ok(if agreement { Verdict::Ok } else { Verdict::False })
}
