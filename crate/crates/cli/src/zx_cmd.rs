use crate::args::{BuiltinArg, CheckArgs, Format, GateArg};
use crate::error::CliError;
use crate::output::{bind_vars, check_bound, complex, emit, num};
use crate::Verdict;
use mbqc_core::angle::Vars;
use mbqc_core::fixtures;
use mbqc_core::gates::{byproduct, gate_fig1c, gate_fig1d, gate_fig1e, unitary_xx};
use mbqc_core::numeric::{std_gates, C64};
use mbqc_core::zx::{verify_equiv, ZxDiagram, ZxFile, ZxTerm};
use mbqc_core::LinearMap;
use serde_json::json;
use std::path::Path;

fn load(path: &Path, vars: &Vars) -> Result<ZxDiagram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let file = ZxFile::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    instantiate(&file, vars)
}

fn instantiate(file: &ZxFile, vars: &Vars) -> Result<ZxDiagram, CliError> {
    check_bound(&file.variables(), vars)?;
    Ok(file.instantiate(vars)?)
}

fn need(vars: &Vars, name: &str, flag: &str) -> Result<f64, CliError> {
    vars.get(name).copied().ok_or_else(|| CliError::usage(format!("this check needs {flag}")))
}

fn check_bit(b: u8) -> Result<u8, CliError> {
    if b > 1 {
        return Err(CliError::usage(format!("outcome bits must be 0 or 1, got {b}")));
    }
    Ok(b)
}

/// `(cos(ε/2)·I − sin(ε/2)·X₁X₂)·SWAP` built from its definition.
fn fig1e_closed_form(eps: f64) -> LinearMap {
    let m = (std_gates::identity(4) * C64::new((eps / 2.0).cos(), 0.0) - std_gates::xx() * C64::new((eps / 2.0).sin(), 0.0))
        * std_gates::swap();
    LinearMap::new(m).expect("finite 4x4")
}

fn gate(g: GateArg, vars: &Vars, s1: u8, s2: u8, n: usize) -> Result<LinearMap, CliError> {
    Ok(match g {
        GateArg::Fig1c => gate_fig1c(need(vars, "eps", "--epsilon")?, s1, s2),
        GateArg::Fig1d => gate_fig1d(need(vars, "eps", "--epsilon")?, s1, s2),
        GateArg::Fig1e => gate_fig1e(need(vars, "eps", "--epsilon")?, s1),
        GateArg::Xx => unitary_xx(need(vars, "phi", "--phi")?),
        GateArg::Byproduct => byproduct(s1, s2),
        GateArg::Identity => LinearMap::identity(n),
    })
}

pub fn check(a: &CheckArgs) -> Result<Verdict, CliError> {
    let (s1, s2) = (check_bit(a.s1)?, check_bit(a.s2)?);
    let mut vars = bind_vars(&a.vars)?;
    vars.insert("s1".into(), f64::from(s1));
    vars.insert("s2".into(), f64::from(s2));
    let (left, right, label): (Box<dyn ZxTerm>, Box<dyn ZxTerm>, String) = match (a.builtin, a.files.as_slice(), a.gate) {
        (Some(BuiltinArg::Teleport), [], None) => {
            let d = instantiate(&fixtures::diagram("teleport").expect("bundled"), &vars)?;
            (Box::new(d), Box::new(byproduct(s1, s2)), format!("teleport s1={s1} s2={s2} vs X^s2 Z^s1"))
        }
        (Some(BuiltinArg::Fig7), [], None) => {
            let eps = *vars.entry("eps".into()).or_insert(0.25);
            let d = instantiate(&fixtures::diagram("fig7").expect("bundled"), &vars)?;
            (Box::new(d), Box::new(fig1e_closed_form(eps)), format!("fig7 eps={eps} vs (cos(eps/2) I - sin(eps/2) XX) SWAP"))
        }
        (Some(_), _, _) => return Err(CliError::usage("--builtin takes no files and no --gate")),
        (None, [one], Some(g)) => {
            let d = load(one, &vars)?;
            let n = d.inputs().len();
            let r = gate(g, &vars, s1, s2, n)?;
            (Box::new(d), Box::new(r), format!("{} vs {g:?}", one.display()))
        }
        (None, [one, two], None) => {
            let (l, r) = (load(one, &vars)?, load(two, &vars)?);
            (Box::new(l), Box::new(r), format!("{} vs {}", one.display(), two.display()))
        }
        _ => return Err(CliError::usage("give two diagram files, one file with --gate, or --builtin")),
    };
    let eq = verify_equiv(left.as_ref(), right.as_ref(), a.tol)?;
    let text = match a.format {
        Format::Json => {
            let doc = json!({
                "check": label,
                "equivalent": eq.equivalent,
                "ratio": [eq.ratio.re, eq.ratio.im],
                "deviation": eq.deviation,
                "tolerance": a.tol,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        _ => {
            let mut s = format!("check: {label}\nequivalent: {}\n", eq.equivalent);
            if eq.equivalent {
                s += &format!("ratio: {}\n", complex(eq.ratio));
            }
            s += &format!("deviation: {}\n", num(eq.deviation));
            s
        }
    };
    emit(&text, &a.output)?;
    Ok(if eq.equivalent { Verdict::Ok } else { Verdict::False })
}
