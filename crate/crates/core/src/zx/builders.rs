//! Diagrams for measurement patterns and the fixed gates.

use super::diagram::{EdgeKind, ZxDiagram};
use super::sum::{measurement_effect, measurement_effect_sum, spider, DiagramSum};
use super::ZxError;
use crate::mbqc::{MbqcError, MeasurementPattern};
use std::f64::consts::{FRAC_PI_2, PI};

/// Graph-state diagram of `pattern` with one extra open leg per measured node.
/// Outputs are the pattern outputs (ascending id) followed by those legs in
/// measurement order.
fn open_cluster(pattern: &MeasurementPattern) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let nodes: Vec<_> = (0..pattern.n_nodes()).map(|_| d.add_green(0.0)).collect();
    for v in pattern.inputs() {
        let b = d.add_input();
        d.add_edge(b, nodes[v], EdgeKind::Plain);
    }
    for &(u, v) in pattern.edges() {
        d.add_edge(nodes[u], nodes[v], EdgeKind::Hadamard);
    }
    for v in pattern.outputs() {
        let b = d.add_output();
        d.add_edge(nodes[v], b, EdgeKind::Plain);
    }
    for &v in pattern.order() {
        let b = d.add_output();
        d.add_edge(nodes[v], b, EdgeKind::Plain);
    }
    d
}

fn check(pattern: &MeasurementPattern, outcomes: &[u8]) -> Result<(), ZxError> {
    if outcomes.len() != pattern.n_measured() {
        return Err(ZxError::Pattern(MbqcError::OutcomeLength {
            expected: pattern.n_measured(),
            found: outcomes.len(),
        }));
    }
    Ok(())
}

/// Diagram proportional to the Kraus operator of `outcomes`.
pub fn pattern_to_zx(pattern: &MeasurementPattern, outcomes: &[u8]) -> Result<ZxDiagram, ZxError> {
    check(pattern, outcomes)?;
    let mut effects = ZxDiagram::identity(pattern.n_outputs());
    for (&v, &s) in pattern.order().iter().zip(outcomes) {
        effects = effects.tensor(&measurement_effect(&pattern.basis(v).expect("measured"), s));
    }
    open_cluster(pattern).then(&effects)
}

/// As [`pattern_to_zx`] with every red effect expanded into green terms.
pub fn pattern_to_zx_sum(pattern: &MeasurementPattern, outcomes: &[u8]) -> Result<DiagramSum, ZxError> {
    check(pattern, outcomes)?;
    let mut effects = DiagramSum::single(ZxDiagram::identity(pattern.n_outputs()));
    for (&v, &s) in pattern.order().iter().zip(outcomes) {
        effects = effects.tensor(&measurement_effect_sum(&pattern.basis(v).expect("measured"), s));
    }
    DiagramSum::single(open_cluster(pattern)).then(&effects)
}

/// `in - green(s₁π) -H- green(s₂π) -H- out`, proportional to `X^{s₂} Z^{s₁}`.
pub fn teleport_diagram(s1: u8, s2: u8) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let i = d.add_input();
    let a = d.add_green(f64::from(s1) * PI);
    let b = d.add_green(f64::from(s2) * PI);
    let o = d.add_output();
    d.add_edge(i, a, EdgeKind::Plain);
    d.add_edge(a, b, EdgeKind::Hadamard);
    d.add_edge(b, o, EdgeKind::Hadamard);
    d
}

/// Wires crossed: input 0 to output 1 and input 1 to output 0.
pub fn swap_diagram() -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let (i0, i1) = (d.add_input(), d.add_input());
    let (o0, o1) = (d.add_output(), d.add_output());
    d.add_edge(i0, o1, EdgeKind::Plain);
    d.add_edge(i1, o0, EdgeKind::Plain);
    d
}

/// CX with control on qubit 0: green control joined to a red target.
pub fn cx_diagram() -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let (i0, i1) = (d.add_input(), d.add_input());
    let (o0, o1) = (d.add_output(), d.add_output());
    let c = d.add_green(0.0);
    let t = d.add_red(0.0);
    d.add_edge(i0, c, EdgeKind::Plain);
    d.add_edge(c, o0, EdgeKind::Plain);
    d.add_edge(i1, t, EdgeKind::Plain);
    d.add_edge(t, o1, EdgeKind::Plain);
    d.add_edge(c, t, EdgeKind::Plain);
    d
}

/// Red 3-leg spider whose third leg ends in `green(π/2)` then `red(−ε)`;
/// proportional to `I − tan(ε/2)·X`.
pub fn bubble_diagram(epsilon: f64) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let i = d.add_input();
    let o = d.add_output();
    let r = d.add_red(0.0);
    let g = d.add_green(FRAC_PI_2);
    let e = d.add_red(-epsilon);
    d.add_edge(i, r, EdgeKind::Plain);
    d.add_edge(r, o, EdgeKind::Plain);
    d.add_edge(r, g, EdgeKind::Plain);
    d.add_edge(g, e, EdgeKind::Plain);
    d
}

/// SWAP, CX, bubble on qubit 0, CX: proportional to
/// `(cos(ε/2)·I − sin(ε/2)·X₁X₂)·SWAP`.
pub fn fig7_diagram(epsilon: f64) -> ZxDiagram {
    let bubble = bubble_diagram(epsilon).tensor(&ZxDiagram::identity(1));
    swap_diagram()
        .then(&cx_diagram())
        .and_then(|d| d.then(&bubble))
        .and_then(|d| d.then(&cx_diagram()))
        .expect("two-qubit signatures match")
}

/// 1→1 green spider (phase gate).
pub fn phase_gate(phase: f64) -> ZxDiagram {
    spider(true, phase, 1, 1)
}
