//! Exact contraction of a diagram into a matrix.
//!
//! Each plain wire is one binary variable. A Hadamard wire carries one
//! variable per endpoint joined by `H[b₁,b₂] = (−1)^{b₁b₂}/√2`. Spiders are
//! green `1` on all-zeros, `e^{iα}` on all-ones, else 0; red
//! `2^{−k/2}(1 + e^{iβ}(−1)^{|b|})` for `k` legs.

use super::diagram::{EdgeKind, VertexKind, ZxDiagram};
use super::ZxError;
use crate::numeric::{ComplexMatrix, C64};
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;

/// Largest intermediate tensor (in variables) the contraction will build.
const MAX_TENSOR_VARS: usize = 24;

#[derive(Clone, Debug)]
struct Tensor {
    /// Distinct variables; bit `j` of an index is `vars[j]`.
    vars: Vec<usize>,
    data: Vec<C64>,
}

impl Tensor {
    fn entry(&self, assignment: &BTreeMap<usize, usize>) -> C64 {
        let idx = self.vars.iter().enumerate().fold(0, |acc, (j, v)| acc | (assignment[v] << j));
        self.data[idx]
    }
}

/// Builds a tensor over the distinct variables of `legs` from a function of the leg bits.
fn from_legs(legs: &[usize], f: impl Fn(&[u8]) -> C64) -> Tensor {
    let vars: Vec<usize> = legs.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let pos: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(j, v)| (*v, j)).collect();
    let mut bits = vec![0u8; legs.len()];
    let data = (0..(1usize << vars.len()))
        .map(|idx| {
            for (slot, v) in legs.iter().enumerate() {
                bits[slot] = ((idx >> pos[v]) & 1) as u8;
            }
            f(&bits)
        })
        .collect();
    Tensor { vars, data }
}

fn spider_tensor(kind: VertexKind, phase: f64, legs: &[usize]) -> Tensor {
    let e = C64::from_polar(1.0, phase);
    match kind {
        VertexKind::Green if legs.is_empty() => from_legs(legs, |_| C64::new(1.0, 0.0) + e),
        VertexKind::Green => from_legs(legs, |b| {
            if b.iter().all(|&x| x == 0) {
                C64::new(1.0, 0.0)
            } else if b.iter().all(|&x| x == 1) {
                e
            } else {
                C64::new(0.0, 0.0)
            }
        }),
        VertexKind::Red => {
            let norm = FRAC_1_SQRT_2.powi(legs.len() as i32);
            from_legs(legs, |b| {
                let parity = b.iter().map(|&x| x as usize).sum::<usize>() % 2;
                let sign = if parity == 0 { 1.0 } else { -1.0 };
                (C64::new(1.0, 0.0) + e * sign) * norm
            })
        }
        VertexKind::Boundary => unreachable!("boundaries carry no tensor"),
    }
}

fn hadamard_tensor(u: usize, v: usize) -> Tensor {
    from_legs(&[u, v], |b| C64::new(if b[0] == 1 && b[1] == 1 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 }, 0.0))
}

/// Product of `tensors`, summing over `sum_var` if given.
fn merge(tensors: &[Tensor], sum_var: Option<usize>) -> Result<Tensor, ZxError> {
    let mut all: BTreeSet<usize> = tensors.iter().flat_map(|t| t.vars.iter().copied()).collect();
    if let Some(v) = sum_var {
        all.remove(&v);
    }
    let vars: Vec<usize> = all.into_iter().collect();
    if vars.len() > MAX_TENSOR_VARS {
        return Err(ZxError::ContractionTooLarge(vars.len()));
    }
    let mut assignment: BTreeMap<usize, usize> = vars.iter().map(|v| (*v, 0)).collect();
    let sum_values: &[usize] = if sum_var.is_some() { &[0, 1] } else { &[0] };
    let mut data = Vec::with_capacity(1 << vars.len());
    for idx in 0..(1usize << vars.len()) {
        for (j, v) in vars.iter().enumerate() {
            assignment.insert(*v, (idx >> j) & 1);
        }
        let mut total = C64::new(0.0, 0.0);
        for &s in sum_values {
            if let Some(v) = sum_var {
                assignment.insert(v, s);
            }
            total += tensors.iter().map(|t| t.entry(&assignment)).product::<C64>();
        }
        data.push(total);
    }
    Ok(Tensor { vars, data })
}

pub(super) fn contract(d: &ZxDiagram, max_wires: usize) -> Result<ComplexMatrix, ZxError> {
    d.validate()?;
    if d.n_edges() > max_wires {
        return Err(ZxError::TooManyWires { wires: d.n_edges(), cap: max_wires });
    }
    // variable ids: plain wire e -> 2e, Hadamard wire endpoints -> 2e, 2e+1
    let mut legs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut tensors = Vec::new();
    let mut boundary_var: BTreeMap<usize, usize> = BTreeMap::new();
    for (eid, e) in d.edges() {
        let (va, vb) = match e.kind {
            EdgeKind::Plain => (2 * eid, 2 * eid),
            EdgeKind::Hadamard => {
                tensors.push(hadamard_tensor(2 * eid, 2 * eid + 1));
                (2 * eid, 2 * eid + 1)
            }
        };
        for (vertex, var) in [(e.a, va), (e.b, vb)] {
            if d.is_spider(vertex) {
                legs.entry(vertex).or_default().push(var);
            } else {
                boundary_var.insert(vertex, var);
            }
        }
    }
    for (id, v) in d.spiders() {
        let l = legs.get(&id).cloned().unwrap_or_default();
        tensors.push(spider_tensor(v.kind, v.phase, &l));
    }
    let open: BTreeSet<usize> = boundary_var.values().copied().collect();

    loop {
        let candidates: BTreeSet<usize> =
            tensors.iter().flat_map(|t| t.vars.iter().copied()).filter(|v| !open.contains(v)).collect();
        let Some(best) = candidates
            .iter()
            .map(|&v| {
                let size: BTreeSet<usize> = tensors
                    .iter()
                    .filter(|t| t.vars.contains(&v))
                    .flat_map(|t| t.vars.iter().copied())
                    .collect();
                (size.len(), v)
            })
            .min()
            .map(|(_, v)| v)
        else {
            break;
        };
        let (with, without): (Vec<Tensor>, Vec<Tensor>) = tensors.into_iter().partition(|t| t.vars.contains(&best));
        let merged = merge(&with, Some(best))?;
        tensors = without;
        tensors.push(merged);
    }
    let result = if tensors.is_empty() {
        Tensor { vars: vec![], data: vec![C64::new(1.0, 0.0)] }
    } else {
        merge(&tensors, None)?
    };

    let n_in = d.n_inputs();
    let n_out = d.n_outputs();
    let mut m = ComplexMatrix::zeros(1 << n_out, 1 << n_in);
    let mut assignment = BTreeMap::new();
    for r in 0..(1usize << n_out) {
        for c in 0..(1usize << n_in) {
            assignment.clear();
            let mut consistent = true;
            let slots = d
                .inputs()
                .iter()
                .enumerate()
                .map(|(j, b)| (b, (c >> j) & 1))
                .chain(d.outputs().iter().enumerate().map(|(k, b)| (b, (r >> k) & 1)));
            for (b, bit) in slots {
                let var = boundary_var[b];
                if let Some(prev) = assignment.insert(var, bit) {
                    if prev != bit {
                        consistent = false;
                    }
                }
            }
            if consistent {
                m[(r, c)] = result.entry(&assignment) * d.scalar();
            }
        }
    }
    Ok(m)
}
