//! Sound local rewrites. Fusion, self-loop removal, identity removal and
//! Hadamard-pair cancellation keep `to_matrix` exactly; colour change keeps it
//! exactly as well with the red normalization used here.

use super::diagram::{EdgeId, EdgeKind, VertexId, VertexKind, ZxDiagram};
use super::{phase_is_zero, ZxError};
use crate::numeric::C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewrite {
    Fuse(EdgeId),
    ColorChange(VertexId),
    RemoveSelfLoop(EdgeId),
    RemoveIdentity(VertexId),
    CancelHadamardPair(EdgeId, EdgeId),
}

/// Merges the two same-colour spiders joined by plain wire `wire`.
pub fn fuse_spiders(d: &ZxDiagram, wire: EdgeId) -> Result<ZxDiagram, ZxError> {
    let e = *d.edge(wire).ok_or(ZxError::NoSuchEdge(wire))?;
    let (ka, kb) = (kind(d, e.a)?, kind(d, e.b)?);
    if e.kind != EdgeKind::Plain {
        return Err(ZxError::NotApplicable("fusion needs a plain wire".into()));
    }
    if e.is_self_loop() || ka != kb || ka == VertexKind::Boundary {
        return Err(ZxError::NotApplicable("fusion needs two distinct spiders of one colour".into()));
    }
    let mut out = d.clone();
    out.remove_edge(wire);
    let (keep, gone) = (e.a.min(e.b), e.a.max(e.b));
    let phase = d.vertex(keep).unwrap().phase + d.vertex(gone).unwrap().phase;
    out.set_phase(keep, phase);
    for id in out.incident_edges(gone) {
        let edge = out.edge_mut(id);
        if edge.a == gone {
            edge.a = keep;
        }
        if edge.b == gone {
            edge.b = keep;
        }
    }
    out.remove_vertex(gone);
    Ok(out)
}

/// Flips a spider's colour and toggles the Hadamard mark on each of its legs.
pub fn color_change(d: &ZxDiagram, spider: VertexId) -> Result<ZxDiagram, ZxError> {
    let k = kind(d, spider)?;
    let flipped = match k {
        VertexKind::Green => VertexKind::Red,
        VertexKind::Red => VertexKind::Green,
        VertexKind::Boundary => return Err(ZxError::NotApplicable("boundaries have no colour".into())),
    };
    let mut out = d.clone();
    out.set_kind(spider, flipped);
    for id in out.incident_edges(spider) {
        let edge = out.edge_mut(id);
        // a self-loop is toggled at both ends
        if !edge.is_self_loop() {
            edge.kind = edge.kind.toggled();
        }
    }
    Ok(out)
}

/// Removes a self-loop. A plain loop is dropped; a Hadamard loop adds π to the
/// phase and a factor `1/√2`.
pub fn remove_self_loop(d: &ZxDiagram, wire: EdgeId) -> Result<ZxDiagram, ZxError> {
    let e = *d.edge(wire).ok_or(ZxError::NoSuchEdge(wire))?;
    if !e.is_self_loop() {
        return Err(ZxError::NotApplicable("not a self-loop".into()));
    }
    let mut out = d.clone();
    out.remove_edge(wire);
    if e.kind == EdgeKind::Hadamard {
        let phase = d.vertex(e.a).unwrap().phase + PI;
        out.set_phase(e.a, phase);
        out.scale(C64::new(FRAC_1_SQRT_2, 0.0));
    }
    Ok(out)
}

/// Removes a phase-0 spider with exactly two distinct legs, joining its neighbours.
pub fn remove_identity(d: &ZxDiagram, spider: VertexId) -> Result<ZxDiagram, ZxError> {
    kind(d, spider)?;
    if !d.is_spider(spider) || !phase_is_zero(d.vertex(spider).unwrap().phase) {
        return Err(ZxError::NotApplicable("identity removal needs a phase-0 spider".into()));
    }
    let inc = d.incident_edges(spider);
    if inc.len() != 2 || d.degree(spider) != 2 {
        return Err(ZxError::NotApplicable("identity removal needs two distinct legs".into()));
    }
    let mut out = d.clone();
    let e1 = out.remove_edge(inc[0]);
    let e2 = out.remove_edge(inc[1]);
    out.remove_vertex(spider);
    out.add_edge(e1.other(spider), e2.other(spider), e1.kind.compose(e2.kind));
    Ok(out)
}

/// Removes two parallel Hadamard wires between distinct same-colour spiders
/// (factor `1/2`).
pub fn cancel_hadamard_pair(d: &ZxDiagram, w1: EdgeId, w2: EdgeId) -> Result<ZxDiagram, ZxError> {
    let e1 = *d.edge(w1).ok_or(ZxError::NoSuchEdge(w1))?;
    let e2 = *d.edge(w2).ok_or(ZxError::NoSuchEdge(w2))?;
    let same_ends = (e1.a == e2.a && e1.b == e2.b) || (e1.a == e2.b && e1.b == e2.a);
    if w1 == w2 || !same_ends || e1.is_self_loop() {
        return Err(ZxError::NotApplicable("need two distinct parallel wires".into()));
    }
    if e1.kind != EdgeKind::Hadamard || e2.kind != EdgeKind::Hadamard {
        return Err(ZxError::NotApplicable("both wires must be Hadamard".into()));
    }
    let (ka, kb) = (kind(d, e1.a)?, kind(d, e1.b)?);
    if ka != kb || ka == VertexKind::Boundary {
        return Err(ZxError::NotApplicable("endpoints must be spiders of one colour".into()));
    }
    let mut out = d.clone();
    out.remove_edge(w1);
    out.remove_edge(w2);
    out.scale(C64::new(0.5, 0.0));
    Ok(out)
}

pub fn apply(d: &ZxDiagram, r: Rewrite) -> Result<ZxDiagram, ZxError> {
    match r {
        Rewrite::Fuse(e) => fuse_spiders(d, e),
        Rewrite::ColorChange(v) => color_change(d, v),
        Rewrite::RemoveSelfLoop(e) => remove_self_loop(d, e),
        Rewrite::RemoveIdentity(v) => remove_identity(d, v),
        Rewrite::CancelHadamardPair(a, b) => cancel_hadamard_pair(d, a, b),
    }
}

/// Every rewrite that applies to `d`, in a deterministic order.
pub fn applicable(d: &ZxDiagram) -> Vec<Rewrite> {
    let mut out = Vec::new();
    let edges: Vec<_> = d.edges().map(|(id, e)| (id, *e)).collect();
    for &(id, e) in &edges {
        if e.is_self_loop() {
            out.push(Rewrite::RemoveSelfLoop(id));
        } else if e.kind == EdgeKind::Plain
            && d.is_spider(e.a)
            && d.vertex(e.a).map(|v| v.kind) == d.vertex(e.b).map(|v| v.kind)
        {
            out.push(Rewrite::Fuse(id));
        }
    }
    for (i, &(id1, e1)) in edges.iter().enumerate() {
        for &(id2, e2) in &edges[i + 1..] {
            if cancel_hadamard_pair(d, id1, id2).is_ok() && e1.kind == e2.kind {
                out.push(Rewrite::CancelHadamardPair(id1, id2));
            }
        }
    }
    for (v, _) in d.spiders() {
        if remove_identity(d, v).is_ok() {
            out.push(Rewrite::RemoveIdentity(v));
        }
        out.push(Rewrite::ColorChange(v));
    }
    out
}

/// Rewrites to a fixpoint of fusion, self-loop removal, Hadamard-pair
/// cancellation and identity removal. Colour change is never applied.
pub fn simplify(d: &ZxDiagram) -> ZxDiagram {
    let mut cur = d.clone();
    loop {
        let next = applicable(&cur)
            .into_iter()
            .find(|r| !matches!(r, Rewrite::ColorChange(_)))
            .map(|r| apply(&cur, r).expect("listed rewrite applies"));
        match next {
            Some(n) => cur = n,
            None => return cur,
        }
    }
}

fn kind(d: &ZxDiagram, v: VertexId) -> Result<VertexKind, ZxError> {
    d.vertex(v).map(|x| x.kind).ok_or(ZxError::NoSuchVertex(v))
}
