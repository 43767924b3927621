use super::{wrap_phase, ZxError};
use crate::numeric::C64;
use std::collections::BTreeMap;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Boundary,
    Green,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// In `[0, 2π)`; always 0 for boundaries.
    pub phase: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Plain,
    Hadamard,
}

impl EdgeKind {
    /// Kind of the wire obtained by joining two wires end to end.
    pub fn compose(self, other: EdgeKind) -> EdgeKind {
        if self == other {
            EdgeKind::Plain
        } else {
            EdgeKind::Hadamard
        }
    }

    pub fn toggled(self) -> EdgeKind {
        match self {
            EdgeKind::Plain => EdgeKind::Hadamard,
            EdgeKind::Hadamard => EdgeKind::Plain,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.a == self.b
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// Open graph of spiders with ordered boundaries and an exact scalar.
///
/// Multi-edges and self-loops are allowed. Every boundary vertex has exactly
/// one incident edge. Input `j` is bit `j` of the column index of
/// [`to_matrix`](Self::to_matrix), output `k` bit `k` of the row index.
#[derive(Clone, Debug, PartialEq)]
pub struct ZxDiagram {
    pub(crate) vertices: BTreeMap<VertexId, Vertex>,
    pub(crate) edges: BTreeMap<EdgeId, Edge>,
    pub(crate) inputs: Vec<VertexId>,
    pub(crate) outputs: Vec<VertexId>,
    pub(crate) scalar: C64,
    next_vertex: VertexId,
    next_edge: EdgeId,
}

impl Default for ZxDiagram {
    fn default() -> Self {
        Self::new()
    }
}

impl ZxDiagram {
    pub fn new() -> Self {
        Self {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            scalar: C64::new(1.0, 0.0),
            next_vertex: 0,
            next_edge: 0,
        }
    }

    /// `n` bare wires.
    pub fn identity(n: usize) -> Self {
        let mut d = Self::new();
        for _ in 0..n {
            let i = d.add_input();
            let o = d.add_output();
            d.add_edge(i, o, EdgeKind::Plain);
        }
        d
    }

    fn add_vertex(&mut self, kind: VertexKind, phase: f64) -> VertexId {
        let id = self.next_vertex;
        self.next_vertex += 1;
        let phase = if kind == VertexKind::Boundary { 0.0 } else { wrap_phase(phase) };
        self.vertices.insert(id, Vertex { kind, phase });
        id
    }

    pub fn add_green(&mut self, phase: f64) -> VertexId {
        self.add_vertex(VertexKind::Green, phase)
    }

    pub fn add_red(&mut self, phase: f64) -> VertexId {
        self.add_vertex(VertexKind::Red, phase)
    }

    pub fn add_spider(&mut self, kind: VertexKind, phase: f64) -> VertexId {
        assert!(kind != VertexKind::Boundary, "use add_input/add_output for boundaries");
        self.add_vertex(kind, phase)
    }

    pub fn add_input(&mut self) -> VertexId {
        let id = self.add_vertex(VertexKind::Boundary, 0.0);
        self.inputs.push(id);
        id
    }

    pub fn add_output(&mut self) -> VertexId {
        let id = self.add_vertex(VertexKind::Boundary, 0.0);
        self.outputs.push(id);
        id
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId, kind: EdgeKind) -> EdgeId {
        assert!(self.vertices.contains_key(&a) && self.vertices.contains_key(&b), "edge endpoints exist");
        let id = self.next_edge;
        self.next_edge += 1;
        self.edges.insert(id, Edge { a, b, kind });
        id
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) -> Edge {
        self.edges.remove(&e).expect("edge exists")
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        debug_assert!(self.incident_edges(v).is_empty());
        self.vertices.remove(&v);
    }

    pub(crate) fn set_phase(&mut self, v: VertexId, phase: f64) {
        if let Some(x) = self.vertices.get_mut(&v) {
            x.phase = wrap_phase(phase);
        }
    }

    pub(crate) fn set_kind(&mut self, v: VertexId, kind: VertexKind) {
        if let Some(x) = self.vertices.get_mut(&v) {
            x.kind = kind;
        }
    }

    pub(crate) fn edge_mut(&mut self, e: EdgeId) -> &mut Edge {
        self.edges.get_mut(&e).expect("edge exists")
    }

    pub fn vertex(&self, v: VertexId) -> Option<&Vertex> {
        self.vertices.get(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &Vertex)> {
        self.vertices.iter().map(|(k, v)| (*k, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().map(|(k, e)| (*k, e))
    }

    pub fn spiders(&self) -> impl Iterator<Item = (VertexId, &Vertex)> {
        self.vertices().filter(|(_, v)| v.kind != VertexKind::Boundary)
    }

    pub fn n_spiders(&self) -> usize {
        self.spiders().count()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn n_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn scalar(&self) -> C64 {
        self.scalar
    }

    pub fn scale(&mut self, factor: C64) {
        self.scalar *= factor;
    }

    pub fn with_scalar(mut self, scalar: C64) -> Self {
        self.scalar = scalar;
        self
    }

    /// Incident edges in id order; a self-loop is listed once.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges.iter().filter(|(_, e)| e.a == v || e.b == v).map(|(k, _)| *k).collect()
    }

    /// Number of legs; a self-loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.values().map(|e| usize::from(e.a == v) + usize::from(e.b == v)).sum()
    }

    pub fn is_spider(&self, v: VertexId) -> bool {
        self.vertices.get(&v).is_some_and(|x| x.kind != VertexKind::Boundary)
    }

    /// Checks that every boundary has exactly one leg and edges reference live vertices.
    pub fn validate(&self) -> Result<(), ZxError> {
        for e in self.edges.values() {
            if !self.vertices.contains_key(&e.a) || !self.vertices.contains_key(&e.b) {
                return Err(ZxError::Malformed("edge references a missing vertex".into()));
            }
        }
        for (&id, v) in &self.vertices {
            if v.kind == VertexKind::Boundary {
                if self.degree(id) != 1 {
                    return Err(ZxError::DanglingWire(id));
                }
                let listed = self.inputs.contains(&id) as usize + self.outputs.contains(&id) as usize;
                if listed != 1 {
                    return Err(ZxError::Malformed(format!("boundary {id} is not a unique input or output")));
                }
            }
        }
        Ok(())
    }

    /// Disjoint union with `other`'s vertices and edges renumbered; boundary lists untouched.
    fn absorb(&mut self, other: &ZxDiagram) -> BTreeMap<VertexId, VertexId> {
        let mut map = BTreeMap::new();
        for (&id, v) in &other.vertices {
            let new = self.add_vertex(v.kind, v.phase);
            map.insert(id, new);
        }
        for e in other.edges.values() {
            self.add_edge(map[&e.a], map[&e.b], e.kind);
        }
        self.scalar *= other.scalar;
        map
    }

    /// Parallel composition: `other`'s inputs and outputs follow this diagram's.
    pub fn tensor(&self, other: &ZxDiagram) -> ZxDiagram {
        let mut d = self.clone();
        let map = d.absorb(other);
        d.inputs.extend(other.inputs.iter().map(|v| map[v]));
        d.outputs.extend(other.outputs.iter().map(|v| map[v]));
        d
    }

    /// Sequential composition: `self` acts first, its outputs feed `next`'s inputs.
    pub fn then(&self, next: &ZxDiagram) -> Result<ZxDiagram, ZxError> {
        if self.n_outputs() != next.n_inputs() {
            return Err(ZxError::SignatureMismatch {
                left: (self.n_inputs(), self.n_outputs()),
                right: (next.n_inputs(), next.n_outputs()),
            });
        }
        let mut d = self.clone();
        let map = d.absorb(next);
        let glue: Vec<(VertexId, VertexId)> =
            self.outputs.iter().zip(&next.inputs).map(|(&p, q)| (p, map[q])).collect();
        d.outputs = next.outputs.iter().map(|v| map[v]).collect();
        for (p, q) in glue {
            d.join_boundaries(p, q);
        }
        Ok(d)
    }

    /// Removes boundaries `p` and `q` and joins their wires.
    fn join_boundaries(&mut self, p: VertexId, q: VertexId) {
        let ep = self.incident_edges(p)[0];
        let eq = self.incident_edges(q)[0];
        if ep == eq {
            let e = self.remove_edge(ep);
            // closed loop: trace of I is 2, trace of H is 0
            self.scalar *= match e.kind {
                EdgeKind::Plain => C64::new(2.0, 0.0),
                EdgeKind::Hadamard => C64::new(0.0, 0.0),
            };
        } else {
            let e1 = self.remove_edge(ep);
            let e2 = self.remove_edge(eq);
            self.add_edge(e1.other(p), e2.other(q), e1.kind.compose(e2.kind));
        }
        self.vertices.remove(&p);
        self.vertices.remove(&q);
    }

    /// Exact tensor contraction with the default wire cap.
    pub fn to_matrix(&self) -> Result<crate::numeric::ComplexMatrix, ZxError> {
        super::tensor::contract(self, super::DEFAULT_MAX_WIRES)
    }

    pub fn to_matrix_with_cap(&self, max_wires: usize) -> Result<crate::numeric::ComplexMatrix, ZxError> {
        super::tensor::contract(self, max_wires)
    }
}
