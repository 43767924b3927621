use super::{MbqcError, MeasurementBasis};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Middle,
    Output,
}

/// Graph with node roles, one basis per non-output node and a measurement order.
///
/// Node ids are `0..n`. Outcome strings are aligned with [`order`](Self::order).
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementPattern {
    roles: Vec<Role>,
    edges: Vec<(usize, usize)>,
    bases: BTreeMap<usize, MeasurementBasis>,
    order: Vec<usize>,
}

impl MeasurementPattern {
    /// Validates and builds a pattern. With `order = None` inputs are measured
    /// first, then middles, each in ascending id.
    pub fn new(
        roles: Vec<Role>,
        edges: Vec<(usize, usize)>,
        bases: BTreeMap<usize, MeasurementBasis>,
        order: Option<Vec<usize>>,
    ) -> Result<Self, MbqcError> {
        let n = roles.len();
        if !roles.contains(&Role::Output) {
            return Err(MbqcError::Invalid("pattern needs at least one output node".into()));
        }
        let mut seen = BTreeSet::new();
        let mut normalized_edges = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(MbqcError::Invalid(format!("edge ({u}, {v}) references a missing node")));
            }
            if u == v {
                return Err(MbqcError::Invalid(format!("self-loop on node {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(MbqcError::Invalid(format!("duplicate edge ({u}, {v})")));
            }
            normalized_edges.push(key);
        }
        for (id, role) in roles.iter().enumerate() {
            let has = bases.contains_key(&id);
            if *role == Role::Output && has {
                return Err(MbqcError::Invalid(format!("output node {id} must not have a basis")));
            }
            if *role != Role::Output && !has {
                return Err(MbqcError::Invalid(format!("node {id} has no measurement basis")));
            }
        }
        if let Some(&id) = bases.keys().find(|&&id| id >= n) {
            return Err(MbqcError::Invalid(format!("basis given for missing node {id}")));
        }
        let measured: BTreeSet<usize> = bases.keys().copied().collect();
        let order = match order {
            Some(order) => {
                let as_set: BTreeSet<usize> = order.iter().copied().collect();
                if as_set.len() != order.len() || as_set != measured {
                    return Err(MbqcError::Invalid(
                        "order must list every non-output node exactly once".into(),
                    ));
                }
                order
            }
            None => default_order(&roles),
        };
        Ok(Self { roles, edges: normalized_edges, bases, order })
    }

    /// Linear chain: node 0 is the input, the last node the output, and
    /// `bases[k]` is measured on node `k`.
    pub fn chain(bases: &[MeasurementBasis]) -> Self {
        let n = bases.len() + 1;
        let mut roles = vec![Role::Middle; n];
        roles[0] = Role::Input;
        roles[n - 1] = Role::Output;
        let edges = (1..n).map(|k| (k - 1, k)).collect();
        let bases = bases.iter().copied().enumerate().collect();
        Self::new(roles, edges, bases, None).expect("chain is valid")
    }

    /// Chain of `len` nodes with no input: node 0 starts in `|+⟩`.
    pub fn open_chain(len: usize, bases: &[MeasurementBasis]) -> Result<Self, MbqcError> {
        if len == 0 || bases.len() + 1 != len {
            return Err(MbqcError::Invalid("open chain needs len - 1 bases".into()));
        }
        let mut roles = vec![Role::Middle; len];
        roles[len - 1] = Role::Output;
        let edges = (1..len).map(|k| (k - 1, k)).collect();
        Self::new(roles, edges, bases.iter().copied().enumerate().collect(), None)
    }

    pub fn n_nodes(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, node: usize) -> Role {
        self.roles[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn bases(&self) -> &BTreeMap<usize, MeasurementBasis> {
        &self.bases
    }

    pub fn basis(&self, node: usize) -> Option<MeasurementBasis> {
        self.bases.get(&node).copied()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn inputs(&self) -> Vec<usize> {
        self.nodes_with(Role::Input)
    }

    pub fn outputs(&self) -> Vec<usize> {
        self.nodes_with(Role::Output)
    }

    pub fn n_inputs(&self) -> usize {
        self.roles.iter().filter(|r| **r == Role::Input).count()
    }

    pub fn n_outputs(&self) -> usize {
        self.roles.iter().filter(|r| **r == Role::Output).count()
    }

    pub fn n_measured(&self) -> usize {
        self.order.len()
    }

    fn nodes_with(&self, role: Role) -> Vec<usize> {
        (0..self.roles.len()).filter(|&i| self.roles[i] == role).collect()
    }

    /// Copy with one node's basis replaced.
    pub fn with_basis(&self, node: usize, basis: MeasurementBasis) -> Result<Self, MbqcError> {
        if !self.bases.contains_key(&node) {
            return Err(MbqcError::Invalid(format!("node {node} is not measured")));
        }
        let mut out = self.clone();
        out.bases.insert(node, basis);
        Ok(out)
    }

    /// Copy with a different measurement order.
    pub fn with_order(&self, order: Vec<usize>) -> Result<Self, MbqcError> {
        Self::new(self.roles.clone(), self.edges.clone(), self.bases.clone(), Some(order))
    }
}

fn default_order(roles: &[Role]) -> Vec<usize> {
    let pick = |r: Role| (0..roles.len()).filter(move |&i| roles[i] == r);
    pick(Role::Input).chain(pick(Role::Middle)).collect()
}
