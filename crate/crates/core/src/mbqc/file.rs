//! Text format for measurement patterns (TOML).
//!
//! ```toml
//! name = "teleport"               # optional
//! edges = [[0, 1], [1, 2]]
//! order = [0, 1]                  # optional, defaults to inputs then middles
//!
//! [[nodes]]
//! id = 0
//! role = "input"                  # input | middle | output
//! # ... one table per node, ids exactly 0..n
//!
//! [bases.0]
//! theta = "pi/2 - eps"            # number or angle expression
//! phi = 0                         # optional, default 0
//! ```
//!
//! Every non-output node needs a `bases` entry. Angle expressions may use free
//! variables that are bound when the file is instantiated.

use super::{MbqcError, MeasurementBasis, MeasurementPattern, Role};
use crate::angle::{AngleError, AngleExpr, Vars};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PatternFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid pattern: {0}")]
    Invalid(String),
    #[error("basis of node {node}: {source}")]
    Angle { node: usize, source: AngleError },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
    nodes: Vec<NodeDoc>,
    #[serde(default)]
    bases: BTreeMap<String, BasisDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: usize,
    role: Role,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDoc {
    theta: AngleValue,
    #[serde(default = "AngleValue::zero")]
    phi: AngleValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum AngleValue {
    Number(f64),
    Expr(String),
}

impl AngleValue {
    fn zero() -> Self {
        AngleValue::Number(0.0)
    }

    fn parse(&self) -> Result<AngleExpr, AngleError> {
        match self {
            AngleValue::Number(x) => Ok(AngleExpr::constant(*x)),
            AngleValue::Expr(s) => AngleExpr::parse(s),
        }
    }
}

/// A parsed pattern file whose angles may still contain free variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternFile {
    doc: PatternDoc,
    roles: Vec<Role>,
    angles: BTreeMap<usize, (AngleExpr, AngleExpr)>,
}

impl PatternFile {
    pub fn parse(text: &str) -> Result<Self, PatternFileError> {
        let doc: PatternDoc = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((0, 0));
            PatternFileError::Syntax { line, column, message: e.message().to_string() }
        })?;
        Self::from_doc(doc)
    }

    fn from_doc(doc: PatternDoc) -> Result<Self, PatternFileError> {
        let n = doc.nodes.len();
        let mut roles = vec![None; n];
        for node in &doc.nodes {
            if node.id >= n {
                return Err(PatternFileError::Invalid(format!("node ids must be 0..{n}, found {}", node.id)));
            }
            if roles[node.id].replace(node.role).is_some() {
                return Err(PatternFileError::Invalid(format!("node {} declared twice", node.id)));
            }
        }
        let roles: Vec<Role> = roles.into_iter().map(|r| r.expect("all ids covered")).collect();
        let mut angles = BTreeMap::new();
        for (key, basis) in &doc.bases {
            let node: usize = key
                .trim()
                .parse()
                .map_err(|_| PatternFileError::Invalid(format!("basis key `{key}` is not a node id")))?;
            let theta = basis.theta.parse().map_err(|source| PatternFileError::Angle { node, source })?;
            let phi = basis.phi.parse().map_err(|source| PatternFileError::Angle { node, source })?;
            if angles.insert(node, (theta, phi)).is_some() {
                return Err(PatternFileError::Invalid(format!("node {node} has two bases")));
            }
        }
        let file = Self { doc, roles, angles };
        // structural validation with every variable set to zero
        let zeros: Vars = file.variables().into_iter().map(|v| (v, 0.0)).collect();
        file.instantiate(&zeros)?;
        Ok(file)
    }

    pub fn name(&self) -> Option<&str> {
        self.doc.name.as_deref()
    }

    /// Free variables appearing in any angle.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .angles
            .values()
            .flat_map(|(t, p)| t.variables().into_iter().chain(p.variables()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn instantiate(&self, vars: &Vars) -> Result<MeasurementPattern, PatternFileError> {
        let mut bases = BTreeMap::new();
        for (&node, (theta, phi)) in &self.angles {
            let t = theta.eval(vars).map_err(|source| PatternFileError::Angle { node, source })?;
            let p = phi.eval(vars).map_err(|source| PatternFileError::Angle { node, source })?;
            bases.insert(node, MeasurementBasis::new(t, p));
        }
        let edges = self.doc.edges.iter().map(|e| (e[0], e[1])).collect();
        MeasurementPattern::new(self.roles.clone(), edges, bases, self.doc.order.clone()).map_err(|e| match e {
            MbqcError::Invalid(msg) => PatternFileError::Invalid(msg),
            other => PatternFileError::Invalid(other.to_string()),
        })
    }

    /// A file with numeric angles describing `pattern` exactly.
    pub fn from_pattern(pattern: &MeasurementPattern, name: Option<&str>) -> Self {
        let doc = PatternDoc {
            name: name.map(str::to_string),
            edges: pattern.edges().iter().map(|&(u, v)| [u, v]).collect(),
            order: Some(pattern.order().to_vec()),
            nodes: pattern.roles().iter().enumerate().map(|(id, &role)| NodeDoc { id, role }).collect(),
            bases: pattern
                .bases()
                .iter()
                .map(|(id, b)| {
                    (id.to_string(), BasisDoc { theta: AngleValue::Number(b.theta()), phi: AngleValue::Number(b.phi()) })
                })
                .collect(),
        };
        Self::from_doc(doc).expect("valid pattern serializes to a valid file")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.doc).expect("pattern document serializes")
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
