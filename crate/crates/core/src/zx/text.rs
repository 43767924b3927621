//! Line-oriented diagram format.
//!
//! ```text
//! # comment
//! inputs: a b            # wire ids attached to input boundaries, in order
//! outputs: c d
//! g pi/2 : a x           # green spider, phase, then its legs
//! r -eps : x             # red spider
//! wire x h               # mark wire x as Hadamard (default plain)
//! scalar 0.5 0           # optional complex multiplier: re [im]
//! ```
//!
//! Every wire id must occur exactly twice among boundaries and legs. A wire
//! listed twice on one spider is a self-loop; a wire in both `inputs` and
//! `outputs` is a bare wire. Phases are angle expressions and may use free
//! variables bound at instantiation.

use super::diagram::{EdgeKind, VertexId, ZxDiagram};
use crate::angle::{AngleExpr, Vars};
use crate::numeric::C64;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ZxParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("wire `{wire}` occurs {count} times (expected 2)")]
    WireCount { wire: String, count: usize },
    #[error("{0}")]
    Eval(String),
}

#[derive(Clone, Debug, PartialEq)]
struct SpiderLine {
    green: bool,
    phase: AngleExpr,
    legs: Vec<String>,
}

/// Parsed diagram file; phases may contain free variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ZxFile {
    inputs: Vec<String>,
    outputs: Vec<String>,
    spiders: Vec<SpiderLine>,
    hadamard: BTreeSet<String>,
    scalar: Option<(AngleExpr, AngleExpr)>,
}

fn err(line: usize, message: impl Into<String>) -> ZxParseError {
    ZxParseError::Line { line, message: message.into() }
}

impl ZxFile {
    pub fn parse(text: &str) -> Result<Self, ZxParseError> {
        let mut f = ZxFile {
            inputs: Vec::new(),
            outputs: Vec::new(),
            spiders: Vec::new(),
            hadamard: BTreeSet::new(),
            scalar: None,
        };
        let mut seen_in = false;
        let mut seen_out = false;
        let mut wire_lines: BTreeMap<String, usize> = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head.trim_end_matches(':') {
                "inputs" | "outputs" => {
                    let ids: Vec<String> = rest.trim_start_matches(':').split_whitespace().map(str::to_string).collect();
                    let is_in = head.starts_with("inputs");
                    let seen = if is_in { &mut seen_in } else { &mut seen_out };
                    if *seen {
                        return Err(err(line_no, format!("`{}` declared twice", head.trim_end_matches(':'))));
                    }
                    *seen = true;
                    if is_in {
                        f.inputs = ids;
                    } else {
                        f.outputs = ids;
                    }
                }
                "g" | "r" => {
                    let (phase, legs) =
                        rest.split_once(':').ok_or_else(|| err(line_no, "spider needs `<phase> : <wires>`"))?;
                    let phase = AngleExpr::parse(phase).map_err(|e| err(line_no, e.to_string()))?;
                    let legs: Vec<String> = legs.split_whitespace().map(str::to_string).collect();
                    f.spiders.push(SpiderLine { green: head == "g", phase, legs });
                }
                "wire" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    match parts.as_slice() {
                        [id, "h"] | [id, "H"] => {
                            f.hadamard.insert(id.to_string());
                        }
                        [_, "plain"] | [_] => {}
                        _ => return Err(err(line_no, "expected `wire <id> [h|plain]`")),
                    }
                    if let Some(id) = parts.first() {
                        wire_lines.insert(id.to_string(), line_no);
                    }
                }
                "scalar" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let parse = |s: &str| AngleExpr::parse(s).map_err(|e| err(line_no, e.to_string()));
                    f.scalar = match parts.as_slice() {
                        [re] => Some((parse(re)?, AngleExpr::constant(0.0))),
                        [re, im] => Some((parse(re)?, parse(im)?)),
                        _ => return Err(err(line_no, "expected `scalar <re> [<im>]`")),
                    };
                }
                other => return Err(err(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for w in f.inputs.iter().chain(&f.outputs).chain(f.spiders.iter().flat_map(|s| &s.legs)) {
            *counts.entry(w).or_default() += 1;
        }
        if let Some((w, &c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(ZxParseError::WireCount { wire: w.to_string(), count: c });
        }
        for (id, line) in &wire_lines {
            if !counts.contains_key(id.as_str()) {
                return Err(err(*line, format!("wire `{id}` is not used")));
            }
        }
        Ok(f)
    }

    pub fn n_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = self.spiders.iter().flat_map(|s| s.phase.variables()).collect();
        if let Some((re, im)) = &self.scalar {
            out.extend(re.variables());
            out.extend(im.variables());
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn instantiate(&self, vars: &Vars) -> Result<ZxDiagram, ZxParseError> {
        let mut d = ZxDiagram::new();
        let mut ends: BTreeMap<&str, Vec<VertexId>> = BTreeMap::new();
        for w in &self.inputs {
            let b = d.add_input();
            ends.entry(w).or_default().push(b);
        }
        for w in &self.outputs {
            let b = d.add_output();
            ends.entry(w).or_default().push(b);
        }
        for s in &self.spiders {
            let phase = s.phase.eval(vars).map_err(|e| ZxParseError::Eval(e.to_string()))?;
            let v = if s.green { d.add_green(phase) } else { d.add_red(phase) };
            for w in &s.legs {
                ends.entry(w).or_default().push(v);
            }
        }
        for (w, pair) in ends {
            let kind = if self.hadamard.contains(w) { EdgeKind::Hadamard } else { EdgeKind::Plain };
            d.add_edge(pair[0], pair[1], kind);
        }
        if let Some((re, im)) = &self.scalar {
            let re = re.eval(vars).map_err(|e| ZxParseError::Eval(e.to_string()))?;
            let im = im.eval(vars).map_err(|e| ZxParseError::Eval(e.to_string()))?;
            d.scale(C64::new(re, im));
        }
        Ok(d)
    }
}
