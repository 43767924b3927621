use crate::args::{Format, OutputArgs, VarArgs};
use crate::error::CliError;
use mbqc_core::angle::{parse_angle, Vars};
use mbqc_core::numeric::C64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// Provenance written ahead of every table.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn header_lines(&self) -> Vec<String> {
        let mut out = vec![format!("# command: {}", self.command), format!("# version: {}", self.version)];
        out.push(format!("# timestamp: {}", self.timestamp));
        if let Some(seed) = self.seed {
            out.push(format!("# seed: {seed}"));
        }
        for (k, v) in &self.parameters {
            out.push(format!("# {k}: {v}"));
        }
        out
    }
}

/// Column names plus rows of already formatted cells.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, manifest: &RunManifest, format: Format) -> Result<String, CliError> {
        let mut s = String::new();
        match format {
            Format::Csv | Format::Text => {
                for line in manifest.header_lines() {
                    s.push_str(&line);
                    s.push('\n');
                }
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.join(","));
                    s.push('\n');
                }
            }
            Format::Gnuplot => {
                for line in manifest.header_lines() {
                    s.push_str(&line);
                    s.push('\n');
                }
                s.push_str(&format!("# {}\n", self.columns.join(" ")));
                for r in &self.rows {
                    // gnuplot splits on whitespace, so a missing value needs a token
                    let cells: Vec<&str> = r.iter().map(|c| if c.is_empty() { "NaN" } else { c.as_str() }).collect();
                    s.push_str(&cells.join(" "));
                    s.push('\n');
                }
            }
            Format::Json => {
                let rows: Vec<BTreeMap<&str, &str>> = self
                    .rows
                    .iter()
                    .map(|r| self.columns.iter().copied().zip(r.iter().map(String::as_str)).collect())
                    .collect();
                let doc = serde_json::json!({ "manifest": manifest, "columns": self.columns, "rows": rows });
                s = serde_json::to_string_pretty(&doc).expect("json");
                s.push('\n');
            }
        }
        Ok(s)
    }
}

pub fn emit(text: &str, out: &OutputArgs) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Shortest round-trip form, switching to exponent notation for tiny magnitudes.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.abs() < 1e-4 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn complex(z: C64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", num(z.re), num(-z.im))
    } else {
        format!("{}+{}i", num(z.re), num(z.im))
    }
}

pub fn angle(s: &str) -> Result<f64, CliError> {
    parse_angle(s).map_err(|e| CliError::usage(format!("bad angle `{s}`: {e}")))
}

/// `start:stop:count` (inclusive, evenly spaced), `start:stop` with
/// `default_count` points, or a comma list of angles.
pub fn grid(source: &str, default_count: Option<usize>) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = source.split(':').collect();
    let count = |n: &str| n.trim().parse::<usize>().map_err(|_| CliError::usage(format!("bad point count in `{source}`")));
    let (a, b, n) = match parts.as_slice() {
        [single] => return single.split(',').map(|t| angle(t.trim())).collect(),
        [a, b] => match default_count {
            Some(n) => (a, b, n),
            None => return Err(CliError::usage(format!("grid `{source}` needs a point count"))),
        },
        [a, b, n] => (a, b, count(n)?),
        _ => return Err(CliError::usage(format!("grid `{source}` must be start:stop:count or a comma list"))),
    };
    {
        {
            let (a, b) = (angle(a)?, angle(b)?);
            if n < 2 || b < a {
                return Err(CliError::usage(format!("grid `{source}` needs start <= stop and at least 2 points")));
            }
            Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect())
        }
    }
}

pub fn bits(s: &str) -> Result<Vec<u8>, CliError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::usage(format!("outcome string `{s}` must contain only 0 and 1"))),
        })
        .collect()
}

pub fn bind_vars(v: &VarArgs) -> Result<Vars, CliError> {
    let mut vars = Vars::new();
    if let Some(e) = &v.epsilon {
        vars.insert("eps".into(), angle(e)?);
    }
    if let Some(p) = &v.phi {
        vars.insert("phi".into(), angle(p)?);
    }
    for kv in &v.vars {
        let (k, val) = kv.split_once('=').ok_or_else(|| CliError::usage(format!("--var `{kv}` must be name=value")))?;
        vars.insert(k.trim().to_string(), angle(val.trim())?);
    }
    Ok(vars)
}

pub fn check_bound(needed: &[String], vars: &Vars) -> Result<(), CliError> {
    let missing: Vec<&str> = needed.iter().filter(|v| !vars.contains_key(*v)).map(String::as_str).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "unbound variables: {} (use --epsilon for eps, --phi for phi, --var name=value otherwise)",
            missing.join(", ")
        )))
    }
}
