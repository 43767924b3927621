//! Bundled pattern and diagram files.

use crate::mbqc::PatternFile;
use crate::zx::ZxFile;

pub const FIG1C_PATTERN: &str = include_str!("../fixtures/fig1c.pattern");
pub const FIG1D_PATTERN: &str = include_str!("../fixtures/fig1d.pattern");
pub const FIG1E_PATTERN: &str = include_str!("../fixtures/fig1e.pattern");
pub const CHAIN3_X_PATTERN: &str = include_str!("../fixtures/chain3_x.pattern");
pub const TELEPORT_ZX: &str = include_str!("../fixtures/teleport.zx");
pub const FIG7_ZX: &str = include_str!("../fixtures/fig7.zx");

/// `(name, contents)` of every bundled pattern.
pub const PATTERNS: [(&str, &str); 4] = [
    ("fig1c", FIG1C_PATTERN),
    ("fig1d", FIG1D_PATTERN),
    ("fig1e", FIG1E_PATTERN),
    ("chain3_x", CHAIN3_X_PATTERN),
];

/// `(name, contents)` of every bundled diagram.
pub const DIAGRAMS: [(&str, &str); 2] = [("teleport", TELEPORT_ZX), ("fig7", FIG7_ZX)];

pub fn pattern(name: &str) -> Option<PatternFile> {
    let (_, text) = PATTERNS.iter().find(|(n, _)| *n == name)?;
    Some(PatternFile::parse(text).expect("bundled pattern parses"))
}

pub fn diagram(name: &str) -> Option<ZxFile> {
    let (_, text) = DIAGRAMS.iter().find(|(n, _)| *n == name)?;
    Some(ZxFile::parse(text).expect("bundled diagram parses"))
}
