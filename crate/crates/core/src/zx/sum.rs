use super::diagram::{EdgeKind, ZxDiagram};
use super::rewrite::simplify;
use super::ZxError;
use crate::mbqc::MeasurementBasis;
use crate::numeric::{ComplexMatrix, C64};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

/// Formal linear combination of diagrams sharing one boundary signature.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramSum {
    terms: Vec<(C64, ZxDiagram)>,
}

impl DiagramSum {
    pub fn new(terms: Vec<(C64, ZxDiagram)>) -> Result<Self, ZxError> {
        if let Some((_, first)) = terms.first() {
            let sig = (first.n_inputs(), first.n_outputs());
            if let Some((_, bad)) = terms.iter().find(|(_, d)| (d.n_inputs(), d.n_outputs()) != sig) {
                return Err(ZxError::SignatureMismatch { left: sig, right: (bad.n_inputs(), bad.n_outputs()) });
            }
        } else {
            return Err(ZxError::Malformed("a diagram sum needs at least one term".into()));
        }
        Ok(Self { terms })
    }

    pub fn single(d: ZxDiagram) -> Self {
        Self { terms: vec![(C64::new(1.0, 0.0), d)] }
    }

    pub fn terms(&self) -> &[(C64, ZxDiagram)] {
        &self.terms
    }

    pub fn n_inputs(&self) -> usize {
        self.terms[0].1.n_inputs()
    }

    pub fn n_outputs(&self) -> usize {
        self.terms[0].1.n_outputs()
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, ZxError> {
        let mut total = ComplexMatrix::zeros(1 << self.n_outputs(), 1 << self.n_inputs());
        for (w, d) in &self.terms {
            total += d.to_matrix()? * *w;
        }
        Ok(total)
    }

    /// Simplifies every term independently.
    pub fn simplify(&self) -> Self {
        Self { terms: self.terms.iter().map(|(w, d)| (*w, simplify(d))).collect() }
    }

    /// Applies `f` to every term, keeping the coefficients.
    pub fn map(&self, f: impl Fn(&ZxDiagram) -> Result<ZxDiagram, ZxError>) -> Result<Self, ZxError> {
        Self::new(self.terms.iter().map(|(w, d)| Ok((*w, f(d)?))).collect::<Result<_, ZxError>>()?)
    }

    /// Distributes a product over two sums.
    pub fn tensor(&self, other: &DiagramSum) -> Self {
        let terms = self
            .terms
            .iter()
            .flat_map(|(w1, d1)| other.terms.iter().map(move |(w2, d2)| (w1 * w2, d1.tensor(d2))))
            .collect();
        Self { terms }
    }

    /// `self` first, then `next`, distributed over both sums.
    pub fn then(&self, next: &DiagramSum) -> Result<Self, ZxError> {
        let mut terms = Vec::with_capacity(self.terms.len() * next.terms.len());
        for (w1, d1) in &self.terms {
            for (w2, d2) in &next.terms {
                terms.push((w1 * w2, d1.then(d2)?));
            }
        }
        Self::new(terms)
    }
}

impl From<ZxDiagram> for DiagramSum {
    fn from(d: ZxDiagram) -> Self {
        Self::single(d)
    }
}

/// Single spider with `n_in` inputs and `n_out` outputs on plain wires.
pub fn spider(green: bool, phase: f64, n_in: usize, n_out: usize) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let s = if green { d.add_green(phase) } else { d.add_red(phase) };
    for _ in 0..n_in {
        let i = d.add_input();
        d.add_edge(i, s, EdgeKind::Plain);
    }
    for _ in 0..n_out {
        let o = d.add_output();
        d.add_edge(s, o, EdgeKind::Plain);
    }
    d
}

/// The 1→0 red spider of phase `γ` as `green(0) + e^{iγ}·green(π)`.
/// The sum is `√2` times the red spider.
pub fn red_measurement_expand(phase: f64) -> DiagramSum {
    DiagramSum {
        terms: vec![
            (C64::new(1.0, 0.0), spider(true, 0.0, 1, 0)),
            (C64::from_polar(1.0, phase), spider(true, PI, 1, 0)),
        ],
    }
}

/// Effect `green(π/2)` then `red(θ + πs)`, expanded into green terms so it
/// equals that two-spider diagram exactly. Proportional to the bra of outcome
/// `s` of the xz-plane basis at polar angle `θ`.
pub fn xz_measurement_effect(theta: f64, s: u8) -> DiagramSum {
    let gamma = theta + f64::from(s) * PI;
    let lead = spider(true, FRAC_PI_2, 1, 1);
    let terms = red_measurement_expand(gamma)
        .terms
        .into_iter()
        .map(|(w, d)| (w * FRAC_1_SQRT_2, lead.then(&d).expect("1→1 then 1→0")))
        .collect();
    DiagramSum { terms }
}

/// Unexpanded effect for outcome `s` of `basis`: `green(−φ + sπ)` on the xy
/// plane, otherwise `green(π/2 − φ)` then `red(θ + sπ)`.
pub fn measurement_effect(basis: &MeasurementBasis, s: u8) -> ZxDiagram {
    let (theta, phi) = (basis.theta(), basis.phi());
    let sp = f64::from(s) * PI;
    if super::phase_is_zero(theta - FRAC_PI_2) {
        return spider(true, -phi + sp, 1, 0);
    }
    if super::phase_is_zero(theta - 3.0 * FRAC_PI_2) {
        return spider(true, -phi + PI + sp, 1, 0);
    }
    spider(true, FRAC_PI_2 - phi, 1, 1).then(&spider(false, theta + sp, 1, 0)).expect("1→1 then 1→0")
}

/// Like [`measurement_effect`] with the red spider expanded into green terms.
pub fn measurement_effect_sum(basis: &MeasurementBasis, s: u8) -> DiagramSum {
    let (theta, phi) = (basis.theta(), basis.phi());
    if super::phase_is_zero(theta - FRAC_PI_2) || super::phase_is_zero(theta - 3.0 * FRAC_PI_2) {
        return DiagramSum::single(measurement_effect(basis, s));
    }
    let lead = spider(true, FRAC_PI_2 - phi, 1, 1);
    let gamma = theta + f64::from(s) * PI;
    let terms = red_measurement_expand(gamma)
        .terms
        .into_iter()
        .map(|(w, d)| (w * FRAC_1_SQRT_2, lead.then(&d).expect("1→1 then 1→0")))
        .collect();
    DiagramSum { terms }
}
