use crate::numeric::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Single-qubit measurement axis `n̂ = (sinθ cosφ, sinθ sinφ, cosθ)`.
///
/// Outcome 0 projects on `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`, outcome 1 on the
/// orthogonal `sin(θ/2)|0⟩ − e^{iφ} cos(θ/2)|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    /// Angles are wrapped into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta: wrap(theta), phi: wrap(phi) }
    }

    pub fn x() -> Self {
        Self::new(FRAC_PI_2, 0.0)
    }

    pub fn y() -> Self {
        Self::new(FRAC_PI_2, FRAC_PI_2)
    }

    pub fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    /// xz-plane axis tilted by `epsilon` from x̂ towards ẑ (`θ = π/2 − ε`).
    pub fn xz(epsilon: f64) -> Self {
        Self::new(FRAC_PI_2 - epsilon, 0.0)
    }

    /// xy-plane axis at azimuth `phi`.
    pub fn xy(phi: f64) -> Self {
        Self::new(FRAC_PI_2, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn axis(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Eigenvector for outcome `s`.
    pub fn ket(&self, s: u8) -> [C64; 2] {
        let (sh, ch) = (self.theta / 2.0).sin_cos();
        let e = C64::from_polar(1.0, self.phi);
        if s == 0 {
            [C64::new(ch, 0.0), e * sh]
        } else {
            [C64::new(sh, 0.0), -e * ch]
        }
    }

    /// Conjugated eigenvector, the row that contracts a measured qubit.
    pub fn bra(&self, s: u8) -> [C64; 2] {
        let k = self.ket(s);
        [k[0].conj(), k[1].conj()]
    }

    /// `(1 ± σ·n̂)/2` for outcome `s`.
    pub fn projector(&self, s: u8) -> ComplexMatrix {
        let k = self.ket(s);
        ComplexMatrix::from_fn(2, 2, |r, c| k[r] * k[c].conj())
    }

    /// Same axis with the other outcome labelled 0.
    pub fn flipped(&self) -> Self {
        Self::new(self.theta + PI, self.phi)
    }
}

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    // rem_euclid can return TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}
