//! Measurement patterns realizing the closed-form gates.

use crate::mbqc::{MeasurementBasis, MeasurementPattern, Role};
use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

/// 3-chain: input measured in X, middle tilted by `epsilon`.
pub fn pattern_fig1c(epsilon: f64) -> MeasurementPattern {
    MeasurementPattern::chain(&[MeasurementBasis::x(), MeasurementBasis::xz(epsilon)])
}

/// 3-chain: input tilted by `epsilon`, middle measured in X.
pub fn pattern_fig1d(epsilon: f64) -> MeasurementPattern {
    MeasurementPattern::chain(&[MeasurementBasis::xz(epsilon), MeasurementBasis::x()])
}

/// Tilted site of the two-qubit grid.
pub const FIG1E_TILTED_NODE: usize = 4;

/// Two-qubit grid. Rows 0 and 2 are wires `0-1-2` and `5-6-7` (inputs 0, 5;
/// outputs 2, 7), joined through the middle row `3-4`:
///
/// ```text
/// 0 - 1 - 2
///     |   |
///     3 - 4
///     |   |
/// 5 - 6 - 7
/// ```
///
/// All nodes but the tilted one are measured in X.
fn grid(tilted: MeasurementBasis) -> MeasurementPattern {
    let mut roles = vec![Role::Middle; 8];
    roles[0] = Role::Input;
    roles[5] = Role::Input;
    roles[2] = Role::Output;
    roles[7] = Role::Output;
    let edges = vec![(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (3, 6), (4, 7), (5, 6), (6, 7)];
    let mut bases: BTreeMap<usize, MeasurementBasis> =
        [0, 1, 3, 5, 6].into_iter().map(|i| (i, MeasurementBasis::x())).collect();
    bases.insert(FIG1E_TILTED_NODE, tilted);
    MeasurementPattern::new(roles, edges, bases, None).expect("grid is valid")
}

/// Grid whose all-zero branch is `∝ (cos(ε/2)·I − sin(ε/2)·X₁X₂)·SWAP`.
/// The tilted site sits at `θ = π/2 + ε`.
pub fn pattern_fig1e_xz(epsilon: f64) -> MeasurementPattern {
    grid(MeasurementBasis::new(FRAC_PI_2 + epsilon, 0.0))
}

/// Grid whose all-zero branch is `∝ e^{−i(φ/2)X₁X₂}·SWAP`.
pub fn pattern_fig1e_xy(phi: f64) -> MeasurementPattern {
    grid(MeasurementBasis::xy(-phi))
}
