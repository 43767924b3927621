use super::{MeasurementBasis, MeasurementPattern, Role};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// Uniformly random angles, not uniform on the sphere.
pub fn random_basis<R: Rng + ?Sized>(rng: &mut R) -> MeasurementBasis {
    MeasurementBasis::new(rng.random::<f64>() * TAU, rng.random::<f64>() * TAU)
}

/// A random connected pattern with `2..=max_nodes` nodes, at most two inputs
/// and one or two outputs, random bases and a shuffled measurement order.
pub fn random_pattern<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize) -> MeasurementPattern {
    let max_nodes = max_nodes.max(2);
    let n = rng.random_range(2..=max_nodes);
    let n_out = rng.random_range(1..=2.min(n - 1));
    let n_in = rng.random_range(0..=2.min(n - n_out));
    let mut roles: Vec<Role> = std::iter::repeat_n(Role::Input, n_in)
        .chain(std::iter::repeat_n(Role::Output, n_out))
        .chain(std::iter::repeat_n(Role::Middle, n - n_in - n_out))
        .collect();
    roles.shuffle(rng);

    // random spanning tree plus extra edges
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !edges.contains(&(u, v)) && rng.random::<f64>() < 0.25 {
                edges.push((u, v));
            }
        }
    }
    let bases: BTreeMap<usize, MeasurementBasis> =
        (0..n).filter(|&i| roles[i] != Role::Output).map(|i| (i, random_basis(rng))).collect();
    let mut order: Vec<usize> = bases.keys().copied().collect();
    order.shuffle(rng);
    MeasurementPattern::new(roles, edges, bases, Some(order)).expect("generated pattern is valid")
}

/// Random outcome string for `pattern`.
pub fn random_outcomes<R: Rng + ?Sized>(rng: &mut R, pattern: &MeasurementPattern) -> Vec<u8> {
    (0..pattern.n_measured()).map(|_| rng.random_range(0..2u8)).collect()
}
