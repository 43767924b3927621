use super::diagram::{EdgeKind, VertexId, ZxDiagram};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

/// Random diagram with `1..=max_spiders` spiders, up to two inputs and two
/// outputs, and at most `max_wires` wires. Self-loops and parallel wires occur.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, max_spiders: usize, max_wires: usize) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let n = rng.random_range(1..=max_spiders.max(1));
    let spiders: Vec<VertexId> = (0..n)
        .map(|_| {
            let phase = match rng.random_range(0..5) {
                0 => 0.0,
                1 => FRAC_PI_2,
                2 => PI,
                3 => 3.0 * FRAC_PI_2,
                _ => rng.random::<f64>() * 2.0 * PI,
            };
            if rng.random::<bool>() {
                d.add_green(phase)
            } else {
                d.add_red(phase)
            }
        })
        .collect();
    let kind = |rng: &mut R| if rng.random::<bool>() { EdgeKind::Plain } else { EdgeKind::Hadamard };
    let n_in = rng.random_range(0..=2usize);
    let n_out = rng.random_range(0..=2usize).min(max_wires.saturating_sub(n_in));
    for _ in 0..n_in {
        let b = d.add_input();
        let k = kind(rng);
        d.add_edge(b, spiders[rng.random_range(0..n)], k);
    }
    for _ in 0..n_out {
        let b = d.add_output();
        let k = kind(rng);
        d.add_edge(spiders[rng.random_range(0..n)], b, k);
    }
    let budget = max_wires.saturating_sub(n_in + n_out);
    // chain the spiders first so most diagrams are connected
    for w in spiders.windows(2).take(budget) {
        let k = kind(rng);
        d.add_edge(w[0], w[1], k);
    }
    let extra = budget.saturating_sub(n - 1);
    for _ in 0..rng.random_range(0..=extra) {
        let (a, b) = (spiders[rng.random_range(0..n)], spiders[rng.random_range(0..n)]);
        let k = kind(rng);
        d.add_edge(a, b, k);
    }
    d
}
