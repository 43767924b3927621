use crate::numeric::{std_gates, ComplexMatrix, C64};
use rand::Rng;
use rand_distr::StandardNormal;
use std::sync::OnceLock;

/// Distribution of the random single-qubit rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    Haar,
    /// Uniform over the 24 single-qubit Cliffords (up to phase).
    Clifford1q,
}

impl Ensemble {
    pub fn name(self) -> &'static str {
        match self {
            Ensemble::Haar => "haar",
            Ensemble::Clifford1q => "clifford1q",
        }
    }
}

pub fn sample_unitary<R: Rng + ?Sized>(ensemble: Ensemble, rng: &mut R) -> ComplexMatrix {
    match ensemble {
        Ensemble::Haar => haar_unitary(rng),
        Ensemble::Clifford1q => clifford_group()[rng.random_range(0..24)].clone(),
    }
}

/// QR of a complex Gaussian matrix with the phases of `R`'s diagonal moved
/// into `Q`, which makes `Q` exactly Haar distributed.
fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let z = ComplexMatrix::from_fn(2, 2, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = ComplexMatrix::from_fn(2, 2, |i, j| {
        if i == j {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        } else {
            C64::new(0.0, 0.0)
        }
    });
    q * phases
}

/// Divides out the phase of the first entry of largest modulus so equal
/// operators up to phase compare equal.
fn canonical(m: &ComplexMatrix) -> ComplexMatrix {
    let pivot = m.iter().copied().find(|z| z.norm() > 0.5).expect("unitary has an entry above 1/2 in modulus");
    m * (pivot.conj() / pivot.norm())
}

/// The 24 single-qubit Cliffords, generated from `H` and `S`, with a fixed
/// phase convention and order.
pub fn clifford_group() -> &'static [ComplexMatrix] {
    static GROUP: OnceLock<Vec<ComplexMatrix>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let gens = [std_gates::hadamard(), std_gates::phase(std::f64::consts::FRAC_PI_2)];
        let mut group = vec![std_gates::identity(2)];
        let mut k = 0;
        while k < group.len() {
            for g in &gens {
                let next = canonical(&(g * &group[k]));
                if !group.iter().any(|h| (h - &next).norm() < 1e-9) {
                    group.push(next);
                }
            }
            k += 1;
        }
        group
    })
}
