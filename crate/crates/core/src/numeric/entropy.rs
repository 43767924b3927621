use super::{NumericError, Result};

const NORMALIZATION_SLACK: f64 = 1e-8;

fn weights(mu: &[f64]) -> Result<Vec<f64>> {
    let w: Vec<f64> = mu.iter().map(|m| m * m).collect();
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_SLACK {
        return Err(NumericError::Unnormalized(total));
    }
    Ok(w)
}

/// `−Σ μ² ln μ²` over Schmidt coefficients `μ`.
pub fn vn_entropy(mu: &[f64]) -> Result<f64> {
    Ok(weights(mu)?
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum())
}

/// `−ln Σ μ⁴`.
pub fn renyi2_entropy(mu: &[f64]) -> Result<f64> {
    let purity: f64 = weights(mu)?.into_iter().map(|p| p * p).sum();
    Ok(-purity.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    #[test]
    fn examples() {
        let bell = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
        assert!((vn_entropy(&bell).unwrap() - LN_2).abs() < 1e-12);
        assert!((renyi2_entropy(&bell).unwrap() - LN_2).abs() < 1e-12);
        assert_eq!(vn_entropy(&[1.0]).unwrap(), 0.0);
        assert_eq!(renyi2_entropy(&[1.0]).unwrap(), 0.0);
        // −(0.9 ln 0.9 + 0.1 ln 0.1)
        let v = vn_entropy(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        assert!((v - 0.325083).abs() < 1e-6);
    }

    #[test]
    fn renyi2_at_weak_gate() {
        // μ² = (a², 1)/(1 + a²) with a = cos ε / (1 − sin ε), ε = 0.25
        let eps: f64 = 0.25;
        let a = eps.cos() / (1.0 - eps.sin());
        let mu = [a / (1.0 + a * a).sqrt(), 1.0 / (1.0 + a * a).sqrt()];
        assert!((renyi2_entropy(&mu).unwrap() - 0.6337).abs() < 1e-3);
    }

    #[test]
    fn zero_weight_is_ignored() {
        assert_eq!(vn_entropy(&[1.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(vn_entropy(&[1.0, 1.0]), Err(NumericError::Unnormalized(_))));
        assert!(matches!(renyi2_entropy(&[0.5]), Err(NumericError::Unnormalized(_))));
    }

    proptest! {
        #[test]
        fn vn_dominates_renyi2(raw in proptest::collection::vec(0.0f64..1.0, 1..8)) {
            let norm: f64 = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-6);
            let mu: Vec<f64> = raw.iter().map(|x| x / norm).collect();
            let vn = vn_entropy(&mu).unwrap();
            let r2 = renyi2_entropy(&mu).unwrap();
            prop_assert!(vn >= r2 - 1e-12);
            prop_assert!(r2 >= -1e-12);
        }
    }
}
