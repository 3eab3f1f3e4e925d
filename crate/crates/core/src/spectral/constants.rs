use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Fraction of each upper bound used by [`default_constants`]. The bounds are
/// strict, so the defaults sit strictly inside them.
pub const CONSTANT_SLACK: f64 = 0.9;

/// Weight thresholds for the vertex classes plus the derived `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub k: usize,
    pub eta: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub delta: f64,
    pub satisfies_chain: bool,
}

impl Constants {
    /// `min{1/(10k), (16k^2 - 1 - 4(16k^3 - 1)/(5k)) / ((2k+2) 16k^2)}`.
    pub fn eta_bound(k: usize) -> f64 {
        let k = k as f64;
        let first = 1.0 / (10.0 * k);
        let second =
            (16.0 * k * k - 1.0 - 4.0 * (16.0 * k.powi(3) - 1.0) / (5.0 * k)) / ((2.0 * k + 2.0) * 16.0 * k * k);
        first.min(second)
    }

    /// `min{eta, eta/2, 1/(8k^3), eta/(32k^3 + 2)}`.
    pub fn epsilon_bound(k: usize, eta: f64) -> f64 {
        let k = k as f64;
        [eta, eta / 2.0, 1.0 / (8.0 * k.powi(3)), eta / (32.0 * k.powi(3) + 2.0)]
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// `min{eta, epsilon^2 / (22k)}`.
    pub fn alpha_bound(k: usize, eta: f64, epsilon: f64) -> f64 {
        eta.min(epsilon * epsilon / (22.0 * k as f64))
    }

    /// `epsilon * alpha / (500 k^2)`.
    pub fn delta_for(k: usize, epsilon: f64, alpha: f64) -> f64 {
        epsilon * alpha / (500.0 * (k * k) as f64)
    }

    /// Constants from explicit values; `delta` and the chain flag are derived.
    pub fn with_values(k: usize, eta: f64, epsilon: f64, alpha: f64) -> Result<Self> {
        if k < 1 {
            return param(format!("k must be at least 1, got {k}"));
        }
        for (name, v) in [("eta", eta), ("epsilon", epsilon), ("alpha", alpha)] {
            if !(v > 0.0) || !v.is_finite() {
                return param(format!("{name} must be a positive finite number, got {v}"));
            }
        }
        let mut c = Constants {
            k,
            eta,
            epsilon,
            alpha,
            delta: Self::delta_for(k, epsilon, alpha),
            satisfies_chain: false,
        };
        c.satisfies_chain = c.check_chain();
        Ok(c)
    }

    /// Strict inequalities of the constant chain, each bound evaluated at the
    /// stored values.
    pub fn check_chain(&self) -> bool {
        self.k >= 2
            && self.eta < Self::eta_bound(self.k)
            && self.epsilon < Self::epsilon_bound(self.k, self.eta)
            && self.alpha < Self::alpha_bound(self.k, self.eta, self.epsilon)
    }
}

/// Each constant at [`CONSTANT_SLACK`] times its bound, in the order eta,
/// epsilon, alpha.
pub fn default_constants(k: usize) -> Result<Constants> {
    if k < 2 {
        return param(format!("default constants require k >= 2, got {k}"));
    }
    let eta = CONSTANT_SLACK * Constants::eta_bound(k);
    let epsilon = CONSTANT_SLACK * Constants::epsilon_bound(k, eta);
    let alpha = CONSTANT_SLACK * Constants::alpha_bound(k, eta, epsilon);
    let c = Constants::with_values(k, eta, epsilon, alpha)?;
    debug_assert!(c.satisfies_chain);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_by_hand() {
        let c = default_constants(2).unwrap();
        // (63 - 4 * 127 / 10) / 384 = 12.2 / 384 < 1/20.
        let eta = 0.9 * 12.2 / 384.0;
        assert!((c.eta - eta).abs() < 1e-15);
        assert!((c.eta - 0.028593750).abs() < 1e-9);
        // eta / (32 * 8 + 2) is the smallest epsilon bound at k = 2.
        assert!((c.epsilon - 0.9 * eta / 258.0).abs() < 1e-18);
        assert!((c.alpha - 0.9 * c.epsilon * c.epsilon / 44.0).abs() < 1e-22);
        assert_eq!(c.delta, c.epsilon * c.alpha / 2000.0);
        assert!(c.satisfies_chain);
    }

    #[test]
    fn defaults_satisfy_chain_for_many_k() {
        for k in 2..=50 {
            let c = default_constants(k).unwrap();
            assert!(c.satisfies_chain, "k = {k}");
            assert!(Constants::eta_bound(k) > 0.0);
            assert_eq!(c.delta, c.epsilon * c.alpha / (500.0 * (k * k) as f64));
        }
    }

    #[test]
    fn overrides_can_break_the_chain() {
        let d = default_constants(2).unwrap();
        let c = Constants::with_values(2, 0.5, d.epsilon, d.alpha).unwrap();
        assert!(!c.satisfies_chain);
        assert!(Constants::with_values(2, -1.0, 0.1, 0.1).is_err());
        assert!(default_constants(1).is_err());
    }
}
