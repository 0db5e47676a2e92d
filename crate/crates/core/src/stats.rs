//! Verification statistics: binomial frequency estimates with z-score
//! acceptance checks, and a one-sample Kolmogorov–Smirnov uniformity test
//! for the break-point samplers.
//!
//! The project-wide acceptance level is z = 3, with flakiness handled by
//! fixed seeds rather than retries. The KS critical value is the large-n
//! asymptotic constant for α ≈ 0.01.

use crate::error::{Error, Result};

/// The z level used by every statistical acceptance check in this project.
pub const ACCEPTANCE_Z: f64 = 3.0;

/// `D_crit = KS_COEFF / √n` at α ≈ 0.01.
pub const KS_COEFF: f64 = 1.63;

/// Success frequency over a batch of Bernoulli trials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyEstimate {
    successes: u64,
    trials: u64,
    p_hat: f64,
    std_err: f64,
}

impl FrequencyEstimate {
    pub fn new(successes: u64, trials: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if successes > trials {
            return Err(Error::InvalidParameter(format!(
                "{successes} successes out of {trials} trials"
            )));
        }
        let p_hat = successes as f64 / trials as f64;
        let std_err = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
        Ok(FrequencyEstimate {
            successes,
            trials,
            p_hat,
            std_err,
        })
    }

    pub fn successes(&self) -> u64 {
        self.successes
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn p_hat(&self) -> f64 {
        self.p_hat
    }

    pub fn std_err(&self) -> f64 {
        self.std_err
    }
}

/// Binomial z-score acceptance: passes iff
/// `|p̂ - p| ≤ z·√(p(1-p)/n)` against the expected probability `p`.
///
/// Degenerate expectations (p = 0 or p = 1) demand an exact match — a single
/// stray count fails.
pub fn z_check(estimate: &FrequencyEstimate, expected: f64, z: f64) -> bool {
    debug_assert!((0.0..=1.0).contains(&expected));
    debug_assert!(z > 0.0);
    if expected == 0.0 || expected == 1.0 {
        return estimate.p_hat() == expected;
    }
    let sigma = (expected * (1.0 - expected) / estimate.trials() as f64).sqrt();
    (estimate.p_hat() - expected).abs() <= z * sigma
}

/// Outcome of a Kolmogorov–Smirnov uniformity test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsUniformity {
    pub statistic: f64,
    pub critical_value: f64,
    pub pass: bool,
}

/// One-sample KS statistic of `samples` against uniform[lo, hi]; passes iff
/// the statistic stays below `1.63/√n`.
pub fn ks_uniformity(samples: &[f64], lo: f64, hi: f64) -> Result<KsUniformity> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "degenerate interval [{lo}, {hi}]"
        )));
    }
    if samples.iter().any(|x| !(*x >= lo && *x <= hi)) {
        return Err(Error::InvalidParameter(
            "sample outside the stated interval".into(),
        ));
    }

    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let width = hi - lo;
    let mut statistic = 0.0f64;
    for (i, x) in sorted.iter().enumerate() {
        let cdf = (x - lo) / width;
        let below = i as f64 / n;
        let above = (i + 1) as f64 / n;
        statistic = statistic.max((cdf - below).abs()).max((above - cdf).abs());
    }
    let critical_value = KS_COEFF / n.sqrt();
    Ok(KsUniformity {
        statistic,
        critical_value,
        pass: statistic <= critical_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_deviation_passes() {
        let e = FrequencyEstimate::new(500_000, 1_000_000).unwrap();
        assert!(z_check(&e, 0.5, 3.0));
    }

    #[test]
    fn degenerate_expectations_demand_exactness() {
        let clean = FrequencyEstimate::new(0, 1_000_000).unwrap();
        assert!(z_check(&clean, 0.0, 3.0));
        let one_stray = FrequencyEstimate::new(1, 1_000_000).unwrap();
        assert!(!z_check(&one_stray, 0.0, 3.0));
        let full = FrequencyEstimate::new(1_000_000, 1_000_000).unwrap();
        assert!(z_check(&full, 1.0, 3.0));
    }

    #[test]
    fn three_sigma_bound_is_enforced() {
        // Deviation 0.002 > 3·0.0005 at n = 10⁶.
        let e = FrequencyEstimate::new(502_000, 1_000_000).unwrap();
        assert!(!z_check(&e, 0.5, 3.0));
        // ...but within 5σ.
        assert!(z_check(&e, 0.5, 5.0));
    }

    #[test]
    fn invalid_counts_are_rejected() {
        assert!(FrequencyEstimate::new(0, 0).is_err());
        assert!(FrequencyEstimate::new(2, 1).is_err());
    }

    #[test]
    fn std_err_vanishes_only_at_the_extremes() {
        assert_eq!(FrequencyEstimate::new(0, 100).unwrap().std_err(), 0.0);
        assert_eq!(FrequencyEstimate::new(100, 100).unwrap().std_err(), 0.0);
        assert!(FrequencyEstimate::new(1, 100).unwrap().std_err() > 0.0);
    }

    #[test]
    fn ks_accepts_an_even_grid() {
        let n = 10_000;
        let samples: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let r = ks_uniformity(&samples, 0.0, 1.0).unwrap();
        assert!(r.pass, "statistic {} vs critical {}", r.statistic, r.critical_value);
    }

    #[test]
    fn ks_rejects_a_point_mass() {
        let samples = vec![0.5; 10_000];
        let r = ks_uniformity(&samples, 0.0, 1.0).unwrap();
        assert!(!r.pass);
        assert!((r.statistic - 0.5).abs() < 1e-9);
    }

    #[test]
    fn ks_validates_its_inputs() {
        assert!(matches!(
            ks_uniformity(&[], 0.0, 1.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            ks_uniformity(&[0.5], 1.0, 0.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            ks_uniformity(&[2.0], 0.0, 1.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    proptest! {
        // Loosening z never turns a pass into a fail.
        #[test]
        fn z_check_is_monotone(successes in 0u64..1000, z in 0.1f64..5.0) {
            let e = FrequencyEstimate::new(successes, 1000).unwrap();
            if z_check(&e, 0.3, z) {
                prop_assert!(z_check(&e, 0.3, z + 1.0));
            }
        }

        #[test]
        fn p_hat_and_std_err_are_consistent(successes in 0u64..=500, trials in 500u64..1000) {
            let e = FrequencyEstimate::new(successes, trials).unwrap();
            prop_assert!((e.p_hat() - successes as f64 / trials as f64).abs() < 1e-15);
            let expected = (e.p_hat() * (1.0 - e.p_hat()) / trials as f64).sqrt();
            prop_assert!((e.std_err() - expected).abs() < 1e-15);
        }
    }
}
