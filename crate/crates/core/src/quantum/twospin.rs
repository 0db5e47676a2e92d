use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::{
    state_from_direction, Operator2, Outcome, UnitVector3, CONSTRUCTION_TOL, RAY_TOL,
};
use crate::rng;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which end of a bipartite entity an experiment acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// A normalized state of two spin-1/2 entities, stored as the four
/// amplitudes over the (±, ±) product basis along a fixed reference
/// direction (ẑ). Index `2a + b` with `+` ↦ 0 and `-` ↦ 1.
#[derive(Clone, Copy, Debug)]
pub struct TwoSpinState {
    amps: [Complex64; 4],
}

impl TwoSpinState {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !n2.is_finite() || (n2 - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidState(format!(
                "two-spin norm² = {n2}, expected 1"
            )));
        }
        Ok(TwoSpinState { amps })
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    /// Amplitude of the joint outcome (a, b) in the reference basis.
    pub fn amplitude(&self, a: Outcome, b: Outcome) -> Complex64 {
        self.amps[index(a, b)]
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &TwoSpinState) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(s, o)| s.conj() * o)
            .sum()
    }

    pub fn ray_eq(&self, other: &TwoSpinState) -> bool {
        self.inner(other).norm() > 1.0 - RAY_TOL
    }

    /// Re-expresses the state over the (±, ±) basis along `w`.
    pub fn in_basis(&self, w: UnitVector3) -> TwoSpinState {
        let basis = [state_from_direction(w), state_from_direction(-w)];
        let mut out = [ZERO; 4];
        for (ia, sa) in basis.iter().enumerate() {
            for (ib, sb) in basis.iter().enumerate() {
                let ca = [sa.alpha(), sa.beta()];
                let cb = [sb.alpha(), sb.beta()];
                let mut amp = ZERO;
                for (k, ak) in ca.iter().enumerate() {
                    for (l, bl) in cb.iter().enumerate() {
                        amp += ak.conj() * bl.conj() * self.amps[2 * k + l];
                    }
                }
                out[2 * ia + ib] = amp;
            }
        }
        TwoSpinState { amps: out }
    }

    /// ⟨ψ| A ⊗ B |ψ⟩ for Hermitian `A`, `B` (the real part is returned; the
    /// imaginary part vanishes for Hermitian operators).
    pub fn observable_expectation(&self, op_a: &Operator2, op_b: &Operator2) -> f64 {
        let mut acc = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                let mut phi = ZERO;
                for k in 0..2 {
                    for l in 0..2 {
                        phi += op_a.entry(i, k) * op_b.entry(j, l) * self.amps[2 * k + l];
                    }
                }
                acc += self.amps[2 * i + j].conj() * phi;
            }
        }
        acc.re
    }

    /// Reduced probability of the outcome +1 along `dir` on one side,
    /// irrespective of the other side.
    pub fn marginal_plus_probability(&self, side: Side, dir: UnitVector3) -> f64 {
        let p = crate::quantum::projector(dir);
        let id = Operator2::identity();
        let value = match side {
            Side::A => self.observable_expectation(&p, &id),
            Side::B => self.observable_expectation(&id, &p),
        };
        value.clamp(0.0, 1.0)
    }
}

fn index(a: Outcome, b: Outcome) -> usize {
    let ia = usize::from(!a.is_plus());
    let ib = usize::from(!b.is_plus());
    2 * ia + ib
}

/// The singlet (total spin zero) state `(|+-⟩ - |-+⟩)/√2` over the reference
/// direction. As a ray it is rotationally invariant: re-expressed in any
/// basis it keeps the same form.
pub fn singlet_state() -> TwoSpinState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    TwoSpinState {
        amps: [ZERO, h, -h, ZERO],
    }
}

/// The singlet coincidence expectation `E = -ĉ·d̂` for spin measurements
/// along `c` on side A and `d` on side B.
pub fn singlet_expectation(c: UnitVector3, d: UnitVector3) -> f64 {
    -c.dot(d)
}

/// Samples one coincidence measurement on a fresh singlet pair.
///
/// The joint law, with γ the angle between the two settings:
/// `P(+,+) = P(-,-) = sin²(γ/2)/2` and `P(+,-) = P(-,+) = cos²(γ/2)/2`.
/// Both marginals are 1/2 and the product expectation is `-ĉ·d̂`.
pub fn singlet_sample<R: Rng + ?Sized>(
    c: UnitVector3,
    d: UnitVector3,
    rng: &mut R,
) -> (Outcome, Outcome) {
    let half = 0.5 * c.angle_to(d);
    let same = 0.5 * half.sin().powi(2);
    let diff = 0.5 * half.cos().powi(2);
    let r: f64 = rng.random();
    if r < same {
        (Outcome::Plus, Outcome::Plus)
    } else if r < same + diff {
        (Outcome::Plus, Outcome::Minus)
    } else if r < same + 2.0 * diff {
        (Outcome::Minus, Outcome::Plus)
    } else {
        (Outcome::Minus, Outcome::Minus)
    }
}

/// Joint outcome counts over many singlet coincidence trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JointCounts {
    pub plus_plus: u64,
    pub plus_minus: u64,
    pub minus_plus: u64,
    pub minus_minus: u64,
}

impl JointCounts {
    pub fn trials(&self) -> u64 {
        self.plus_plus + self.plus_minus + self.minus_plus + self.minus_minus
    }

    /// Mean of the outcome product o_A·o_B.
    pub fn product_mean(&self) -> f64 {
        let same = (self.plus_plus + self.minus_minus) as i64;
        let diff = (self.plus_minus + self.minus_plus) as i64;
        (same - diff) as f64 / self.trials() as f64
    }

    pub fn marginal_a_plus(&self) -> f64 {
        (self.plus_plus + self.plus_minus) as f64 / self.trials() as f64
    }

    pub fn marginal_b_plus(&self) -> f64 {
        (self.plus_plus + self.minus_plus) as f64 / self.trials() as f64
    }
}

/// Runs `trials` singlet coincidences with one random stream per trial.
pub fn singlet_joint_counts(
    c: UnitVector3,
    d: UnitVector3,
    trials: u64,
    seed: u64,
) -> Result<JointCounts> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let master = rng::master(seed);
    let counts = (0..trials)
        .into_par_iter()
        .fold(JointCounts::default, |mut acc, i| {
            let mut rng = rng::trial(&master, i);
            match singlet_sample(c, d, &mut rng) {
                (Outcome::Plus, Outcome::Plus) => acc.plus_plus += 1,
                (Outcome::Plus, Outcome::Minus) => acc.plus_minus += 1,
                (Outcome::Minus, Outcome::Plus) => acc.minus_plus += 1,
                (Outcome::Minus, Outcome::Minus) => acc.minus_minus += 1,
            }
            acc
        })
        .reduce(JointCounts::default, |a, b| JointCounts {
            plus_plus: a.plus_plus + b.plus_plus,
            plus_minus: a.plus_minus + b.plus_minus,
            minus_plus: a.minus_plus + b.minus_plus,
            minus_minus: a.minus_minus + b.minus_minus,
        });
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::spin_observable;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn singlet_is_normalized() {
        let s = singlet_state();
        let n2: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((n2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singlet_is_rotationally_invariant_as_a_ray() {
        let s = singlet_state();
        let mut r = crate::rng::master(23);
        for _ in 0..100 {
            let w = UnitVector3::random(&mut r);
            let re_expressed = s.in_basis(w);
            assert!(re_expressed.ray_eq(&s), "basis {w:?} broke the singlet ray");
            // The re-expressed amplitudes keep the singlet form: zero on the
            // aligned outcomes, opposite amplitudes on the mixed ones.
            let amps = re_expressed.amplitudes();
            assert!(amps[0].norm() < 1e-10 && amps[3].norm() < 1e-10);
            assert!((amps[1] + amps[2]).norm() < 1e-10);
        }
    }

    #[test]
    fn singlet_marginals_are_one_half() {
        let s = singlet_state();
        let mut r = crate::rng::master(29);
        for _ in 0..100 {
            let c = UnitVector3::random(&mut r);
            assert!((s.marginal_plus_probability(Side::A, c) - 0.5).abs() < 1e-12);
            assert!((s.marginal_plus_probability(Side::B, c) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_examples() {
        let c = UnitVector3::polar_xz(0.3);
        assert!((singlet_expectation(c, c) + 1.0).abs() < 1e-15);
        assert!(singlet_expectation(UnitVector3::X, UnitVector3::Z).abs() < 1e-15);
        let d = UnitVector3::polar_xz(0.3 + FRAC_PI_4);
        assert!((singlet_expectation(c, d) + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_the_four_amplitude_computation() {
        let s = singlet_state();
        let mut r = crate::rng::master(31);
        for _ in 0..500 {
            let c = UnitVector3::random(&mut r);
            let d = UnitVector3::random(&mut r);
            let brute = s.observable_expectation(&spin_observable(c), &spin_observable(d));
            assert!(
                (brute - singlet_expectation(c, d)).abs() < 1e-12,
                "mismatch at c={c:?}, d={d:?}"
            );
        }
    }

    #[test]
    fn aligned_settings_always_anticorrelate() {
        let c = UnitVector3::polar_xz(1.234);
        let mut r = crate::rng::master(37);
        for _ in 0..500 {
            let (a, b) = singlet_sample(c, c, &mut r);
            assert_eq!(a, b.flipped());
            let (a, b) = singlet_sample(c, -c, &mut r);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sampled_product_matches_expectation_at_pi_over_4() {
        let c = UnitVector3::Z;
        let d = UnitVector3::polar_xz(FRAC_PI_4);
        let counts = singlet_joint_counts(c, d, 1_000_000, 42).unwrap();
        let expected = singlet_expectation(c, d);
        // Binomial-style 3σ bound on the mean of ±1 products.
        let sigma = ((1.0 - expected * expected) / 1e6).sqrt();
        assert!(
            (counts.product_mean() - expected).abs() <= 3.0 * sigma,
            "mean {} vs {expected}",
            counts.product_mean()
        );
    }

    #[test]
    fn rejects_non_normalized_amplitudes() {
        let h = Complex64::new(1.0, 0.0);
        assert!(matches!(
            TwoSpinState::new([h, h, ZERO, ZERO]),
            Err(Error::InvalidState(_))
        ));
    }
}
