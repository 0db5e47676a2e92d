//! Exact two-level (and tensor-product) quantum mechanics used as analytical
//! ground truth and as a sampleable oracle: the Bloch-sphere bijection,
//! projectors and rotation operators, Born probabilities, the singlet state
//! with its `E = -ĉ·d̂` correlation law, and the CHSH combination rule.
//!
//! Conventions: ħ = 1 and every spin observable is rescaled to eigenvalues
//! ±1 (i.e. `n̂·σ` is stored instead of `(ħ/2) n̂·σ`), so outcomes enter the
//! CHSH algebra as dimensionless signs. States are physically rays: anything
//! differing only by a global phase compares equal under [`SpinState::ray_eq`].

mod operator;
mod state;
mod twospin;
mod vector;

pub use operator::{projector, rotation_aligning, rotation_operator, spin_observable, Operator2};
pub use state::{
    born_probability, measure_frequency, pauli_map, sample_spin_measurement,
    state_from_direction, SpinState,
};
pub use twospin::{
    singlet_expectation, singlet_joint_counts, singlet_sample, singlet_state, JointCounts, Side,
    TwoSpinState,
};
pub use vector::UnitVector3;

use crate::error::{Error, Result};

/// Tolerance on norms at construction time.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Tolerance on derived identities (round-trips, operator algebra).
pub const DERIVED_TOL: f64 = 1e-10;

/// Two states are the same ray when `|⟨s₁|s₂⟩| > 1 - RAY_TOL`.
pub const RAY_TOL: f64 = 1e-10;

/// A measurement outcome; only the two values ±1 exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    pub fn is_plus(self) -> bool {
        self == Outcome::Plus
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

/// The CHSH statistic `|E_ab - E_ab'| + |E_a'b' + E_a'b|`.
///
/// Inputs must be expectation values in [-1, 1]; the result lies in [0, 4].
/// Local hidden-variable models keep it at 2 or below, the singlet reaches
/// 2√2, and correlation-creating band experiments reach the full 4.
pub fn chsh_value(
    e_ab: f64,
    e_ab_prime: f64,
    e_a_prime_b_prime: f64,
    e_a_prime_b: f64,
) -> Result<f64> {
    for (name, e) in [
        ("e_ab", e_ab),
        ("e_ab_prime", e_ab_prime),
        ("e_a_prime_b_prime", e_a_prime_b_prime),
        ("e_a_prime_b", e_a_prime_b),
    ] {
        if !e.is_finite() || e.abs() > 1.0 {
            return Err(Error::InvalidExpectation(format!(
                "{name} = {e}, expected a value in [-1, 1]"
            )));
        }
    }
    Ok((e_ab - e_ab_prime).abs() + (e_a_prime_b_prime + e_a_prime_b).abs())
}
