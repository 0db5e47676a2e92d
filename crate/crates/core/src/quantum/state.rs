use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::{Outcome, UnitVector3, CONSTRUCTION_TOL, RAY_TOL};
use crate::rng;
use crate::stats::FrequencyEstimate;

/// A normalized spin-1/2 state: the amplitude pair (α, β) over the "up" /
/// "down" basis along ẑ. Physical identity is the ray, so [`SpinState::ray_eq`]
/// ignores a global phase.
#[derive(Clone, Copy, Debug)]
pub struct SpinState {
    alpha: Complex64,
    beta: Complex64,
}

impl SpinState {
    /// Builds a state; `|α|² + |β|²` must equal 1 within 1e-12.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if !n2.is_finite() || (n2 - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidState(format!(
                "|α|² + |β|² = {n2}, expected 1"
            )));
        }
        Ok(SpinState { alpha, beta })
    }

    /// Normalizes an arbitrary non-null amplitude pair.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !n.is_finite() || n < 1e-12 {
            return Err(Error::InvalidState("null amplitude pair".into()));
        }
        Ok(SpinState {
            alpha: alpha / n,
            beta: beta / n,
        })
    }

    pub(crate) fn new_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        debug_assert!((alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs() < 1e-9);
        SpinState { alpha, beta }
    }

    /// Spin up along ẑ.
    pub fn up() -> Self {
        SpinState {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// Spin down along ẑ.
    pub fn down() -> Self {
        SpinState {
            alpha: Complex64::new(0.0, 0.0),
            beta: Complex64::new(1.0, 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &SpinState) -> Complex64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }

    /// Ray equality: `|⟨self|other⟩| > 1 - 1e-10`.
    pub fn ray_eq(&self, other: &SpinState) -> bool {
        self.inner(other).norm() > 1.0 - RAY_TOL
    }

    /// The Bloch image of this state; alias of [`pauli_map`].
    pub fn bloch(&self) -> UnitVector3 {
        pauli_map(*self)
    }
}

/// The Pauli mapping: the unit vector `(2ℜ α*β, 2ℑ α*β, |α|² - |β|²)`
/// associated bijectively (per ray) with a spin state.
pub fn pauli_map(s: SpinState) -> UnitVector3 {
    let c = s.alpha.conj() * s.beta;
    UnitVector3::normalized(
        2.0 * c.re,
        2.0 * c.im,
        s.alpha.norm_sqr() - s.beta.norm_sqr(),
    )
    .expect("a normalized state has a unit Bloch vector")
}

/// The inverse of [`pauli_map`] up to a global phase:
/// `α = cos(θ/2) e^{-iφ/2}`, `β = sin(θ/2) e^{iφ/2}` with (θ, φ) the polar
/// angles of `v`.
pub fn state_from_direction(v: UnitVector3) -> SpinState {
    let theta = v.z().clamp(-1.0, 1.0).acos();
    let phi = v.y().atan2(v.x());
    let half = 0.5 * theta;
    SpinState::new_unchecked(
        Complex64::from_polar(half.cos(), -0.5 * phi),
        Complex64::from_polar(half.sin(), 0.5 * phi),
    )
}

/// Born probability of the outcome +1 for a spin measurement along `u` on a
/// system prepared in `s`: `|⟨+|_û s⟩|²`, which equals `cos²(γ/2)` for γ the
/// angle between the Bloch vector of `s` and `u`.
pub fn born_probability(s: SpinState, u: UnitVector3) -> f64 {
    let plus = state_from_direction(u);
    plus.inner(&s).norm_sqr().clamp(0.0, 1.0)
}

/// Samples a projective spin measurement along `u`: outcome +1 with the Born
/// probability and post-state `|+⟩_û`, otherwise -1 and `|-⟩_û`.
pub fn sample_spin_measurement<R: Rng + ?Sized>(
    s: SpinState,
    u: UnitVector3,
    rng: &mut R,
) -> (Outcome, SpinState) {
    let p = born_probability(s, u);
    if rng.random::<f64>() < p {
        (Outcome::Plus, state_from_direction(u))
    } else {
        (Outcome::Minus, state_from_direction(-u))
    }
}

/// Frequency of the outcome +1 over `trials` independent measurements of `s`
/// along `u`, one random stream per trial index.
pub fn measure_frequency(
    s: SpinState,
    u: UnitVector3,
    trials: u64,
    seed: u64,
) -> Result<FrequencyEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let master = rng::master(seed);
    let plus: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::trial(&master, i);
            u64::from(sample_spin_measurement(s, u, &mut rng).0.is_plus())
        })
        .sum();
    FrequencyEstimate::new(plus, trials)
}
