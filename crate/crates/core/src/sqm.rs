//! The spin quantum-machine: a point particle on a unit sphere measured by a
//! breakable elastic band stretched along a diameter.
//!
//! The measurement along `û` proceeds in three purely geometric steps: the
//! particle at `v̂` falls orthogonally onto the elastic (landing at the chord
//! coordinate `cos γ`), the elastic snaps at a point drawn from the band's
//! break profile, and the fragment still anchored on the particle's side
//! contracts, dragging the particle to that endpoint. With a uniformly
//! breakable band the outcome frequencies are exactly the Born probabilities
//! `(1 ± cos γ)/2`; a band breakable only in a central segment of half-width
//! ε interpolates between the quantum law (ε = 1) and a deterministic
//! classical response (ε = 0).
//!
//! Fixing the break point turns the measurement into a deterministic
//! interaction; drawing that point uniformly recovers the stochastic machine,
//! which is the hidden-measurement reading of quantum probability: the
//! randomness lives in which interaction happens, not in the state.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::{Outcome, UnitVector3};
use crate::rng;
use crate::stats::FrequencyEstimate;

/// The machine's state space: a point on the sphere's internal surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleState {
    position: UnitVector3,
}

impl ParticleState {
    pub fn new(position: UnitVector3) -> Self {
        ParticleState { position }
    }

    pub fn position(self) -> UnitVector3 {
        self.position
    }
}

impl From<UnitVector3> for ParticleState {
    fn from(position: UnitVector3) -> Self {
        ParticleState { position }
    }
}

/// Signed position along the stretched elastic, normalized to the unit
/// radius: +1 is the `û` end, -1 the `-û` end, 0 the sphere's center.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ChordCoordinate(f64);

impl ChordCoordinate {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!(
                "chord coordinate {x} outside [-1, 1]"
            )));
        }
        Ok(ChordCoordinate(x))
    }

    pub(crate) fn clamped(x: f64) -> Self {
        ChordCoordinate(x.clamp(-1.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Elastic length between this point and the `û` end (`L₊ = 1 - x`).
    pub fn length_to_plus_end(self) -> f64 {
        1.0 - self.0
    }

    /// Elastic length between this point and the `-û` end (`L₋ = 1 + x`).
    pub fn length_to_minus_end(self) -> f64 {
        1.0 + self.0
    }
}

/// Central breakable half-width of an ε-band, in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(eps: f64) -> Result<Self> {
        if !eps.is_finite() || !(0.0..=1.0).contains(&eps) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {eps} outside [0, 1]"
            )));
        }
        Ok(Epsilon(eps))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Where the elastic can snap.
///
/// `Uniform` breaks anywhere with probability proportional to segment length;
/// `FixedPoint` always breaks at one predetermined coordinate (a fully
/// deterministic measurement interaction); `Epsilon(ε)` breaks uniformly
/// inside the central segment [-ε, ε] and never on the outer flanks.
/// `Epsilon(1)` behaves exactly like `Uniform` and `Epsilon(0)` exactly like
/// `FixedPoint(0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BreakProfile {
    Uniform,
    FixedPoint(ChordCoordinate),
    Epsilon(Epsilon),
}

impl BreakProfile {
    pub fn uniform() -> Self {
        BreakProfile::Uniform
    }

    pub fn fixed_point(x: f64) -> Result<Self> {
        Ok(BreakProfile::FixedPoint(ChordCoordinate::new(x)?))
    }

    pub fn epsilon(eps: f64) -> Result<Self> {
        Ok(BreakProfile::Epsilon(Epsilon::new(eps)?))
    }
}

/// Result of one machine measurement. The particle's new state is
/// `direction`; the measurement never leaves it anywhere else (observer
/// effect). `boundary` flags the measure-zero tie `break_point == landing`,
/// which is resolved as +1 by convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqmOutcome {
    pub direction: UnitVector3,
    pub sign: Outcome,
    pub break_point: ChordCoordinate,
    pub landing: ChordCoordinate,
    pub boundary: bool,
}

/// The orthogonal fall of the particle onto the elastic: lands at
/// `x = v̂·û = cos γ`.
pub fn land_on_chord(v: ParticleState, u: UnitVector3) -> ChordCoordinate {
    ChordCoordinate::clamped(v.position().dot(u))
}

/// Draws a break point from the profile. Continuous draws use the half-open
/// interval (the +1 endpoint is excluded; irrelevant at measure zero).
pub fn sample_break<R: Rng + ?Sized>(profile: BreakProfile, rng: &mut R) -> ChordCoordinate {
    match profile {
        BreakProfile::Uniform => ChordCoordinate(rng.random_range(-1.0..1.0)),
        BreakProfile::FixedPoint(x) => x,
        BreakProfile::Epsilon(eps) => {
            let e = eps.value();
            if e == 0.0 {
                ChordCoordinate(0.0)
            } else {
                ChordCoordinate(rng.random_range(-e..e))
            }
        }
    }
}

/// One full machine measurement of the particle `v` along `u`.
///
/// The fragment anchored at the endpoint on the particle's side of the break
/// carries it there: the outcome is `+û` when the break falls below the
/// landing point, `-û` when it falls above, and the exact tie goes to `+û`
/// with the boundary flag raised.
pub fn run_measurement<R: Rng + ?Sized>(
    v: ParticleState,
    u: UnitVector3,
    profile: BreakProfile,
    rng: &mut R,
) -> SqmOutcome {
    let landing = land_on_chord(v, u);
    let break_point = sample_break(profile, rng);
    let boundary = break_point.value() == landing.value();
    let sign = if break_point.value() <= landing.value() {
        Outcome::Plus
    } else {
        Outcome::Minus
    };
    let direction = match sign {
        Outcome::Plus => u,
        Outcome::Minus => -u,
    };
    SqmOutcome {
        direction,
        sign,
        break_point,
        landing,
        boundary,
    }
}

/// Exact outcome probabilities `(p₊, p₋) = ((1 + cos γ)/2, (1 - cos γ)/2)`
/// of the uniform-band machine; identical to the Born probabilities
/// `cos²(γ/2)` and `sin²(γ/2)`.
pub fn analytic_probability(v: ParticleState, u: UnitVector3) -> (f64, f64) {
    let cos_gamma = land_on_chord(v, u).value();
    ((1.0 + cos_gamma) / 2.0, (1.0 - cos_gamma) / 2.0)
}

/// Exact outcome probabilities of the ε-machine, by landing region:
///
/// * upper unbreakable flank, `cos γ ≥ ε` → (1, 0);
/// * central breakable segment, `-ε < cos γ < ε` →
///   `((ε + cos γ)/2ε, (ε - cos γ)/2ε)`;
/// * lower unbreakable flank, `cos γ ≤ -ε` → (0, 1).
///
/// At ε = 1 this reproduces [`analytic_probability`] exactly; as ε → 0 it
/// becomes the deterministic step in sign(cos γ).
pub fn analytic_epsilon_probability(
    v: ParticleState,
    u: UnitVector3,
    eps: f64,
) -> Result<(f64, f64)> {
    let eps = Epsilon::new(eps)?.value();
    let cos_gamma = land_on_chord(v, u).value();
    if cos_gamma >= eps {
        Ok((1.0, 0.0))
    } else if cos_gamma <= -eps {
        Ok((0.0, 1.0))
    } else {
        Ok((
            (eps + cos_gamma) / (2.0 * eps),
            (eps - cos_gamma) / (2.0 * eps),
        ))
    }
}

/// Chains measurements, feeding each outcome direction in as the next input
/// state. The final state always lies in {±(last direction)}, which is why
/// the order of the list matters.
pub fn run_sequence<R: Rng + ?Sized>(
    v0: ParticleState,
    directions: &[UnitVector3],
    profile: BreakProfile,
    rng: &mut R,
) -> Result<Vec<SqmOutcome>> {
    if directions.is_empty() {
        return Err(Error::InvalidParameter("empty direction list".into()));
    }
    let mut state = v0;
    let mut outcomes = Vec::with_capacity(directions.len());
    for &u in directions {
        let outcome = run_measurement(state, u, profile, rng);
        state = ParticleState::new(outcome.direction);
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

/// Frequency of the `+û` outcome over `trials` machine measurements, one
/// random stream per trial index.
pub fn outcome_frequency(
    v: ParticleState,
    u: UnitVector3,
    profile: BreakProfile,
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
            u64::from(run_measurement(v, u, profile, &mut rng).sign.is_plus())
        })
        .sum();
    FrequencyEstimate::new(plus, trials)
}

/// The hidden-measurement mixture: each trial first draws a break point
/// x₀ ~ uniform[-1, 1], then runs the deterministic `FixedPoint(x₀)`
/// measurement. Statistically indistinguishable from the uniform band —
/// the stochastic machine is a uniform mixture of deterministic ones.
pub fn hidden_mixture_frequency(
    v: ParticleState,
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
            let x0 = ChordCoordinate::clamped(rng.random_range(-1.0..1.0));
            let outcome = run_measurement(v, u, BreakProfile::FixedPoint(x0), &mut rng);
            u64::from(outcome.sign.is_plus())
        })
        .sum();
    FrequencyEstimate::new(plus, trials)
}
