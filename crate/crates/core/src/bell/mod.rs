//! The macroscopic Bell entity: a red elastic band of unstretched length L
//! with an experimenter at each end.
//!
//! Each side can either *pull* (collect elastic and compare the unstretched
//! length with L/2) or *check the color*. Pulling alone collects the whole
//! band; pulling both ends at once breaks it, creating a fragment-length
//! correlation on the spot. Those created correlations ("second kind") drive
//! the CHSH statistic to its algebraic maximum 4 — deterministically so for a
//! band breakable at one fixed point — while a band already broken before the
//! experiment (correlations of the "first kind", merely discovered) cannot
//! beat the classical bound 2. The quantum singlet scenario sits in between
//! at 2√2.
//!
//! Entities are single-use with respect to pulling: any pull consumes the
//! band, and a later pull reports a consumed-entity error. Color checks are
//! always available.

mod scenario;

pub use scenario::{chsh_scenario, lhv_maximum, lhv_strategies, ChshReport, LhvStrategy, Scenario};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::{Outcome, Side};
use crate::rng;

/// Default unstretched band length; every threshold scales with it.
pub const DEFAULT_LENGTH: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandColor {
    Red,
    Other,
}

/// Where a whole band can snap when pulled from both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BandBreakProfile {
    /// Anywhere, with probability proportional to segment length.
    UniformBreak,
    /// At one predetermined distance from the left end (strictly interior).
    FixedBreak(f64),
}

/// The band's configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BandState {
    /// Unbroken, still spanning both experimenters.
    Whole(BandBreakProfile),
    /// Unbroken but entirely collected by one side after a lone pull.
    Relocated { holder: Side },
    /// Two fragments whose lengths partition L.
    Broken { left: f64, right: f64 },
}

/// The Bell entity itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandEntity {
    length: f64,
    color: BandColor,
    state: BandState,
    pulled: bool,
}

impl BandEntity {
    /// A whole band of unstretched length `length`.
    pub fn whole(length: f64, color: BandColor, profile: BandBreakProfile) -> Result<Self> {
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "band length {length} must be positive"
            )));
        }
        if let BandBreakProfile::FixedBreak(p) = profile {
            if !p.is_finite() || p <= 0.0 || p >= length {
                return Err(Error::InvalidParameter(format!(
                    "fixed break point {p} must lie strictly inside (0, {length})"
                )));
            }
        }
        Ok(BandEntity {
            length,
            color,
            state: BandState::Whole(profile),
            pulled: false,
        })
    }

    /// A band broken before any experiment; the right fragment is L minus the
    /// left one, so the lengths partition L exactly.
    pub fn broken(length: f64, color: BandColor, left_fragment: f64) -> Result<Self> {
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "band length {length} must be positive"
            )));
        }
        if !left_fragment.is_finite() || !(0.0..=length).contains(&left_fragment) {
            return Err(Error::InvalidParameter(format!(
                "left fragment {left_fragment} outside [0, {length}]"
            )));
        }
        Ok(BandEntity {
            length,
            color,
            state: BandState::Broken {
                left: left_fragment,
                right: length - left_fragment,
            },
            pulled: false,
        })
    }

    /// The standard entity: a whole red band of unit length, uniformly
    /// breakable.
    pub fn uniform_red() -> Self {
        BandEntity::whole(DEFAULT_LENGTH, BandColor::Red, BandBreakProfile::UniformBreak)
            .expect("unit length is valid")
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn color(&self) -> BandColor {
        self.color
    }

    pub fn state(&self) -> BandState {
        self.state
    }

    /// True once any pull has consumed the entity.
    pub fn was_pulled(&self) -> bool {
        self.pulled
    }
}

/// What one experimenter does to their end of the band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Grab the end, pull hard, measure the unstretched length collected:
    /// +1 iff it exceeds L/2.
    Pull,
    /// Look at the band: +1 iff it is red.
    Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Experiment {
    pub side: Side,
    pub kind: ExperimentKind,
}

impl Experiment {
    pub fn pull(side: Side) -> Self {
        Experiment {
            side,
            kind: ExperimentKind::Pull,
        }
    }

    pub fn color(side: Side) -> Self {
        Experiment {
            side,
            kind: ExperimentKind::Color,
        }
    }
}

/// Joint result of a coincidence experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoincidenceResult {
    pub outcome_a: Outcome,
    pub outcome_b: Outcome,
    pub post_state: BandEntity,
}

/// An estimated (or exact, when `trials == 0`) coincidence expectation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectationEstimate {
    pub value: f64,
    pub trials: u64,
    pub standard_error: f64,
}

impl ExpectationEstimate {
    /// An analytic value: no trials, no sampling error.
    pub fn exact(value: f64) -> Self {
        ExpectationEstimate {
            value,
            trials: 0,
            standard_error: 0.0,
        }
    }

    /// Estimate from counting +1 products among `trials` products of ±1.
    /// The standard error is the Bessel-corrected sample deviation of the
    /// products divided by √trials; it is exactly zero when every product
    /// came out the same.
    pub fn from_product_counts(plus_products: u64, trials: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if plus_products > trials {
            return Err(Error::InvalidParameter(format!(
                "{plus_products} positive products out of {trials}"
            )));
        }
        let n = trials as f64;
        let value = (2.0 * plus_products as f64 - n) / n;
        let standard_error = if trials < 2 {
            0.0
        } else {
            ((1.0 - value * value).max(0.0) / (n - 1.0)).sqrt()
        };
        Ok(ExpectationEstimate {
            value,
            trials,
            standard_error,
        })
    }
}

fn pull_outcome(fragment: f64, length: f64) -> Outcome {
    // Strict reading: +1 only for strictly more than half the band.
    if fragment > length / 2.0 {
        Outcome::Plus
    } else {
        Outcome::Minus
    }
}

fn color_outcome(color: BandColor) -> Outcome {
    match color {
        BandColor::Red => Outcome::Plus,
        BandColor::Other => Outcome::Minus,
    }
}

/// Runs a single one-sided experiment and returns the outcome together with
/// the entity's new configuration.
///
/// A lone pull on a whole band collects the entire length (outcome +1) and
/// relocates the band intact; a pull on a broken band collects that side's
/// fragment. Any pull consumes the entity for later pulls. Color checks never
/// disturb it.
pub fn run_single<R: Rng + ?Sized>(
    band: BandEntity,
    e: Experiment,
    _rng: &mut R,
) -> Result<(Outcome, BandEntity)> {
    match e.kind {
        ExperimentKind::Color => Ok((color_outcome(band.color), band)),
        ExperimentKind::Pull => {
            if band.pulled {
                return Err(Error::ConsumedEntity(
                    "the band has already been pulled".into(),
                ));
            }
            let mut next = band;
            next.pulled = true;
            let outcome = match band.state {
                BandState::Whole(_) => {
                    next.state = BandState::Relocated { holder: e.side };
                    pull_outcome(band.length, band.length)
                }
                BandState::Relocated { .. } => {
                    unreachable!("relocated bands are already marked pulled")
                }
                BandState::Broken { left, right } => {
                    let fragment = match e.side {
                        Side::A => left,
                        Side::B => right,
                    };
                    pull_outcome(fragment, band.length)
                }
            };
            Ok((outcome, next))
        }
    }
}

/// Runs a coincidence experiment: `ea` on side A and `eb` on side B at the
/// same time.
///
/// Simultaneous pulls on a whole band break it at a point drawn from its
/// break profile; each side then collects the fragment anchored at its own
/// end, so exactly one of them exceeds L/2 (a break exactly at L/2 sends
/// both outcomes to -1 under the strict rule). Any pairing with a color
/// check leaves the pulling side behaving as in [`run_single`].
pub fn run_coincidence<R: Rng + ?Sized>(
    band: BandEntity,
    ea: Experiment,
    eb: Experiment,
    rng: &mut R,
) -> Result<CoincidenceResult> {
    if ea.side != Side::A || eb.side != Side::B {
        return Err(Error::InvalidExperiment(format!(
            "coincidence needs one experiment per side, got {:?} and {:?}",
            ea.side, eb.side
        )));
    }
    match (ea.kind, eb.kind) {
        (ExperimentKind::Pull, ExperimentKind::Pull) => {
            if band.pulled {
                return Err(Error::ConsumedEntity(
                    "the band has already been pulled".into(),
                ));
            }
            let mut next = band;
            next.pulled = true;
            let (outcome_a, outcome_b) = match band.state {
                BandState::Whole(profile) => {
                    let break_point = match profile {
                        BandBreakProfile::UniformBreak => rng.random_range(0.0..band.length),
                        BandBreakProfile::FixedBreak(p) => p,
                    };
                    let left = break_point;
                    let right = band.length - break_point;
                    next.state = BandState::Broken { left, right };
                    (
                        pull_outcome(left, band.length),
                        pull_outcome(right, band.length),
                    )
                }
                BandState::Relocated { .. } => {
                    unreachable!("relocated bands are already marked pulled")
                }
                BandState::Broken { left, right } => (
                    pull_outcome(left, band.length),
                    pull_outcome(right, band.length),
                ),
            };
            Ok(CoincidenceResult {
                outcome_a,
                outcome_b,
                post_state: next,
            })
        }
        (ExperimentKind::Pull, ExperimentKind::Color) => {
            let outcome_b = color_outcome(band.color);
            let (outcome_a, post_state) = run_single(band, ea, rng)?;
            Ok(CoincidenceResult {
                outcome_a,
                outcome_b,
                post_state,
            })
        }
        (ExperimentKind::Color, ExperimentKind::Pull) => {
            let outcome_a = color_outcome(band.color);
            let (outcome_b, post_state) = run_single(band, eb, rng)?;
            Ok(CoincidenceResult {
                outcome_a,
                outcome_b,
                post_state,
            })
        }
        (ExperimentKind::Color, ExperimentKind::Color) => Ok(CoincidenceResult {
            outcome_a: color_outcome(band.color),
            outcome_b: color_outcome(band.color),
            post_state: band,
        }),
    }
}

/// Estimates the coincidence expectation `E = ⟨o_A·o_B⟩` over `trials`
/// freshly prepared entities, one per trial (the factory is a pure function
/// of the trial index), with one random stream per trial.
pub fn estimate_expectation<F>(
    factory: F,
    ea: Experiment,
    eb: Experiment,
    trials: u64,
    seed: u64,
) -> Result<ExpectationEstimate>
where
    F: Fn(u64) -> BandEntity + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if ea.side != Side::A || eb.side != Side::B {
        return Err(Error::InvalidExperiment(format!(
            "coincidence needs one experiment per side, got {:?} and {:?}",
            ea.side, eb.side
        )));
    }
    let master = rng::master(seed);
    let plus_products: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::trial(&master, i);
            let result = run_coincidence(factory(i), ea, eb, &mut rng)
                .expect("factory must yield fresh, unpulled entities");
            u64::from(result.outcome_a == result.outcome_b)
        })
        .sum();
    ExpectationEstimate::from_product_counts(plus_products, trials)
}
