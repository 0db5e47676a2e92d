use rayon::prelude::*;

use crate::bell::{
    estimate_expectation, BandBreakProfile, BandColor, BandEntity, Experiment, ExpectationEstimate,
    DEFAULT_LENGTH,
};
use crate::error::{Error, Result};
use crate::quantum::{chsh_value, singlet_expectation, singlet_sample, Side, UnitVector3};
use crate::rng;

/// The four CHSH scenarios studied here.
///
/// For the band scenarios the setting map is fixed: `a`/`b` are pulls and
/// `a'`/`b'` are color checks, on sides A and B respectively. The quantum
/// scenario measures spins of a singlet pair along four coplanar directions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scenario {
    /// Whole red band, uniformly breakable. S = 4.
    UniformBand,
    /// Whole red band breakable only at `break_position` from the left end.
    /// Fully deterministic, still S = 4.
    FixedBreakBand { break_position: f64 },
    /// Band already broken into (`left_fragment`, L - `left_fragment`)
    /// before any experiment. S = 2.
    PreBrokenBand { left_fragment: f64 },
    /// Singlet pair measured along (a, b, a', b'). S = 2√2 at the π/4 chain.
    QuantumSinglet {
        a: UnitVector3,
        b: UnitVector3,
        a_prime: UnitVector3,
        b_prime: UnitVector3,
    },
}

impl Scenario {
    /// Fixed break at L/3, the deterministic maximal-violation case.
    pub fn fixed_break_default() -> Self {
        Scenario::FixedBreakBand {
            break_position: DEFAULT_LENGTH / 3.0,
        }
    }

    /// Fragments of L/3 and 2L/3 prepared before the experiments.
    pub fn pre_broken_default() -> Self {
        Scenario::PreBrokenBand {
            left_fragment: DEFAULT_LENGTH / 3.0,
        }
    }

    /// The π/4 chain: coplanar settings with angles π/4 between â and b̂,
    /// b̂ and â′, â′ and b̂′. This is the configuration that maximizes the
    /// singlet CHSH value at 2√2.
    pub fn quantum_pi_over_4() -> Self {
        let step = std::f64::consts::FRAC_PI_4;
        Scenario::QuantumSinglet {
            a: UnitVector3::polar_xz(0.0),
            b: UnitVector3::polar_xz(step),
            a_prime: UnitVector3::polar_xz(2.0 * step),
            b_prime: UnitVector3::polar_xz(3.0 * step),
        }
    }

    /// Parses the scenario names used by the command line and bindings.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "uniform-band" => Ok(Scenario::UniformBand),
            "fixed-break-band" => Ok(Scenario::fixed_break_default()),
            "pre-broken-band" => Ok(Scenario::pre_broken_default()),
            "quantum-singlet" => Ok(Scenario::quantum_pi_over_4()),
            other => Err(Error::InvalidParameter(format!(
                "unknown scenario '{other}' (expected uniform-band, fixed-break-band, \
                 pre-broken-band or quantum-singlet)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::UniformBand => "uniform-band",
            Scenario::FixedBreakBand { .. } => "fixed-break-band",
            Scenario::PreBrokenBand { .. } => "pre-broken-band",
            Scenario::QuantumSinglet { .. } => "quantum-singlet",
        }
    }

    /// A fresh entity for one band trial; `None` for the quantum scenario.
    fn band_prototype(&self) -> Result<Option<BandEntity>> {
        match *self {
            Scenario::UniformBand => Ok(Some(BandEntity::uniform_red())),
            Scenario::FixedBreakBand { break_position } => Ok(Some(BandEntity::whole(
                DEFAULT_LENGTH,
                BandColor::Red,
                BandBreakProfile::FixedBreak(break_position),
            )?)),
            Scenario::PreBrokenBand { left_fragment } => Ok(Some(BandEntity::broken(
                DEFAULT_LENGTH,
                BandColor::Red,
                left_fragment,
            )?)),
            Scenario::QuantumSinglet { .. } => Ok(None),
        }
    }
}

/// The four coincidence expectations and their CHSH combination.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshReport {
    pub e_ab: ExpectationEstimate,
    pub e_ab_prime: ExpectationEstimate,
    pub e_a_prime_b_prime: ExpectationEstimate,
    pub e_a_prime_b: ExpectationEstimate,
    pub s_value: f64,
}

impl ChshReport {
    pub fn expectations(&self) -> [ExpectationEstimate; 4] {
        [
            self.e_ab,
            self.e_ab_prime,
            self.e_a_prime_b_prime,
            self.e_a_prime_b,
        ]
    }

    /// Root-sum-square of the four standard errors; the 1σ scale of the
    /// sampled S value.
    pub fn combined_standard_error(&self) -> f64 {
        self.expectations()
            .iter()
            .map(|e| e.standard_error * e.standard_error)
            .sum::<f64>()
            .sqrt()
    }

    fn from_expectations(e: [ExpectationEstimate; 4]) -> Result<Self> {
        let s_value = chsh_value(e[0].value, e[1].value, e[2].value, e[3].value)?;
        Ok(ChshReport {
            e_ab: e[0],
            e_ab_prime: e[1],
            e_a_prime_b_prime: e[2],
            e_a_prime_b: e[3],
            s_value,
        })
    }
}

// Setting pairs in report order: (a,b), (a,b'), (a',b'), (a',b).
fn band_setting_pairs() -> [(Experiment, Experiment); 4] {
    [
        (Experiment::pull(Side::A), Experiment::pull(Side::B)),
        (Experiment::pull(Side::A), Experiment::color(Side::B)),
        (Experiment::color(Side::A), Experiment::color(Side::B)),
        (Experiment::color(Side::A), Experiment::pull(Side::B)),
    ]
}

fn quantum_setting_pairs(
    a: UnitVector3,
    b: UnitVector3,
    a_prime: UnitVector3,
    b_prime: UnitVector3,
) -> [(UnitVector3, UnitVector3); 4] {
    [(a, b), (a, b_prime), (a_prime, b_prime), (a_prime, b)]
}

/// The exact expectation of one band coincidence, from the outcome laws: a
/// lone pull always collects everything (+1), a color check always reads red
/// (+1), and a double pull reads the two fragment lengths against L/2. Only
/// the uniform double pull is stochastic, and even there the outcome product
/// is -1 in every run.
fn analytic_band_expectation(scenario: &Scenario, pair: usize) -> f64 {
    let both_pull = pair == 0;
    let a_pulls = pair == 0 || pair == 1;
    let b_pulls = pair == 0 || pair == 3;
    match *scenario {
        Scenario::UniformBand => {
            if both_pull {
                -1.0
            } else {
                1.0
            }
        }
        Scenario::FixedBreakBand { break_position } => {
            if both_pull {
                let o_a = super::pull_outcome(break_position, DEFAULT_LENGTH);
                let o_b = super::pull_outcome(DEFAULT_LENGTH - break_position, DEFAULT_LENGTH);
                o_a.as_f64() * o_b.as_f64()
            } else {
                1.0
            }
        }
        Scenario::PreBrokenBand { left_fragment } => {
            let o_a = if a_pulls {
                super::pull_outcome(left_fragment, DEFAULT_LENGTH)
            } else {
                crate::quantum::Outcome::Plus
            };
            let o_b = if b_pulls {
                super::pull_outcome(DEFAULT_LENGTH - left_fragment, DEFAULT_LENGTH)
            } else {
                crate::quantum::Outcome::Plus
            };
            o_a.as_f64() * o_b.as_f64()
        }
        Scenario::QuantumSinglet { .. } => unreachable!("band expectation on quantum scenario"),
    }
}

/// Runs one CHSH scenario.
///
/// With `trials == 0` the report holds the exact expectations of the outcome
/// laws; with `trials >= 1` each of the four expectations is estimated from
/// that many fresh coincidence experiments, each expectation on its own
/// derived seed.
pub fn chsh_scenario(scenario: &Scenario, trials: u64, seed: u64) -> Result<ChshReport> {
    // Validate scenario parameters up front, whatever the mode.
    let prototype = scenario.band_prototype()?;

    match *scenario {
        Scenario::QuantumSinglet {
            a,
            b,
            a_prime,
            b_prime,
        } => {
            let pairs = quantum_setting_pairs(a, b, a_prime, b_prime);
            let mut estimates = [ExpectationEstimate::exact(0.0); 4];
            for (k, (c, d)) in pairs.iter().enumerate() {
                estimates[k] = if trials == 0 {
                    ExpectationEstimate::exact(singlet_expectation(*c, *d))
                } else {
                    estimate_singlet_expectation(*c, *d, trials, rng::derive(seed, k as u64))?
                };
            }
            ChshReport::from_expectations(estimates)
        }
        _ => {
            let prototype = prototype.expect("band scenarios have a prototype");
            let pairs = band_setting_pairs();
            let mut estimates = [ExpectationEstimate::exact(0.0); 4];
            for (k, (ea, eb)) in pairs.iter().enumerate() {
                estimates[k] = if trials == 0 {
                    ExpectationEstimate::exact(analytic_band_expectation(scenario, k))
                } else {
                    estimate_expectation(
                        |_| prototype,
                        *ea,
                        *eb,
                        trials,
                        rng::derive(seed, k as u64),
                    )?
                };
            }
            ChshReport::from_expectations(estimates)
        }
    }
}

/// Estimates one singlet coincidence expectation by sampling the joint
/// outcome law, one random stream per trial.
fn estimate_singlet_expectation(
    c: UnitVector3,
    d: UnitVector3,
    trials: u64,
    seed: u64,
) -> Result<ExpectationEstimate> {
    let master = rng::master(seed);
    let plus_products: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::trial(&master, i);
            let (oa, ob) = singlet_sample(c, d, &mut rng);
            u64::from(oa == ob)
        })
        .sum();
    ExpectationEstimate::from_product_counts(plus_products, trials)
}

/// One deterministic local strategy: all four outcomes fixed in advance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LhvStrategy {
    pub o_a: i8,
    pub o_a_prime: i8,
    pub o_b: i8,
    pub o_b_prime: i8,
    pub s: i8,
}

impl LhvStrategy {
    pub fn s_value(&self) -> f64 {
        f64::from(self.s)
    }
}

/// Enumerates all 16 deterministic local strategies with their CHSH values.
///
/// For a deterministic strategy every expectation is just the product of the
/// pre-assigned outcomes, so S = |o_b - o_b'| + |o_b' + o_b| = 2 always.
pub fn lhv_strategies() -> Vec<LhvStrategy> {
    let signs = [1i8, -1i8];
    let mut strategies = Vec::with_capacity(16);
    for o_a in signs {
        for o_a_prime in signs {
            for o_b in signs {
                for o_b_prime in signs {
                    let e_ab = f64::from(o_a * o_b);
                    let e_ab_prime = f64::from(o_a * o_b_prime);
                    let e_a_prime_b_prime = f64::from(o_a_prime * o_b_prime);
                    let e_a_prime_b = f64::from(o_a_prime * o_b);
                    let s = chsh_value(e_ab, e_ab_prime, e_a_prime_b_prime, e_a_prime_b)
                        .expect("products of signs are valid expectations");
                    strategies.push(LhvStrategy {
                        o_a,
                        o_a_prime,
                        o_b,
                        o_b_prime,
                        s: s as i8,
                    });
                }
            }
        }
    }
    strategies
}

/// The classical bound: the maximum CHSH value over all 16 deterministic
/// local strategies. Exactly 2.
pub fn lhv_maximum() -> f64 {
    lhv_strategies()
        .iter()
        .map(LhvStrategy::s_value)
        .fold(f64::NEG_INFINITY, f64::max)
}
