//! The data produced by one CLI run, independent of the output format.

use aerts_machines_core::bell::{chsh_scenario, lhv_strategies, ChshReport, LhvStrategy, Scenario};
use aerts_machines_core::quantum::{
    born_probability, measure_frequency, state_from_direction, UnitVector3,
};
use aerts_machines_core::rng;
use aerts_machines_core::sqm::{
    analytic_epsilon_probability, analytic_probability, outcome_frequency, BreakProfile,
    ParticleState,
};
use aerts_machines_core::Result;

/// Echo of the flags that produced a run; serialized under `"config"`.
#[derive(Clone, Debug)]
pub struct ConfigEcho {
    pub command: &'static str,
    pub gamma: Option<String>,
    pub epsilon: Option<f64>,
    pub scenario: Option<String>,
    pub trials: u64,
    pub seed: u64,
    pub format: String,
    pub out: Option<String>,
}

/// One sweep point: a gamma (and optionally epsilon) with its analytic
/// probability of the +1 outcome and, in Monte Carlo mode, the sampled
/// frequency.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub gamma: f64,
    pub epsilon: Option<f64>,
    pub p_plus_analytic: f64,
    pub p_plus_empirical: Option<f64>,
    pub std_err: Option<f64>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum RunOutput {
    Sweep(Vec<SweepRow>),
    Chsh {
        scenario: String,
        analytic: ChshReport,
        empirical: Option<ChshReport>,
    },
    Lhv {
        strategies: Vec<LhvStrategy>,
        max_s: f64,
    },
}

/// Runs the spin quantum-machine sweep: uniform-band Monte Carlo against the
/// exact (1 + cos γ)/2 law. Each row draws from its own derived seed.
pub fn run_sqm(gammas: &[f64], trials: u64, seed: u64) -> Result<RunOutput> {
    let axis = UnitVector3::Z;
    let mut rows = Vec::with_capacity(gammas.len());
    for (k, &gamma) in gammas.iter().enumerate() {
        let v = ParticleState::new(UnitVector3::polar_xz(gamma));
        let (p_plus, _) = analytic_probability(v, axis);
        let mut row = SweepRow {
            gamma,
            epsilon: None,
            p_plus_analytic: p_plus,
            p_plus_empirical: None,
            std_err: None,
        };
        if trials > 0 {
            let f = outcome_frequency(
                v,
                axis,
                BreakProfile::Uniform,
                trials,
                rng::derive(seed, k as u64),
            )?;
            row.p_plus_empirical = Some(f.p_hat());
            row.std_err = Some(f.std_err());
        }
        rows.push(row);
    }
    Ok(RunOutput::Sweep(rows))
}

/// Runs the ε-machine sweep at a fixed ε.
pub fn run_epsilon(gammas: &[f64], epsilon: f64, trials: u64, seed: u64) -> Result<RunOutput> {
    let axis = UnitVector3::Z;
    let profile = BreakProfile::epsilon(epsilon)?;
    let mut rows = Vec::with_capacity(gammas.len());
    for (k, &gamma) in gammas.iter().enumerate() {
        let v = ParticleState::new(UnitVector3::polar_xz(gamma));
        let (p_plus, _) = analytic_epsilon_probability(v, axis, epsilon)?;
        let mut row = SweepRow {
            gamma,
            epsilon: Some(epsilon),
            p_plus_analytic: p_plus,
            p_plus_empirical: None,
            std_err: None,
        };
        if trials > 0 {
            let f = outcome_frequency(v, axis, profile, trials, rng::derive(seed, k as u64))?;
            row.p_plus_empirical = Some(f.p_hat());
            row.std_err = Some(f.std_err());
        }
        rows.push(row);
    }
    Ok(RunOutput::Sweep(rows))
}

/// Runs the exact spin-1/2 oracle sweep: Born probabilities against sampled
/// projective measurements.
pub fn run_quantum(gammas: &[f64], trials: u64, seed: u64) -> Result<RunOutput> {
    let axis = UnitVector3::Z;
    let mut rows = Vec::with_capacity(gammas.len());
    for (k, &gamma) in gammas.iter().enumerate() {
        let s = state_from_direction(UnitVector3::polar_xz(gamma));
        let mut row = SweepRow {
            gamma,
            epsilon: None,
            p_plus_analytic: born_probability(s, axis),
            p_plus_empirical: None,
            std_err: None,
        };
        if trials > 0 {
            let f = measure_frequency(s, axis, trials, rng::derive(seed, k as u64))?;
            row.p_plus_empirical = Some(f.p_hat());
            row.std_err = Some(f.std_err());
        }
        rows.push(row);
    }
    Ok(RunOutput::Sweep(rows))
}

/// Runs one CHSH scenario: the exact report always, plus a sampled one when
/// trials > 0.
pub fn run_bell(scenario: &Scenario, trials: u64, seed: u64) -> Result<RunOutput> {
    let analytic = chsh_scenario(scenario, 0, seed)?;
    let empirical = if trials > 0 {
        Some(chsh_scenario(scenario, trials, seed)?)
    } else {
        None
    };
    Ok(RunOutput::Chsh {
        scenario: scenario.name().to_string(),
        analytic,
        empirical,
    })
}

pub fn run_lhv() -> RunOutput {
    let strategies = lhv_strategies();
    let max_s = aerts_machines_core::bell::lhv_maximum();
    RunOutput::Lhv { strategies, max_s }
}
