//! Python bindings for the machine-model simulators: the exact spin-1/2
//! oracle, the sphere-and-elastic measurement machine, the elastic-band Bell
//! entity scenarios, and the verification statistics.
//!
//! The module mirrors the Rust API with thin wrappers; every stochastic
//! function takes an explicit `seed` and is fully reproducible.

use aerts_machines_core::bell::{self, Scenario};
use aerts_machines_core::quantum;
use aerts_machines_core::rng;
use aerts_machines_core::sqm;
use aerts_machines_core::stats;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: aerts_machines_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A point on the unit sphere (a direction, a particle position, or a Bloch
/// vector). The constructor normalizes its arguments.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct UnitVector3 {
    inner: quantum::UnitVector3,
}

#[pymethods]
impl UnitVector3 {
    #[new]
    fn new(x: f64, y: f64, z: f64) -> PyResult<Self> {
        Ok(UnitVector3 {
            inner: quantum::UnitVector3::normalized(x, y, z).map_err(value_error)?,
        })
    }

    /// Direction at polar angle `theta` from the z axis, in the x-z plane.
    #[staticmethod]
    fn polar(theta: f64) -> Self {
        UnitVector3 {
            inner: quantum::UnitVector3::polar_xz(theta),
        }
    }

    #[getter]
    fn x(&self) -> f64 {
        self.inner.x()
    }

    #[getter]
    fn y(&self) -> f64 {
        self.inner.y()
    }

    #[getter]
    fn z(&self) -> f64 {
        self.inner.z()
    }

    fn dot(&self, other: &UnitVector3) -> f64 {
        self.inner.dot(other.inner)
    }

    fn angle_to(&self, other: &UnitVector3) -> f64 {
        self.inner.angle_to(other.inner)
    }

    fn __neg__(&self) -> Self {
        UnitVector3 { inner: -self.inner }
    }

    fn __eq__(&self, other: &UnitVector3) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "UnitVector3({:.12}, {:.12}, {:.12})",
            self.inner.x(),
            self.inner.y(),
            self.inner.z()
        )
    }
}

/// A normalized spin-1/2 state (amplitude pair over the z basis).
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct SpinState {
    inner: quantum::SpinState,
}

#[pymethods]
impl SpinState {
    #[new]
    fn new(alpha: Complex64, beta: Complex64) -> PyResult<Self> {
        Ok(SpinState {
            inner: quantum::SpinState::new(alpha, beta).map_err(value_error)?,
        })
    }

    /// Spin up along z.
    #[staticmethod]
    fn up() -> Self {
        SpinState {
            inner: quantum::SpinState::up(),
        }
    }

    /// Spin down along z.
    #[staticmethod]
    fn down() -> Self {
        SpinState {
            inner: quantum::SpinState::down(),
        }
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> Complex64 {
        self.inner.beta()
    }

    /// The Bloch image of this state.
    fn bloch(&self) -> UnitVector3 {
        UnitVector3 {
            inner: self.inner.bloch(),
        }
    }

    /// Ray equality: true when the states differ only by a global phase.
    fn ray_eq(&self, other: &SpinState) -> bool {
        self.inner.ray_eq(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("SpinState({}, {})", self.inner.alpha(), self.inner.beta())
    }
}

/// Where the measurement elastic can snap.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct BreakProfile {
    inner: sqm::BreakProfile,
}

#[pymethods]
impl BreakProfile {
    /// Uniformly breakable band: the quantum regime.
    #[staticmethod]
    fn uniform() -> Self {
        BreakProfile {
            inner: sqm::BreakProfile::uniform(),
        }
    }

    /// Band that always snaps at chord coordinate `x`: a deterministic
    /// measurement interaction.
    #[staticmethod]
    fn fixed_point(x: f64) -> PyResult<Self> {
        Ok(BreakProfile {
            inner: sqm::BreakProfile::fixed_point(x).map_err(value_error)?,
        })
    }

    /// Band breakable only in the central segment [-eps, eps].
    #[staticmethod]
    fn epsilon(eps: f64) -> PyResult<Self> {
        Ok(BreakProfile {
            inner: sqm::BreakProfile::epsilon(eps).map_err(value_error)?,
        })
    }

    fn __repr__(&self) -> String {
        match self.inner {
            sqm::BreakProfile::Uniform => "BreakProfile.uniform()".to_string(),
            sqm::BreakProfile::FixedPoint(x) => {
                format!("BreakProfile.fixed_point({})", x.value())
            }
            sqm::BreakProfile::Epsilon(e) => format!("BreakProfile.epsilon({})", e.value()),
        }
    }
}

/// The spin state whose Bloch vector is `v`.
#[pyfunction]
fn state_from_direction(v: &UnitVector3) -> SpinState {
    SpinState {
        inner: quantum::state_from_direction(v.inner),
    }
}

/// The Bloch vector of `state`.
#[pyfunction]
fn pauli_map(state: &SpinState) -> UnitVector3 {
    UnitVector3 {
        inner: quantum::pauli_map(state.inner),
    }
}

/// Born probability of the +1 outcome for a measurement along `direction`.
#[pyfunction]
fn born_probability(state: &SpinState, direction: &UnitVector3) -> f64 {
    quantum::born_probability(state.inner, direction.inner)
}

/// Samples one projective measurement; returns `(outcome, post_state)` with
/// outcome ±1.
#[pyfunction]
fn sample_spin_measurement(
    state: &SpinState,
    direction: &UnitVector3,
    seed: u64,
) -> (i8, SpinState) {
    let mut rng = rng::master(seed);
    let (outcome, post) = quantum::sample_spin_measurement(state.inner, direction.inner, &mut rng);
    (outcome.value(), SpinState { inner: post })
}

/// The singlet coincidence expectation `-c·d`.
#[pyfunction]
fn singlet_expectation(c: &UnitVector3, d: &UnitVector3) -> f64 {
    quantum::singlet_expectation(c.inner, d.inner)
}

/// Samples one singlet coincidence; returns the pair of ±1 outcomes.
#[pyfunction]
fn singlet_sample(c: &UnitVector3, d: &UnitVector3, seed: u64) -> (i8, i8) {
    let mut rng = rng::master(seed);
    let (a, b) = quantum::singlet_sample(c.inner, d.inner, &mut rng);
    (a.value(), b.value())
}

/// The CHSH statistic `|e_ab - e_ab_prime| + |e_a_prime_b_prime + e_a_prime_b|`.
#[pyfunction]
fn chsh_value(e_ab: f64, e_ab_prime: f64, e_a_prime_b_prime: f64, e_a_prime_b: f64) -> PyResult<f64> {
    quantum::chsh_value(e_ab, e_ab_prime, e_a_prime_b_prime, e_a_prime_b).map_err(value_error)
}

/// Exact uniform-machine probabilities `(p_plus, p_minus)` for a particle at
/// `v` measured along `u`.
#[pyfunction]
fn sqm_analytic_probability(v: &UnitVector3, u: &UnitVector3) -> (f64, f64) {
    sqm::analytic_probability(sqm::ParticleState::new(v.inner), u.inner)
}

/// Exact ε-machine probabilities `(p_plus, p_minus)`.
#[pyfunction]
fn sqm_epsilon_probability(v: &UnitVector3, u: &UnitVector3, epsilon: f64) -> PyResult<(f64, f64)> {
    sqm::analytic_epsilon_probability(sqm::ParticleState::new(v.inner), u.inner, epsilon)
        .map_err(value_error)
}

fn outcome_dict<'py>(py: Python<'py>, o: &sqm::SqmOutcome) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("sign", o.sign.value())?;
    dict.set_item(
        "direction",
        UnitVector3 { inner: o.direction }.into_pyobject(py)?,
    )?;
    dict.set_item("break_point", o.break_point.value())?;
    dict.set_item("landing", o.landing.value())?;
    dict.set_item("boundary", o.boundary)?;
    Ok(dict)
}

/// Runs one machine measurement of the particle at `v` along `u`.
#[pyfunction]
fn sqm_run_measurement<'py>(
    py: Python<'py>,
    v: &UnitVector3,
    u: &UnitVector3,
    profile: &BreakProfile,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let mut rng = rng::master(seed);
    let outcome = sqm::run_measurement(
        sqm::ParticleState::new(v.inner),
        u.inner,
        profile.inner,
        &mut rng,
    );
    outcome_dict(py, &outcome)
}

/// Chains measurements along `directions`, feeding each outcome in as the
/// next state; returns one outcome dict per step.
#[pyfunction]
fn sqm_run_sequence<'py>(
    py: Python<'py>,
    v: &UnitVector3,
    directions: Vec<PyRef<'py, UnitVector3>>,
    profile: &BreakProfile,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let dirs: Vec<quantum::UnitVector3> = directions.iter().map(|d| d.inner).collect();
    let mut rng = rng::master(seed);
    let outcomes = sqm::run_sequence(
        sqm::ParticleState::new(v.inner),
        &dirs,
        profile.inner,
        &mut rng,
    )
    .map_err(value_error)?;
    outcomes.iter().map(|o| outcome_dict(py, o)).collect()
}

fn frequency_dict<'py>(
    py: Python<'py>,
    f: &stats::FrequencyEstimate,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("successes", f.successes())?;
    dict.set_item("trials", f.trials())?;
    dict.set_item("p_hat", f.p_hat())?;
    dict.set_item("std_err", f.std_err())?;
    Ok(dict)
}

/// Frequency of the +1 outcome over `trials` machine measurements (one
/// independent random stream per trial).
#[pyfunction]
fn sqm_outcome_frequency<'py>(
    py: Python<'py>,
    v: &UnitVector3,
    u: &UnitVector3,
    profile: &BreakProfile,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let f = sqm::outcome_frequency(
        sqm::ParticleState::new(v.inner),
        u.inner,
        profile.inner,
        trials,
        seed,
    )
    .map_err(value_error)?;
    frequency_dict(py, &f)
}

/// Frequency of +1 for the hidden-measurement mixture: draw x0 uniformly,
/// then run the deterministic fixed-point measurement.
#[pyfunction]
fn sqm_hidden_mixture_frequency<'py>(
    py: Python<'py>,
    v: &UnitVector3,
    u: &UnitVector3,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let f = sqm::hidden_mixture_frequency(sqm::ParticleState::new(v.inner), u.inner, trials, seed)
        .map_err(value_error)?;
    frequency_dict(py, &f)
}

fn expectation_dict<'py>(
    py: Python<'py>,
    e: &bell::ExpectationEstimate,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("value", e.value)?;
    dict.set_item("trials", e.trials)?;
    dict.set_item("std_err", e.standard_error)?;
    Ok(dict)
}

/// Runs a CHSH scenario (`"uniform-band"`, `"fixed-break-band"`,
/// `"pre-broken-band"` or `"quantum-singlet"`). `trials = 0` gives the exact
/// expectations; otherwise each expectation is sampled that many times.
#[pyfunction]
fn chsh_scenario<'py>(
    py: Python<'py>,
    scenario: &str,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let scenario = Scenario::from_name(scenario).map_err(value_error)?;
    let report = bell::chsh_scenario(&scenario, trials, seed).map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("scenario", scenario.name())?;
    dict.set_item("e_ab", expectation_dict(py, &report.e_ab)?)?;
    dict.set_item("e_ab_prime", expectation_dict(py, &report.e_ab_prime)?)?;
    dict.set_item(
        "e_a_prime_b_prime",
        expectation_dict(py, &report.e_a_prime_b_prime)?,
    )?;
    dict.set_item("e_a_prime_b", expectation_dict(py, &report.e_a_prime_b)?)?;
    dict.set_item("s_value", report.s_value)?;
    dict.set_item("s_value_std_err", report.combined_standard_error())?;
    Ok(dict)
}

/// The classical bound: max CHSH value over the 16 deterministic local
/// strategies (exactly 2).
#[pyfunction]
fn lhv_maximum() -> f64 {
    bell::lhv_maximum()
}

/// All 16 deterministic local strategies with their CHSH values.
#[pyfunction]
fn lhv_strategies(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    bell::lhv_strategies()
        .iter()
        .map(|s| {
            let dict = PyDict::new(py);
            dict.set_item("o_a", s.o_a)?;
            dict.set_item("o_a_prime", s.o_a_prime)?;
            dict.set_item("o_b", s.o_b)?;
            dict.set_item("o_b_prime", s.o_b_prime)?;
            dict.set_item("s", s.s_value())?;
            Ok(dict)
        })
        .collect()
}

/// One-sample Kolmogorov-Smirnov uniformity test against uniform[lo, hi]
/// with the fixed critical value 1.63/sqrt(n).
#[pyfunction]
fn ks_uniformity<'py>(
    py: Python<'py>,
    samples: Vec<f64>,
    lo: f64,
    hi: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = stats::ks_uniformity(&samples, lo, hi).map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("statistic", r.statistic)?;
    dict.set_item("critical_value", r.critical_value)?;
    dict.set_item("passed", r.pass)?;
    Ok(dict)
}

/// Binomial z-score acceptance check of `successes/trials` against the
/// expected probability.
#[pyfunction]
fn z_check(successes: u64, trials: u64, expected: f64, z: f64) -> PyResult<bool> {
    let estimate = stats::FrequencyEstimate::new(successes, trials).map_err(value_error)?;
    Ok(stats::z_check(&estimate, expected, z))
}

#[pymodule]
fn aerts_machines(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<UnitVector3>()?;
    m.add_class::<SpinState>()?;
    m.add_class::<BreakProfile>()?;
    m.add_function(wrap_pyfunction!(state_from_direction, m)?)?;
    m.add_function(wrap_pyfunction!(pauli_map, m)?)?;
    m.add_function(wrap_pyfunction!(born_probability, m)?)?;
    m.add_function(wrap_pyfunction!(sample_spin_measurement, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_sample, m)?)?;
    m.add_function(wrap_pyfunction!(chsh_value, m)?)?;
    m.add_function(wrap_pyfunction!(sqm_analytic_probability, m)?)?;
    m.add_function(wrap_pyfunction!(sqm_epsilon_probability, m)?)?;
    m.add_function(wrap_pyfunction!(sqm_run_measurement, m)?)?;
    m.add_function(wrap_pyfunction!(sqm_run_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(sqm_outcome_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(sqm_hidden_mixture_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(chsh_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(lhv_maximum, m)?)?;
    m.add_function(wrap_pyfunction!(lhv_strategies, m)?)?;
    m.add_function(wrap_pyfunction!(ks_uniformity, m)?)?;
    m.add_function(wrap_pyfunction!(z_check, m)?)?;
    m.add("__all__", [
        "UnitVector3",
        "SpinState",
        "BreakProfile",
        "state_from_direction",
        "pauli_map",
        "born_probability",
        "sample_spin_measurement",
        "singlet_expectation",
        "singlet_sample",
        "chsh_value",
        "sqm_analytic_probability",
        "sqm_epsilon_probability",
        "sqm_run_measurement",
        "sqm_run_sequence",
        "sqm_outcome_frequency",
        "sqm_hidden_mixture_frequency",
        "chsh_scenario",
        "lhv_maximum",
        "lhv_strategies",
        "ks_uniformity",
        "z_check",
    ])?;
    Ok(())
}
