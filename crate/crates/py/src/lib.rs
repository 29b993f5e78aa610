use num_complex::Complex64;
use occulab_core::analytic::{self, AsymptoticInput, SeriesTolerance};
use occulab_core::error::Error;
use occulab_core::experiments::{self as exps, ExperimentReport};
use occulab_core::inversion::{self as inv, InversionConfig, Method};
use occulab_core::laplace::{self, ComplexLambda, DomainTag};
use occulab_core::montecarlo::{self as mc, Event, McOptions, OccupationMode, StartLaw};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(occulab, AccuracyError, PyException, "Methods disagree or a series did not converge.");
create_exception!(occulab, PartialResultError, PyException, "A sampling budget ran out.");

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        3 => AccuracyError::new_err(e.to_string()),
        4 => PartialResultError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn tol(abs_tol: f64) -> PyResult<SeriesTolerance> {
    SeriesTolerance::new(abs_tol, 100_000).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (y, t, abs_tol = 1e-15))]
fn exit_prob_zero(y: f64, t: f64, abs_tol: f64) -> PyResult<f64> {
    analytic::exit_prob_zero(y, t, tol(abs_tol)?).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (y, t, abs_tol = 1e-15))]
fn exit_time_density(y: f64, t: f64, abs_tol: f64) -> PyResult<f64> {
    analytic::exit_time_density(y, t, tol(abs_tol)?).map_err(to_py)
}

#[pyfunction]
fn qsd_density(y: f64) -> f64 {
    analytic::qsd_density(y)
}

#[pyfunction]
fn qsd_cdf(y: f64) -> f64 {
    analytic::qsd_cdf(y)
}

#[pyfunction]
#[pyo3(signature = (x1, x2, t, abs_tol = 1e-15))]
fn taboo_transition_density(x1: f64, x2: f64, t: f64, abs_tol: f64) -> PyResult<f64> {
    analytic::taboo_transition_density(x1, x2, t, tol(abs_tol)?).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (x1, x2, t, abs_tol = 1e-15))]
fn taboo_transition_cdf(x1: f64, x2: f64, t: f64, abs_tol: f64) -> PyResult<f64> {
    analytic::taboo_transition_cdf(x1, x2, t, tol(abs_tol)?).map_err(to_py)
}

/// `log P_y(Γ_T ≤ s)` to leading order.
#[pyfunction]
fn log_asymp_prob_leq_s(y: f64, s: f64, t: f64) -> PyResult<f64> {
    let inp = AsymptoticInput::new(y, s, t).map_err(to_py)?;
    analytic::log_asymp_prob_leq_s(inp).map(|l| l.ln()).map_err(to_py)
}

#[pyfunction]
fn log_asymp_snu(s: f64, t: f64) -> PyResult<f64> {
    analytic::log_asymp_snu(s, t).map(|l| l.ln()).map_err(to_py)
}

#[pyfunction]
fn saddle_h(t: f64, s: f64) -> PyResult<f64> {
    analytic::saddle_h(t, s).map_err(to_py)
}

/// Laplace transform of `T ↦ P_y(Γ_T ∈ (0, s])` at complex `lam`.
#[pyfunction]
fn laplace_r(lam: Complex64, y: f64, s: f64) -> PyResult<Complex64> {
    let l = ComplexLambda::from_complex(lam, DomainTag::HLeft).map_err(to_py)?;
    laplace::laplace_r(l, y, s).map(|v| v.to_complex()).map_err(to_py)
}

/// `log Ŝ(λ)` as a complex number (log modulus, phase).
#[pyfunction]
fn log_s_hat(lam: Complex64, y: f64, s: f64) -> PyResult<Complex64> {
    let l = ComplexLambda::from_complex(lam, DomainTag::H).map_err(to_py)?;
    laplace::fn_s_hat(l, y, s).map(|v| v.ln()).map_err(to_py)
}

#[pyclass(name = "InversionConfig", module = "occulab", from_py_object)]
#[derive(Clone)]
struct PyInversionConfig {
    inner: InversionConfig,
}

#[pymethods]
impl PyInversionConfig {
    #[new]
    #[pyo3(signature = (method = "bromwich", cross_check = false, precision_bits = 512, n_terms = 48))]
    fn new(method: &str, cross_check: bool, precision_bits: usize, n_terms: usize) -> PyResult<Self> {
        let method: Method = method.parse().map_err(to_py)?;
        let inner = InversionConfig { method, cross_check, precision_bits, n_terms, ..Default::default() };
        inner.validate().map_err(to_py)?;
        Ok(PyInversionConfig { inner })
    }

    #[getter]
    fn method(&self) -> &'static str {
        match self.inner.method {
            Method::GaverStehfest => "gaver-stehfest",
            Method::BromwichTrapezoid => "bromwich",
        }
    }

    #[getter]
    fn cross_check(&self) -> bool {
        self.inner.cross_check
    }
}

fn config(c: Option<PyInversionConfig>) -> InversionConfig {
    c.map(|c| c.inner).unwrap_or_else(InversionConfig::bromwich)
}

/// `S_ν(T)` by numerical inversion.
#[pyfunction]
#[pyo3(signature = (s, t, config = None))]
fn snu_from_transform(s: f64, t: f64, config: Option<PyInversionConfig>) -> PyResult<f64> {
    inv::snu_from_transform(s, t, &self::config(config)).map_err(to_py)
}

/// `P_y(Γ_T ∈ (0, s])` by numerical inversion.
#[pyfunction]
#[pyo3(signature = (y, s, t, config = None))]
fn r_from_transform(y: f64, s: f64, t: f64, config: Option<PyInversionConfig>) -> PyResult<f64> {
    inv::r_from_transform(y, s, t, &self::config(config)).map_err(to_py)
}

#[pyclass(name = "McEstimate", module = "occulab", frozen, skip_from_py_object)]
struct PyMcEstimate {
    #[pyo3(get)]
    p_hat: f64,
    #[pyo3(get)]
    std_err: f64,
    #[pyo3(get)]
    n_accept: u64,
    #[pyo3(get)]
    n_total: u64,
    #[pyo3(get)]
    seed: u64,
    #[pyo3(get)]
    upper_bound: Option<f64>,
}

#[pymethods]
impl PyMcEstimate {
    fn __repr__(&self) -> String {
        format!(
            "McEstimate(p_hat={}, std_err={}, n_accept={}, n_total={})",
            self.p_hat, self.std_err, self.n_accept, self.n_total
        )
    }
}

fn parse_start(start: &str, y: f64) -> PyResult<StartLaw> {
    match start {
        "point" => Ok(StartLaw::Point(y)),
        "qsd" => Ok(StartLaw::Qsd),
        other => Err(PyValueError::new_err(format!("unknown start `{other}`"))),
    }
}

/// Monte Carlo estimate of an event probability; `event` is one of
/// `leq_s`, `eq_zero`, `in_0s`, `survive`, `leq_s_tau` (with `eps`).
#[pyfunction]
#[pyo3(signature = (y, t, dt, s, event, n, seed, start = "point", mode = "exact", eps = None, threads = None))]
#[allow(clippy::too_many_arguments)]
fn estimate_event(
    py: Python<'_>,
    y: f64,
    t: f64,
    dt: f64,
    s: f64,
    event: &str,
    n: u64,
    seed: u64,
    start: &str,
    mode: &str,
    eps: Option<f64>,
    threads: Option<usize>,
) -> PyResult<PyMcEstimate> {
    let ev = match (event, eps) {
        ("leq_s_tau" | "leq-s-tau", Some(e)) => Event::LeqSTauAtLeast(e),
        ("leq_s_tau" | "leq-s-tau", None) => return Err(PyValueError::new_err("leq_s_tau needs eps")),
        (other, _) => other.parse().map_err(to_py)?,
    };
    let opts = McOptions { mode: mode.parse::<OccupationMode>().map_err(to_py)?, ..Default::default() };
    let law = parse_start(start, y)?;
    let e = py
        .detach(|| mc::with_threads(threads, || mc::estimate_event_with(law, t, dt, s, ev, n, seed, &opts)))
        .map_err(to_py)?
        .map_err(to_py)?;
    Ok(PyMcEstimate {
        p_hat: e.p_hat,
        std_err: e.std_err,
        n_accept: e.n_accept,
        n_total: e.n_total,
        seed: e.seed,
        upper_bound: e.upper_bound,
    })
}

/// Runs a named experiment with its default configuration, overriding `n`, `dt` and `seed`
/// when given, and returns the report as CSV text.
#[pyfunction]
#[pyo3(signature = (name, n = None, dt = None, seed = None))]
fn run_experiment(py: Python<'_>, name: &str, n: Option<u64>, dt: Option<f64>, seed: Option<u64>) -> PyResult<String> {
    let rep: Result<ExperimentReport, Error> = py.detach(|| match name {
        "ratio-qsd" => {
            let d = exps::RatioQsdConfig::default();
            exps::exp_ratio_qsd(&exps::RatioQsdConfig {
                n: n.unwrap_or(d.n),
                dt: dt.unwrap_or(d.dt),
                seed: seed.unwrap_or(d.seed),
                ..d
            })
        }
        "qsd-stationarity" => {
            let d = exps::QsdStationarityConfig::default();
            exps::exp_qsd_stationarity(&exps::QsdStationarityConfig {
                n_survivors: n.map_or(d.n_survivors, |v| v as usize),
                dt: dt.unwrap_or(d.dt),
                seed: seed.unwrap_or(d.seed),
                ..d
            })
        }
        "thm-main" => {
            let d = exps::ThmMainConfig::default();
            exps::exp_thm_main(&exps::ThmMainConfig {
                n_wanted: n.map_or(d.n_wanted, |v| v as usize),
                dt: dt.unwrap_or(d.dt),
                seed: seed.unwrap_or(d.seed),
                ..d
            })
        }
        "prop-asymp" => {
            let d = exps::PropAsympConfig::default();
            exps::exp_prop_asymp(&exps::PropAsympConfig {
                n: n.unwrap_or(d.n),
                dt: dt.unwrap_or(d.dt),
                seed: seed.unwrap_or(d.seed),
                ..d
            })
        }
        "cor-outside" => {
            let d = exps::CorOutsideConfig::default();
            exps::exp_cor_outside(&exps::CorOutsideConfig {
                n: n.unwrap_or(d.n),
                dt: dt.unwrap_or(d.dt),
                seed: seed.unwrap_or(d.seed),
                ..d
            })
        }
        other => Err(Error::config(format!("unknown experiment `{other}`"))),
    });
    rep.map(|r| r.to_csv_string(None)).map_err(to_py)
}

/// Runs acceptance criteria (all when `ids` is empty); returns `(id, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (ids = Vec::new()))]
fn acceptance(py: Python<'_>, ids: Vec<u8>) -> Vec<(u8, bool, String)> {
    py.detach(|| occulab_core::acceptance::run_all(&ids, |_| {}))
        .into_iter()
        .map(|o| (o.id, o.passed, o.detail))
        .collect()
}

#[pymodule]
fn occulab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AccuracyError", m.py().get_type::<AccuracyError>())?;
    m.add("PartialResultError", m.py().get_type::<PartialResultError>())?;
    m.add_class::<PyInversionConfig>()?;
    m.add_class::<PyMcEstimate>()?;
    m.add_function(wrap_pyfunction!(exit_prob_zero, m)?)?;
    m.add_function(wrap_pyfunction!(exit_time_density, m)?)?;
    m.add_function(wrap_pyfunction!(qsd_density, m)?)?;
    m.add_function(wrap_pyfunction!(qsd_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(taboo_transition_density, m)?)?;
    m.add_function(wrap_pyfunction!(taboo_transition_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(log_asymp_prob_leq_s, m)?)?;
    m.add_function(wrap_pyfunction!(log_asymp_snu, m)?)?;
    m.add_function(wrap_pyfunction!(saddle_h, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_r, m)?)?;
    m.add_function(wrap_pyfunction!(log_s_hat, m)?)?;
    m.add_function(wrap_pyfunction!(snu_from_transform, m)?)?;
    m.add_function(wrap_pyfunction!(r_from_transform, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_event, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(acceptance, m)?)?;
    Ok(())
}
