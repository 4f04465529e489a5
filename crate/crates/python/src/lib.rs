//! Python bindings: the domain types and every probability operation,
//! exposed as plain classes and functions. Long-running simulations and
//! optimizations release the GIL.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use jamsec as core;

fn value_error(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Propagation-environment constants.
#[pyclass(name = "EnvironmentParams", from_py_object)]
#[derive(Clone)]
struct PyEnvironmentParams {
    inner: core::EnvironmentParams,
}

#[pymethods]
impl PyEnvironmentParams {
    #[new]
    #[pyo3(signature = (alpha_los=2.5, alpha_nlos=3.5, m_los=2, zeta=15.0, nu=5e-4, mu=0.3))]
    fn new(
        alpha_los: f64,
        alpha_nlos: f64,
        m_los: u32,
        zeta: f64,
        nu: f64,
        mu: f64,
    ) -> PyResult<Self> {
        let inner = core::EnvironmentParams {
            alpha_los,
            alpha_nlos,
            m_los,
            zeta,
            nu,
            mu,
        };
        inner.validate().map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn alpha_los(&self) -> f64 {
        self.inner.alpha_los
    }
    #[getter]
    fn alpha_nlos(&self) -> f64 {
        self.inner.alpha_nlos
    }
    #[getter]
    fn m_los(&self) -> u32 {
        self.inner.m_los
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Powers, SINR targets, geometry, and densities.
#[pyclass(name = "NetworkConfig", from_py_object)]
#[derive(Clone)]
struct PyNetworkConfig {
    inner: core::NetworkConfig,
}

#[pymethods]
impl PyNetworkConfig {
    #[new]
    #[pyo3(signature = (
        p_tx=1e-8, p_jam=3e-10, noise=3e-19, gamma_t=3.0, gamma_t_prime=2.5,
        ell_r=340.0, lambda_e=5e-7, lambda_u=0.0, region_radius=1e4, alpha_tx=None
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        p_tx: f64,
        p_jam: f64,
        noise: f64,
        gamma_t: f64,
        gamma_t_prime: f64,
        ell_r: f64,
        lambda_e: f64,
        lambda_u: f64,
        region_radius: f64,
        alpha_tx: Option<f64>,
    ) -> PyResult<Self> {
        let inner = core::NetworkConfig {
            p_tx,
            p_jam,
            noise,
            gamma_t,
            gamma_t_prime,
            ell_r,
            lambda_e,
            lambda_u,
            region_radius,
            alpha_tx,
        };
        inner.validate().map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn ell_r(&self) -> f64 {
        self.inner.ell_r
    }
    #[getter]
    fn lambda_e(&self) -> f64 {
        self.inner.lambda_e
    }
    #[getter]
    fn p_jam(&self) -> f64 {
        self.inner.p_jam
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Jammer location relative to the Tx-Rx axis.
#[pyclass(name = "JammerPlacement", from_py_object)]
#[derive(Clone)]
struct PyJammerPlacement {
    inner: core::JammerPlacement,
}

#[pymethods]
impl PyJammerPlacement {
    #[new]
    #[pyo3(signature = (d_tu=200.0, z_u=100.0, theta_r=std::f64::consts::PI))]
    fn new(d_tu: f64, z_u: f64, theta_r: f64) -> PyResult<Self> {
        let inner = core::JammerPlacement { d_tu, z_u, theta_r };
        inner.validate().map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn d_tu(&self) -> f64 {
        self.inner.d_tu
    }
    #[getter]
    fn z_u(&self) -> f64 {
        self.inner.z_u
    }
    #[getter]
    fn theta_r(&self) -> f64 {
        self.inner.theta_r
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Quadrature tolerances and truncation controls.
#[pyclass(name = "QuadratureSettings", from_py_object)]
#[derive(Clone)]
struct PyQuadratureSettings {
    inner: core::QuadratureSettings,
}

#[pymethods]
impl PyQuadratureSettings {
    #[new]
    #[pyo3(signature = (rel_tol=1e-8, abs_tol=1e-12, radial_truncation=1e4, max_subdivisions=4000))]
    fn new(
        rel_tol: f64,
        abs_tol: f64,
        radial_truncation: f64,
        max_subdivisions: usize,
    ) -> PyResult<Self> {
        let inner = core::QuadratureSettings {
            rel_tol,
            abs_tol,
            radial_truncation,
            max_subdivisions,
        };
        inner.validate().map_err(value_error)?;
        Ok(Self { inner })
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Jammer-field configuration for the multi-jammer operations.
#[pyclass(name = "MultiJammerSettings", from_py_object)]
#[derive(Clone)]
struct PyMultiJammerSettings {
    inner: core::MultiJammerSettings,
}

#[pymethods]
impl PyMultiJammerSettings {
    #[new]
    #[pyo3(signature = (lambda_u, z_u, quad=None))]
    fn new(lambda_u: f64, z_u: f64, quad: Option<PyQuadratureSettings>) -> PyResult<Self> {
        let inner = core::MultiJammerSettings {
            lambda_u,
            z_u,
            quad: quad.map_or_else(core::QuadratureSettings::default, |q| q.inner),
        };
        inner.validate().map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn lambda_u(&self) -> f64 {
        self.inner.lambda_u
    }
    #[getter]
    fn z_u(&self) -> f64 {
        self.inner.z_u
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Secrecy decomposition `(p_s, p_e, p_se)`.
#[pyclass(name = "SecrecyResult", from_py_object)]
#[derive(Clone)]
struct PySecrecyResult {
    #[pyo3(get)]
    p_s: f64,
    #[pyo3(get)]
    p_e: f64,
    #[pyo3(get)]
    p_se: f64,
}

#[pymethods]
impl PySecrecyResult {
    fn __repr__(&self) -> String {
        format!(
            "SecrecyResult(p_s={}, p_e={}, p_se={})",
            self.p_s, self.p_e, self.p_se
        )
    }
}

impl From<core::SecrecyResult> for PySecrecyResult {
    fn from(r: core::SecrecyResult) -> Self {
        Self {
            p_s: r.p_s,
            p_e: r.p_e,
            p_se: r.p_se,
        }
    }
}

/// Bernoulli Monte Carlo estimate.
#[pyclass(name = "MonteCarloEstimate", from_py_object)]
#[derive(Clone)]
struct PyMonteCarloEstimate {
    #[pyo3(get)]
    mean: f64,
    #[pyo3(get)]
    std_error: f64,
    #[pyo3(get)]
    n_realizations: u64,
}

#[pymethods]
impl PyMonteCarloEstimate {
    fn __repr__(&self) -> String {
        format!(
            "MonteCarloEstimate(mean={}, std_error={}, n={})",
            self.mean, self.std_error, self.n_realizations
        )
    }
}

impl From<core::MonteCarloEstimate> for PyMonteCarloEstimate {
    fn from(e: core::MonteCarloEstimate) -> Self {
        Self {
            mean: e.mean,
            std_error: e.std_error,
            n_realizations: e.n_realizations,
        }
    }
}

/// Placement-search result.
#[pyclass(name = "OptimalPlacement", from_py_object)]
#[derive(Clone)]
struct PyOptimalPlacement {
    #[pyo3(get)]
    d_tu_star: f64,
    #[pyo3(get)]
    z_u_star: f64,
    #[pyo3(get)]
    p_se_star: f64,
    #[pyo3(get)]
    evaluations: u64,
}

#[pymethods]
impl PyOptimalPlacement {
    fn __repr__(&self) -> String {
        format!(
            "OptimalPlacement(d_tu_star={}, z_u_star={}, p_se_star={}, evaluations={})",
            self.d_tu_star, self.z_u_star, self.p_se_star, self.evaluations
        )
    }
}

#[pyfunction]
fn q_function(x: f64) -> f64 {
    core::q_function(x)
}

#[pyfunction]
fn horizontal_distance(d_tu: f64, ell_c: f64, theta_c: f64) -> f64 {
    core::horizontal_distance(d_tu, ell_c, theta_c)
}

#[pyfunction]
fn los_probability(d_c: f64, z_u: f64, env: &PyEnvironmentParams) -> PyResult<f64> {
    core::los_probability(d_c, z_u, &env.inner).map_err(value_error)
}

#[pyfunction]
fn p_success(
    placement: &PyJammerPlacement,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
) -> PyResult<f64> {
    core::p_success(&placement.inner, &cfg.inner, &env.inner).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (placement, cfg, env, quad=None))]
fn p_eavesdrop(
    placement: &PyJammerPlacement,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
    quad: Option<PyQuadratureSettings>,
) -> PyResult<f64> {
    let quad = quad.map_or_else(core::QuadratureSettings::default, |q| q.inner);
    core::p_eavesdrop(&placement.inner, &cfg.inner, &env.inner, &quad).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (placement, cfg, env, quad=None))]
fn p_secrecy(
    placement: &PyJammerPlacement,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
    quad: Option<PyQuadratureSettings>,
) -> PyResult<PySecrecyResult> {
    let quad = quad.map_or_else(core::QuadratureSettings::default, |q| q.inner);
    core::p_secrecy(&placement.inner, &cfg.inner, &env.inner, &quad)
        .map(Into::into)
        .map_err(value_error)
}

#[pyfunction]
fn p_secrecy_asymptotic(
    placement: &PyJammerPlacement,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
) -> PyResult<f64> {
    core::p_secrecy_asymptotic(&placement.inner, &cfg.inner, &env.inner).map_err(value_error)
}

#[pyfunction]
fn p_secrecy_multi(
    settings: &PyMultiJammerSettings,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
) -> PyResult<PySecrecyResult> {
    core::p_secrecy_multi_decomposed(&settings.inner, &cfg.inner, &env.inner)
        .map(Into::into)
        .map_err(value_error)
}

#[pyfunction]
fn p_secrecy_multi_asymptotic(
    settings: &PyMultiJammerSettings,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
) -> PyResult<f64> {
    core::p_secrecy_multi_asymptotic(&settings.inner, &cfg.inner, &env.inner).map_err(value_error)
}

#[pyfunction]
fn p_secrecy_multi_closed_form(
    settings: &PyMultiJammerSettings,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
) -> PyResult<f64> {
    core::p_secrecy_multi_closed_form(&settings.inner, &cfg.inner, &env.inner).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (placement, cfg, env, n=200_000, seed=0))]
fn simulate_secrecy(
    py: Python<'_>,
    placement: &PyJammerPlacement,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
    n: u64,
    seed: u64,
) -> PyMonteCarloEstimate {
    let (placement, cfg, env) = (placement.inner, cfg.inner, env.inner);
    py.detach(move || {
        core::simulate_secrecy(&placement, &cfg, &env, n, &core::RandomStreams::new(seed)).into()
    })
}

#[pyfunction]
#[pyo3(signature = (settings, cfg, env, n=200_000, seed=0))]
fn simulate_secrecy_multi(
    py: Python<'_>,
    settings: &PyMultiJammerSettings,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
    n: u64,
    seed: u64,
) -> PyMonteCarloEstimate {
    let (settings, cfg, env) = (settings.inner, cfg.inner, env.inner);
    py.detach(move || {
        core::simulate_secrecy_multi(&settings, &cfg, &env, n, &core::RandomStreams::new(seed))
            .into()
    })
}

#[pyfunction]
#[pyo3(signature = (cfg, env, quad=None, d_tu=None, z_u=None, refine_iterations=5))]
fn optimize_placement(
    py: Python<'_>,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
    quad: Option<PyQuadratureSettings>,
    d_tu: Option<(f64, f64, usize)>,
    z_u: Option<(f64, f64, usize)>,
    refine_iterations: usize,
) -> PyResult<PyOptimalPlacement> {
    let quad = quad.map_or_else(core::QuadratureSettings::default, |q| q.inner);
    let defaults = core::PlacementSearchSpec::default_single(cfg.inner.ell_r);
    let axis = |t: Option<(f64, f64, usize)>, fallback: core::GridAxis| {
        t.map_or(fallback, |(min, max, points)| core::GridAxis {
            min,
            max,
            points,
        })
    };
    let spec = core::PlacementSearchSpec {
        d_tu: axis(d_tu, defaults.d_tu),
        z_u: axis(z_u, defaults.z_u),
        refine_iterations,
        objective: core::SearchObjective::Single,
    };
    let (cfg, env) = (cfg.inner, env.inner);
    py.detach(move || core::optimize_placement(&spec, &cfg, &env, &quad))
        .map(|best| PyOptimalPlacement {
            d_tu_star: best.d_tu_star,
            z_u_star: best.z_u_star,
            p_se_star: best.p_se_star,
            evaluations: best.evaluations,
        })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (settings, cfg, env, z_u=None, refine_iterations=5))]
fn optimize_height_multi(
    py: Python<'_>,
    settings: &PyMultiJammerSettings,
    cfg: &PyNetworkConfig,
    env: &PyEnvironmentParams,
    z_u: Option<(f64, f64, usize)>,
    refine_iterations: usize,
) -> PyResult<PyOptimalPlacement> {
    let defaults = core::PlacementSearchSpec::default_multi();
    let spec = core::PlacementSearchSpec {
        z_u: z_u.map_or(defaults.z_u, |(min, max, points)| core::GridAxis {
            min,
            max,
            points,
        }),
        refine_iterations,
        ..defaults
    };
    let (settings, cfg, env) = (settings.inner, cfg.inner, env.inner);
    py.detach(move || core::optimize_height_multi(&spec, &settings, &cfg, &env))
        .map(|best| PyOptimalPlacement {
            d_tu_star: best.d_tu_star,
            z_u_star: best.z_u_star,
            p_se_star: best.p_se_star,
            evaluations: best.evaluations,
        })
        .map_err(value_error)
}

#[pymodule]
fn jamsec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEnvironmentParams>()?;
    m.add_class::<PyNetworkConfig>()?;
    m.add_class::<PyJammerPlacement>()?;
    m.add_class::<PyQuadratureSettings>()?;
    m.add_class::<PyMultiJammerSettings>()?;
    m.add_class::<PySecrecyResult>()?;
    m.add_class::<PyMonteCarloEstimate>()?;
    m.add_class::<PyOptimalPlacement>()?;
    m.add_function(wrap_pyfunction!(q_function, m)?)?;
    m.add_function(wrap_pyfunction!(horizontal_distance, m)?)?;
    m.add_function(wrap_pyfunction!(los_probability, m)?)?;
    m.add_function(wrap_pyfunction!(p_success, m)?)?;
    m.add_function(wrap_pyfunction!(p_eavesdrop, m)?)?;
    m.add_function(wrap_pyfunction!(p_secrecy, m)?)?;
    m.add_function(wrap_pyfunction!(p_secrecy_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(p_secrecy_multi, m)?)?;
    m.add_function(wrap_pyfunction!(p_secrecy_multi_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(p_secrecy_multi_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_secrecy, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_secrecy_multi, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_placement, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_height_multi, m)?)?;
    Ok(())
}
