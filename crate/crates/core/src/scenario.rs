//! Scenario files, sweep execution, and structured output.
//!
//! One TOML scenario file fully describes a run: parameters, sweep axes,
//! the mode (analytic, simulate, compare, optimize), model (single or
//! multi jammer), tolerances, realization count, and seed. Unknown keys
//! are rejected. Results go to a fixed-header CSV; alongside it a manifest
//! is written with every parameter resolved, so re-running the manifest
//! reproduces the table byte for byte.

use crate::channel::{EnvironmentParams, JammerPlacement, NetworkConfig};
use crate::error::{Error, Result};
use crate::montecarlo::{simulate_secrecy, simulate_secrecy_multi, RandomStreams};
use crate::multi_jammer::{p_secrecy_multi_decomposed, MultiJammerSettings};
use crate::optimizer::{
    optimize_height_multi, optimize_placement, GridAxis, PlacementSearchSpec, SearchObjective,
};
use crate::quadrature::QuadratureSettings;
use crate::single_jammer::{p_secrecy, SecrecyResult};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// What the run computes per row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Analytic,
    Simulate,
    Compare,
    Optimize,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Analytic => "analytic",
            Mode::Simulate => "simulate",
            Mode::Compare => "compare",
            Mode::Optimize => "optimize",
        }
    }
}

/// Single adjustable jammer or a Poisson field of jammers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[default]
    Single,
    Multi,
}

impl Model {
    fn as_str(self) -> &'static str {
        match self {
            Model::Single => "single",
            Model::Multi => "multi",
        }
    }
}

/// Parameters a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    DTu,
    ZU,
    ThetaR,
    LambdaE,
    LambdaU,
    PJam,
}

/// One sweep axis: either an explicit value list or start/stop/step.
/// Declared axes combine as a cartesian product with later axes varying
/// fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub axis: AxisName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

impl SweepAxis {
    fn resolve(&self) -> Result<Vec<f64>> {
        match (&self.values, self.start, self.stop, self.step) {
            (Some(values), None, None, None) if !values.is_empty() => Ok(values.clone()),
            (None, Some(start), Some(stop), Some(step)) => {
                if !(step > 0.0) {
                    return Err(Error::Scenario(format!(
                        "sweep axis {:?}: step must be > 0, got {step}",
                        self.axis
                    )));
                }
                if stop < start {
                    return Err(Error::Scenario(format!(
                        "sweep axis {:?}: stop {stop} < start {start}",
                        self.axis
                    )));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok((0..count).map(|i| start + step * i as f64).collect())
            }
            _ => Err(Error::Scenario(format!(
                "sweep axis {:?}: give either values = [...] or start/stop/step",
                self.axis
            ))),
        }
    }
}

/// Monte Carlo controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MonteCarloSettings {
    pub n_realizations: u64,
}

impl Default for MonteCarloSettings {
    fn default() -> Self {
        Self {
            n_realizations: 200_000,
        }
    }
}

/// Optimizer controls; unset axes fall back to the default search box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_tu: Option<GridAxis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_u: Option<GridAxis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refine_iterations: Option<usize>,
}

/// Version stamp written into manifests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub library_version: String,
}

/// A full run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub mode: Mode,
    #[serde(default)]
    pub model: Model,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub environment: EnvironmentParams,
    #[serde(default)]
    pub network: NetworkConfig,
    #[serde(default)]
    pub placement: JammerPlacement,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepAxis>,
    #[serde(default)]
    pub quadrature: QuadratureSettings,
    #[serde(default)]
    pub montecarlo: MonteCarloSettings,
    #[serde(default)]
    pub optimize: OptimizeSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// One violated invariant found by `validate_config`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn push_violation(report: &mut Vec<Violation>, result: Result<()>) {
    if let Err(e) = result {
        let field = match &e {
            Error::InvalidParameter { name, .. } => (*name).to_string(),
            _ => "scenario".to_string(),
        };
        report.push(Violation {
            field,
            message: e.to_string(),
        });
    }
}

/// Pure invariant check: lists every violated domain rule without running
/// anything.
pub fn validate_config(scenario: &ScenarioFile) -> Vec<Violation> {
    let mut report = Vec::new();
    push_violation(&mut report, scenario.environment.validate());
    push_violation(&mut report, scenario.network.validate());
    push_violation(&mut report, scenario.placement.validate());
    push_violation(&mut report, scenario.quadrature.validate());
    if scenario.montecarlo.n_realizations == 0 {
        report.push(Violation {
            field: "n_realizations".to_string(),
            message: "n_realizations must be >= 1".to_string(),
        });
    }
    for axis in &scenario.sweep {
        if let Err(e) = axis.resolve() {
            report.push(Violation {
                field: format!("sweep.{:?}", axis.axis),
                message: e.to_string(),
            });
        }
    }
    if let Some(axis) = scenario.optimize.d_tu {
        push_violation(&mut report, axis.validate("optimize.d_tu"));
    }
    if let Some(axis) = scenario.optimize.z_u {
        push_violation(&mut report, axis.validate("optimize.z_u"));
    }
    report
}

/// Reads and parses a scenario file; parse errors name the offending key.
pub fn load_scenario(path: &Path) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    toml::from_str(&text).map_err(|e| Error::Scenario(e.to_string()))
}

/// Per-row parameter set after applying the sweep axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowParams {
    pub d_tu: f64,
    pub z_u: f64,
    pub theta_r: f64,
    pub lambda_e: f64,
    pub lambda_u: f64,
    pub p_jam: f64,
}

impl RowParams {
    fn base(scenario: &ScenarioFile) -> Self {
        Self {
            d_tu: scenario.placement.d_tu,
            z_u: scenario.placement.z_u,
            theta_r: scenario.placement.theta_r,
            lambda_e: scenario.network.lambda_e,
            lambda_u: scenario.network.lambda_u,
            p_jam: scenario.network.p_jam,
        }
    }

    fn set(&mut self, axis: AxisName, value: f64) {
        match axis {
            AxisName::DTu => self.d_tu = value,
            AxisName::ZU => self.z_u = value,
            AxisName::ThetaR => self.theta_r = value,
            AxisName::LambdaE => self.lambda_e = value,
            AxisName::LambdaU => self.lambda_u = value,
            AxisName::PJam => self.p_jam = value,
        }
    }

    fn placement(&self) -> JammerPlacement {
        JammerPlacement {
            d_tu: self.d_tu,
            z_u: self.z_u,
            theta_r: self.theta_r,
        }
    }

    fn network(&self, base: &NetworkConfig) -> NetworkConfig {
        NetworkConfig {
            lambda_e: self.lambda_e,
            lambda_u: self.lambda_u,
            p_jam: self.p_jam,
            ..*base
        }
    }
}

/// One output row. Fields not computed in the active mode stay empty.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: RowParams,
    pub p_s: Option<f64>,
    pub p_e: Option<f64>,
    pub p_se: Option<f64>,
    pub mc_mean: Option<f64>,
    pub mc_std_error: Option<f64>,
    pub mc_n: Option<u64>,
    pub d_tu_star: Option<f64>,
    pub z_u_star: Option<f64>,
    pub p_se_star: Option<f64>,
    pub status: String,
}

impl SweepRow {
    fn empty(params: RowParams) -> Self {
        Self {
            params,
            p_s: None,
            p_e: None,
            p_se: None,
            mc_mean: None,
            mc_std_error: None,
            mc_n: None,
            d_tu_star: None,
            z_u_star: None,
            p_se_star: None,
            status: String::new(),
        }
    }
}

/// Fixed CSV header, in column order.
pub const CSV_HEADER: &str = "mode,model,d_tu,z_u,theta_r,lambda_e,lambda_u,p_jam,\
p_s,p_e,p_se,mc_mean,mc_std_error,mc_n,d_tu_star,z_u_star,p_se_star,status";

/// Everything a finished run produced.
#[derive(Debug)]
pub struct RunReport {
    pub rows: Vec<SweepRow>,
    pub csv: String,
    pub output_path: PathBuf,
    pub manifest_path: PathBuf,
    pub row_failures: usize,
}

/// Command-line overrides applied on top of the scenario file.
#[derive(Debug, Default, Clone)]
pub struct RunOverrides {
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

fn analytic_columns(
    scenario: &ScenarioFile,
    params: &RowParams,
    cfg: &NetworkConfig,
) -> Result<SecrecyResult> {
    match scenario.model {
        Model::Single => p_secrecy(
            &params.placement(),
            cfg,
            &scenario.environment,
            &scenario.quadrature,
        ),
        Model::Multi => p_secrecy_multi_decomposed(
            &MultiJammerSettings {
                lambda_u: params.lambda_u,
                z_u: params.z_u,
                quad: scenario.quadrature,
            },
            cfg,
            &scenario.environment,
        ),
    }
}

fn simulate_columns(
    scenario: &ScenarioFile,
    params: &RowParams,
    cfg: &NetworkConfig,
    row_seed: u64,
) -> crate::montecarlo::MonteCarloEstimate {
    let streams = RandomStreams::new(row_seed);
    let n = scenario.montecarlo.n_realizations;
    match scenario.model {
        Model::Single => {
            simulate_secrecy(&params.placement(), cfg, &scenario.environment, n, &streams)
        }
        Model::Multi => simulate_secrecy_multi(
            &MultiJammerSettings {
                lambda_u: params.lambda_u,
                z_u: params.z_u,
                quad: scenario.quadrature,
            },
            cfg,
            &scenario.environment,
            n,
            &streams,
        ),
    }
}

fn optimize_columns(
    scenario: &ScenarioFile,
    params: &RowParams,
    cfg: &NetworkConfig,
) -> Result<crate::optimizer::OptimalPlacement> {
    let refine = scenario.optimize.refine_iterations.unwrap_or(5);
    match scenario.model {
        Model::Single => {
            let defaults = PlacementSearchSpec::default_single(cfg.ell_r);
            let spec = PlacementSearchSpec {
                d_tu: scenario.optimize.d_tu.unwrap_or(defaults.d_tu),
                z_u: scenario.optimize.z_u.unwrap_or(defaults.z_u),
                refine_iterations: refine,
                objective: SearchObjective::Single,
            };
            optimize_placement(&spec, cfg, &scenario.environment, &scenario.quadrature)
        }
        Model::Multi => {
            let defaults = PlacementSearchSpec::default_multi();
            let spec = PlacementSearchSpec {
                d_tu: GridAxis::fixed(0.0),
                z_u: scenario.optimize.z_u.unwrap_or(defaults.z_u),
                refine_iterations: refine,
                objective: SearchObjective::Multi,
            };
            optimize_height_multi(
                &spec,
                &MultiJammerSettings {
                    lambda_u: params.lambda_u,
                    z_u: 0.0,
                    quad: scenario.quadrature,
                },
                cfg,
                &scenario.environment,
            )
        }
    }
}

fn execute_row(scenario: &ScenarioFile, params: RowParams, row_seed: u64) -> SweepRow {
    let mut row = SweepRow::empty(params);
    let cfg = params.network(&scenario.network);

    let outcome: Result<()> = (|| {
        match scenario.mode {
            Mode::Analytic => {
                let r = analytic_columns(scenario, &params, &cfg)?;
                row.p_s = Some(r.p_s);
                row.p_e = Some(r.p_e);
                row.p_se = Some(r.p_se);
                row.status = "ok".to_string();
            }
            Mode::Simulate => {
                let est = simulate_columns(scenario, &params, &cfg, row_seed);
                row.mc_mean = Some(est.mean);
                row.mc_std_error = Some(est.std_error);
                row.mc_n = Some(est.n_realizations);
                row.status = "ok".to_string();
            }
            Mode::Compare => {
                let r = analytic_columns(scenario, &params, &cfg)?;
                let est = simulate_columns(scenario, &params, &cfg, row_seed);
                row.p_s = Some(r.p_s);
                row.p_e = Some(r.p_e);
                row.p_se = Some(r.p_se);
                row.mc_mean = Some(est.mean);
                row.mc_std_error = Some(est.std_error);
                row.mc_n = Some(est.n_realizations);
                let pass = (r.p_se - est.mean).abs() <= 4.0 * est.std_error + 1e-12;
                row.status = if pass { "PASS" } else { "FAIL" }.to_string();
            }
            Mode::Optimize => {
                let best = optimize_columns(scenario, &params, &cfg)?;
                row.d_tu_star = Some(best.d_tu_star);
                row.z_u_star = Some(best.z_u_star);
                row.p_se_star = Some(best.p_se_star);
                row.status = "ok".to_string();
            }
        }
        Ok(())
    })();

    if let Err(e) = outcome {
        row.status = format!("error: {e}");
    }
    row
}

/// Resolves the cartesian product of the sweep axes (later axes fastest).
fn resolve_rows(scenario: &ScenarioFile) -> Result<Vec<RowParams>> {
    let mut rows = vec![RowParams::base(scenario)];
    for axis in &scenario.sweep {
        let values = axis.resolve()?;
        let mut next = Vec::with_capacity(rows.len() * values.len());
        for row in &rows {
            for &v in &values {
                let mut r = *row;
                r.set(axis.axis, v);
                next.push(r);
            }
        }
        rows = next;
    }
    Ok(rows)
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn render_csv(scenario: &ScenarioFile, rows: &[SweepRow]) -> String {
    let mut csv = String::with_capacity(64 * (rows.len() + 1));
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for row in rows {
        let p = &row.params;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            scenario.mode.as_str(),
            scenario.model.as_str(),
            p.d_tu,
            p.z_u,
            p.theta_r,
            p.lambda_e,
            p.lambda_u,
            p.p_jam,
            fmt_opt_f64(row.p_s),
            fmt_opt_f64(row.p_e),
            fmt_opt_f64(row.p_se),
            fmt_opt_f64(row.mc_mean),
            fmt_opt_f64(row.mc_std_error),
            row.mc_n.map(|n| n.to_string()).unwrap_or_default(),
            fmt_opt_f64(row.d_tu_star),
            fmt_opt_f64(row.z_u_star),
            fmt_opt_f64(row.p_se_star),
            row.status,
        );
    }
    csv
}

/// The scenario with every override and default folded in; this is what
/// the manifest records.
pub fn resolved_scenario(scenario: &ScenarioFile, overrides: &RunOverrides) -> ScenarioFile {
    let mut resolved = scenario.clone();
    if let Some(seed) = overrides.seed {
        resolved.seed = seed;
    }
    if let Some(output) = &overrides.output {
        resolved.output = Some(output.clone());
    }
    if resolved.output.is_none() {
        resolved.output = Some(PathBuf::from("results.csv"));
    }
    resolved.provenance = Some(Provenance {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
    });
    resolved
}

fn manifest_path_for(output: &Path) -> PathBuf {
    let mut path = output.to_path_buf();
    path.set_extension("manifest.toml");
    path
}

/// Runs a scenario: validates, executes every row (rows in parallel,
/// output serialized in sweep order), writes the CSV and the manifest.
pub fn run_scenario(scenario: &ScenarioFile, overrides: &RunOverrides) -> Result<RunReport> {
    let violations = validate_config(scenario);
    if !violations.is_empty() {
        let joined = violations
            .iter()
            .map(Violation::to_string)
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::Scenario(joined));
    }

    let resolved = resolved_scenario(scenario, overrides);
    let seed = resolved.seed;
    let params = resolve_rows(&resolved)?;
    let rows: Vec<SweepRow> = params
        .par_iter()
        .enumerate()
        .map(|(index, &p)| {
            // Distinct stream family per row so repeated parameter points
            // stay statistically independent.
            let row_seed = seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            execute_row(&resolved, p, row_seed)
        })
        .collect();

    let csv = render_csv(&resolved, &rows);
    let output_path = resolved
        .output
        .clone()
        .expect("resolved scenario always has an output path");
    let manifest_path = manifest_path_for(&output_path);
    let manifest = toml::to_string_pretty(&resolved)
        .map_err(|e| Error::Scenario(format!("manifest serialization failed: {e}")))?;

    std::fs::write(&output_path, &csv).map_err(|e| Error::Io {
        path: output_path.display().to_string(),
        message: e.to_string(),
    })?;
    std::fs::write(&manifest_path, &manifest).map_err(|e| Error::Io {
        path: manifest_path.display().to_string(),
        message: e.to_string(),
    })?;

    let row_failures = rows
        .iter()
        .filter(|r| r.status.starts_with("error"))
        .count();
    Ok(RunReport {
        rows,
        csv,
        output_path,
        manifest_path,
        row_failures,
    })
}
