//! Jammer-placement search: a full coarse grid scan followed by successive
//! grid halving around the incumbent.
//!
//! The objective is evaluated on the line through Tx and Rx (the angle
//! that maximizes secrecy), so the single-jammer search is two-dimensional
//! in (d_tu, z_u) and the multi-jammer search is one-dimensional in z_u.
//! Unimodality is not assumed: the optimal horizontal distance moves
//! non-monotonically with the eavesdropper density, so the initial scan
//! always covers the whole box.

use crate::channel::{EnvironmentParams, JammerPlacement, NetworkConfig};
use crate::error::{Error, Result};
use crate::multi_jammer::{p_secrecy_multi, MultiJammerSettings};
use crate::quadrature::QuadratureSettings;
use crate::single_jammer::p_secrecy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which secrecy objective the search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchObjective {
    Single,
    Multi,
}

/// One search axis: an inclusive range sampled at `points` equispaced
/// values (a single point when `points == 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridAxis {
    pub fn fixed(value: f64) -> Self {
        Self {
            min: value,
            max: value,
            points: 1,
        }
    }

    pub fn validate(&self, name: &'static str) -> Result<()> {
        if !(self.max >= self.min) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                value: self.max,
                constraint: "axis max must be finite and >= min",
            });
        }
        if self.points == 0 || (self.points == 1 && self.max != self.min) {
            return Err(Error::InvalidParameter {
                name,
                value: self.points as f64,
                constraint: "points >= 1, and a 1-point axis must be degenerate",
            });
        }
        Ok(())
    }

    fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.min + step * i as f64)
            .collect()
    }

    fn step(&self) -> f64 {
        if self.points <= 1 {
            0.0
        } else {
            (self.max - self.min) / (self.points - 1) as f64
        }
    }
}

/// Search box, resolution, and refinement budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementSearchSpec {
    pub d_tu: GridAxis,
    pub z_u: GridAxis,
    pub refine_iterations: usize,
    pub objective: SearchObjective,
}

impl PlacementSearchSpec {
    /// Default single-jammer box: d_tu over [0, 2 ell_r], z_u up to 500 m.
    pub fn default_single(ell_r: f64) -> Self {
        Self {
            d_tu: GridAxis {
                min: 0.0,
                max: 2.0 * ell_r,
                points: 41,
            },
            z_u: GridAxis {
                min: 0.0,
                max: 500.0,
                points: 26,
            },
            refine_iterations: 5,
            objective: SearchObjective::Single,
        }
    }

    /// Default multi-jammer box: height-only search.
    pub fn default_multi() -> Self {
        Self {
            d_tu: GridAxis::fixed(0.0),
            z_u: GridAxis {
                min: 0.0,
                max: 500.0,
                points: 26,
            },
            refine_iterations: 5,
            objective: SearchObjective::Multi,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.d_tu.validate("d_tu axis")?;
        self.z_u.validate("z_u axis")
    }
}

/// Search result: the incumbent placement, its objective value, and the
/// number of objective evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPlacement {
    pub d_tu_star: f64,
    pub z_u_star: f64,
    pub p_se_star: f64,
    pub evaluations: u64,
}

#[derive(Clone, Copy)]
struct Candidate {
    d: f64,
    z: f64,
    p: f64,
}

/// Deterministic tie-break: higher objective, then lower d_tu, then lower
/// z_u.
fn better(candidate: &Candidate, incumbent: &Candidate) -> bool {
    candidate.p > incumbent.p
        || (candidate.p == incumbent.p
            && (candidate.d < incumbent.d
                || (candidate.d == incumbent.d && candidate.z < incumbent.z)))
}

fn evaluate_grid<F>(
    d_values: &[f64],
    z_values: &[f64],
    objective: &F,
    evaluations: &mut u64,
) -> Result<Candidate>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let mut points = Vec::with_capacity(d_values.len() * z_values.len());
    for &d in d_values {
        for &z in z_values {
            points.push((d, z));
        }
    }
    *evaluations += points.len() as u64;
    let results: Vec<Result<Candidate>> = points
        .par_iter()
        .map(|&(d, z)| {
            let p = objective(d, z)?;
            if !p.is_finite() {
                return Err(Error::NonFiniteObjective { d_tu: d, z_u: z });
            }
            Ok(Candidate { d, z, p })
        })
        .collect();
    let mut best: Option<Candidate> = None;
    for r in results {
        let c = r?;
        if best.as_ref().is_none_or(|b| better(&c, b)) {
            best = Some(c);
        }
    }
    best.ok_or(Error::Scenario("empty search grid".to_string()))
}

/// Grid-then-refine maximization shared by both objectives.
pub(crate) fn grid_refine_search<F>(
    d_axis: &GridAxis,
    z_axis: &GridAxis,
    refine_iterations: usize,
    objective: F,
) -> Result<OptimalPlacement>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let mut evaluations = 0u64;
    let mut best = evaluate_grid(
        &d_axis.values(),
        &z_axis.values(),
        &objective,
        &mut evaluations,
    )?;

    let mut step_d = d_axis.step();
    let mut step_z = z_axis.step();
    for _ in 0..refine_iterations {
        if step_d == 0.0 && step_z == 0.0 {
            break;
        }
        let local = |center: f64, step: f64, axis: &GridAxis| -> Vec<f64> {
            if step == 0.0 {
                return vec![center];
            }
            let half = step / 2.0;
            (-2i32..=2)
                .map(|k| (center + half * f64::from(k)).clamp(axis.min, axis.max))
                .collect()
        };
        let d_values = local(best.d, step_d, d_axis);
        let z_values = local(best.z, step_z, z_axis);
        let candidate = evaluate_grid(&d_values, &z_values, &objective, &mut evaluations)?;
        if better(&candidate, &best) {
            best = candidate;
        }
        step_d /= 2.0;
        step_z /= 2.0;
    }

    Ok(OptimalPlacement {
        d_tu_star: best.d,
        z_u_star: best.z,
        p_se_star: best.p,
        evaluations,
    })
}

/// Finds the secrecy-maximizing single-jammer placement over (d_tu, z_u)
/// with the jammer on the Rx-to-Tx line.
pub fn optimize_placement(
    spec: &PlacementSearchSpec,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    quad: &QuadratureSettings,
) -> Result<OptimalPlacement> {
    spec.validate()?;
    if spec.objective != SearchObjective::Single {
        return Err(Error::Scenario(
            "optimize_placement requires the single-jammer objective".to_string(),
        ));
    }
    grid_refine_search(&spec.d_tu, &spec.z_u, spec.refine_iterations, |d, z| {
        let placement = JammerPlacement {
            d_tu: d,
            z_u: z,
            theta_r: PI,
        };
        Ok(p_secrecy(&placement, cfg, env, quad)?.p_se)
    })
}

/// Finds the secrecy-maximizing common height of the jammer field; the
/// d_tu axis is ignored because the field is homogeneous.
pub fn optimize_height_multi(
    spec: &PlacementSearchSpec,
    settings: &MultiJammerSettings,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<OptimalPlacement> {
    spec.validate()?;
    if spec.objective != SearchObjective::Multi {
        return Err(Error::Scenario(
            "optimize_height_multi requires the multi-jammer objective".to_string(),
        ));
    }
    let d_axis = GridAxis::fixed(0.0);
    grid_refine_search(&d_axis, &spec.z_u, spec.refine_iterations, |_, z| {
        let at_height = MultiJammerSettings {
            z_u: z,
            ..*settings
        };
        p_secrecy_multi(&at_height, cfg, env)
    })
}
