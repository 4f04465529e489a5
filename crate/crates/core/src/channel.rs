//! Network geometry, A2G/G2G environment classification, LoS probability,
//! and fading-gain distributions.
//!
//! Ground-to-ground links (Tx to Rx, Tx to eavesdropper) are always NLoS
//! with Rayleigh fading. Air-to-ground links (jammer to any ground device)
//! are LoS with probability `p_L(d, z_u)` from the building-density model;
//! the environment selects both the path-loss exponent and the fading
//! family (Nakagami-m for LoS, Rayleigh for NLoS), each with unit mean
//! power gain.

use crate::error::{Error, Result};
use crate::special;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Propagation environment of one link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkEnvironment {
    Los,
    Nlos,
}

/// Environment constants of the LoS-probability and path-loss model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvironmentParams {
    /// Path-loss exponent of LoS A2G links.
    pub alpha_los: f64,
    /// Path-loss exponent of NLoS links (A2G and G2G).
    pub alpha_nlos: f64,
    /// Nakagami shape of the LoS fading gain (integer-valued).
    pub m_los: u32,
    /// Building-height scale in meters.
    pub zeta: f64,
    /// Building density factor per square meter.
    pub nu: f64,
    /// Built-up land ratio.
    pub mu: f64,
}

impl Default for EnvironmentParams {
    /// Baseline urban parameter set used by the bundled scenarios.
    fn default() -> Self {
        Self {
            alpha_los: 2.5,
            alpha_nlos: 3.5,
            m_los: 2,
            zeta: 15.0,
            nu: 5e-4,
            mu: 0.3,
        }
    }
}

impl EnvironmentParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_los >= 2.0) {
            return Err(Error::InvalidParameter {
                name: "alpha_los",
                value: self.alpha_los,
                constraint: "alpha_los >= 2",
            });
        }
        if !(self.alpha_nlos >= 2.0) {
            return Err(Error::InvalidParameter {
                name: "alpha_nlos",
                value: self.alpha_nlos,
                constraint: "alpha_nlos >= 2",
            });
        }
        if !(self.alpha_nlos >= self.alpha_los) {
            return Err(Error::InvalidParameter {
                name: "alpha_nlos",
                value: self.alpha_nlos,
                constraint: "alpha_nlos >= alpha_los",
            });
        }
        if self.m_los < 1 {
            return Err(Error::InvalidParameter {
                name: "m_los",
                value: f64::from(self.m_los),
                constraint: "m_los >= 1",
            });
        }
        if !(self.zeta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "zeta",
                value: self.zeta,
                constraint: "zeta > 0",
            });
        }
        if !(self.nu > 0.0) {
            return Err(Error::InvalidParameter {
                name: "nu",
                value: self.nu,
                constraint: "nu > 0",
            });
        }
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: self.mu,
                constraint: "0 < mu <= 1",
            });
        }
        Ok(())
    }

    /// Path-loss exponent selected by the link environment.
    pub fn alpha(&self, env: LinkEnvironment) -> f64 {
        match env {
            LinkEnvironment::Los => self.alpha_los,
            LinkEnvironment::Nlos => self.alpha_nlos,
        }
    }
}

/// Powers, SINR targets, geometry, and densities of one network instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkConfig {
    /// Transmitter power in watts.
    pub p_tx: f64,
    /// Jammer power in watts.
    pub p_jam: f64,
    /// Noise power in watts.
    pub noise: f64,
    /// SINR target of the legitimate channel.
    pub gamma_t: f64,
    /// SINR target of the wiretap channel.
    pub gamma_t_prime: f64,
    /// Tx-Rx distance in meters.
    pub ell_r: f64,
    /// Eavesdropper density in nodes per square meter.
    pub lambda_e: f64,
    /// UAV jammer density in nodes per square meter (multi-jammer mode).
    pub lambda_u: f64,
    /// Simulation disk radius in meters.
    pub region_radius: f64,
    /// Optional override of the G2G (Tx-to-device) path-loss exponent.
    /// Defaults to `alpha_nlos`, the NLoS ground-channel model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_tx: Option<f64>,
}

impl Default for NetworkConfig {
    /// Baseline single-jammer parameter set used by the bundled
    /// scenarios (the lower of the two studied eavesdropper densities).
    fn default() -> Self {
        Self {
            p_tx: 1e-8,
            p_jam: 3e-10,
            noise: 3e-19,
            gamma_t: 3.0,
            gamma_t_prime: 2.5,
            ell_r: 340.0,
            lambda_e: 5e-7,
            lambda_u: 0.0,
            region_radius: 1e4,
            alpha_tx: None,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        let strictly_positive: [(&'static str, f64); 6] = [
            ("p_tx", self.p_tx),
            ("noise", self.noise),
            ("gamma_t", self.gamma_t),
            ("gamma_t_prime", self.gamma_t_prime),
            ("ell_r", self.ell_r),
            ("region_radius", self.region_radius),
        ];
        for (name, value) in strictly_positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint: "strictly positive",
                });
            }
        }
        if !(self.p_jam >= 0.0) || !self.p_jam.is_finite() {
            return Err(Error::InvalidParameter {
                name: "p_jam",
                value: self.p_jam,
                constraint: "p_jam >= 0",
            });
        }
        if !(self.lambda_e >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda_e",
                value: self.lambda_e,
                constraint: "lambda_e >= 0",
            });
        }
        if !(self.lambda_u >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda_u",
                value: self.lambda_u,
                constraint: "lambda_u >= 0",
            });
        }
        if let Some(a) = self.alpha_tx {
            if !(a >= 2.0) {
                return Err(Error::InvalidParameter {
                    name: "alpha_tx",
                    value: a,
                    constraint: "alpha_tx >= 2",
                });
            }
        }
        Ok(())
    }

    /// G2G path-loss exponent for Tx-to-device links.
    pub fn alpha_tx_or(&self, env: &EnvironmentParams) -> f64 {
        self.alpha_tx.unwrap_or(env.alpha_nlos)
    }

    /// Received-power scale of the Tx at ground distance `ell`:
    /// `rho = ell^(-alpha_tx) * p_tx`. Returns infinity at `ell = 0`
    /// (device colocated with the Tx).
    pub fn rho_at(&self, ell: f64, env: &EnvironmentParams) -> f64 {
        ell.powf(-self.alpha_tx_or(env)) * self.p_tx
    }

    /// `rho` of the legitimate link.
    pub fn rho_r(&self, env: &EnvironmentParams) -> f64 {
        self.rho_at(self.ell_r, env)
    }

    /// Jamming-power scale at horizontal distance `d` and height `z_u`
    /// under the given link environment: `tau = j^(-alpha) * p_jam` with
    /// `j = sqrt(d^2 + z_u^2)`.
    pub fn tau_at(&self, d: f64, z_u: f64, link: LinkEnvironment, env: &EnvironmentParams) -> f64 {
        if self.p_jam == 0.0 {
            return 0.0;
        }
        let j_sq = d * d + z_u * z_u;
        j_sq.powf(-0.5 * env.alpha(link)) * self.p_jam
    }
}

/// Jammer location relative to the Tx-Rx axis: horizontal Tx-jammer
/// distance, height, and the angle between the Tx-Rx and Tx-jammer
/// directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JammerPlacement {
    pub d_tu: f64,
    pub z_u: f64,
    pub theta_r: f64,
}

impl Default for JammerPlacement {
    fn default() -> Self {
        Self {
            d_tu: 200.0,
            z_u: 100.0,
            theta_r: PI,
        }
    }
}

impl JammerPlacement {
    pub fn validate(&self) -> Result<()> {
        if !(self.d_tu >= 0.0) || !self.d_tu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "d_tu",
                value: self.d_tu,
                constraint: "d_tu >= 0",
            });
        }
        if !(self.z_u >= 0.0) || !self.z_u.is_finite() {
            return Err(Error::InvalidParameter {
                name: "z_u",
                value: self.z_u,
                constraint: "z_u >= 0",
            });
        }
        if !(self.theta_r >= 0.0 && self.theta_r < 2.0 * PI) {
            return Err(Error::InvalidParameter {
                name: "theta_r",
                value: self.theta_r,
                constraint: "theta_r in [0, 2*pi)",
            });
        }
        Ok(())
    }

    /// Horizontal distance from the jammer to the Rx.
    pub fn d_r(&self, ell_r: f64) -> f64 {
        horizontal_distance(self.d_tu, ell_r, self.theta_r)
    }
}

/// Law-of-cosines horizontal distance between the jammer and a ground
/// device at distance `ell_c` from the Tx under included angle `theta_c`.
pub fn horizontal_distance(d_tu: f64, ell_c: f64, theta_c: f64) -> f64 {
    let sq = d_tu * d_tu + ell_c * ell_c - 2.0 * d_tu * ell_c * theta_c.cos();
    // Roundoff can push the collinear case slightly negative.
    sq.max(0.0).sqrt()
}

/// Gaussian Q-function (re-exported here because the LoS model is its only
/// consumer in the channel layer).
pub fn q_function(x: f64) -> f64 {
    special::q_function(x)
}

/// LoS-probability base raised to `d * sqrt(nu * mu)`, with the base
/// clamped into [0, 1]. For the parameter ranges of this model the
/// unclamped base already lies in [0, 1]; the clamp only absorbs
/// floating-point excursions.
fn los_base(z_u: f64, env: &EnvironmentParams) -> f64 {
    let base =
        1.0 - ((2.0 * PI).sqrt() * env.zeta / z_u) * (q_function(z_u / env.zeta) - 0.5).abs();
    base.clamp(0.0, 1.0)
}

/// LoS probability of an A2G link with horizontal distance `d_c` and
/// jammer height `z_u`.
///
/// Limit conventions: a zero-length horizontal link is always LoS; a
/// ground-level jammer (`z_u = 0`) is never LoS, matching the small-height
/// limit of the model.
pub fn los_probability(d_c: f64, z_u: f64, env: &EnvironmentParams) -> Result<f64> {
    if !(d_c >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "d_c",
            value: d_c,
            constraint: "d_c >= 0",
        });
    }
    if !(z_u >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "z_u",
            value: z_u,
            constraint: "z_u >= 0",
        });
    }
    if d_c == 0.0 {
        return Ok(1.0);
    }
    if z_u == 0.0 {
        return Ok(0.0);
    }
    Ok(los_base(z_u, env).powf(d_c * (env.nu * env.mu).sqrt()))
}

/// Height-resolved LoS model: caches the parts of `los_probability` that
/// depend only on `z_u` so per-link evaluations reduce to one `exp`.
#[derive(Debug, Clone, Copy)]
pub struct LosProfile {
    /// `ln(base) * sqrt(nu * mu)`; `-inf` encodes the ground-jammer case.
    log_base_scaled: f64,
}

impl LosProfile {
    pub fn new(z_u: f64, env: &EnvironmentParams) -> Self {
        let log_base_scaled = if z_u == 0.0 {
            f64::NEG_INFINITY
        } else {
            los_base(z_u, env).ln() * (env.nu * env.mu).sqrt()
        };
        Self { log_base_scaled }
    }

    /// `p_L(d, z_u)` for the profiled height.
    pub fn p_los(&self, d: f64) -> f64 {
        if d == 0.0 {
            return 1.0;
        }
        (self.log_base_scaled * d).exp()
    }
}

/// Draws a unit-mean channel power gain: Gamma(m, 1/m) for LoS links
/// (the Nakagami-m power gain), Exponential(1) for NLoS links (Rayleigh).
pub fn sample_fading<R: Rng + ?Sized>(link: LinkEnvironment, m_los: u32, rng: &mut R) -> f64 {
    match link {
        LinkEnvironment::Nlos => rng.sample(Exp1),
        LinkEnvironment::Los => {
            let m = f64::from(m_los);
            Gamma::new(m, 1.0 / m)
                .expect("m_los >= 1 yields a valid Gamma")
                .sample(rng)
        }
    }
}

/// SINR of one link given its fading gains and power scales.
pub fn sinr(h_t: f64, h_u: f64, rho_c: f64, tau_c: f64, noise: f64) -> Result<f64> {
    let denominator = h_u * tau_c + noise;
    if denominator == 0.0 {
        return Err(Error::InvalidParameter {
            name: "noise",
            value: noise,
            constraint: "noise > 0 when the link is interference-free",
        });
    }
    Ok(h_t * rho_c / denominator)
}
