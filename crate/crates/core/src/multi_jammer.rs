//! Secrecy transmission probability under a Poisson field of UAV jammers
//! at a common height, plus the small-height asymptotic chain and its
//! closed form at a NLoS path-loss exponent of 4.
//!
//! Both PGFL factors of the multi-jammer expression contain an improper
//! radial integral of `1 - sum_e phat_s^(e) p_e` over the jammer field,
//! where `phat_s^(e)` are the interference-limited conditional branches.
//! That combination suffers catastrophic cancellation at large radius, so
//! it is evaluated as `p_L (1 - phat^L) + p_N (1 - phat^N)` with each
//! complement in stable form; the polynomial tail is integrated exactly
//! through a 1/r substitution rather than truncated.

use crate::channel::{EnvironmentParams, LinkEnvironment, LosProfile, NetworkConfig};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, integrate_truncated_radial, QuadratureSettings};
use crate::single_jammer::{clamp_probability, interference_complement};
use crate::special;
use std::cell::RefCell;
use std::f64::consts::PI;

/// Jammer-field configuration for the multi-jammer operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiJammerSettings {
    /// Jammer density in nodes per square meter.
    pub lambda_u: f64,
    /// Common jammer height in meters.
    pub z_u: f64,
    /// Quadrature controls shared by every integral of the evaluation.
    pub quad: QuadratureSettings,
}

impl MultiJammerSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_u >= 0.0) || !self.lambda_u.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda_u",
                value: self.lambda_u,
                constraint: "lambda_u >= 0",
            });
        }
        if !(self.z_u >= 0.0) || !self.z_u.is_finite() {
            return Err(Error::InvalidParameter {
                name: "z_u",
                value: self.z_u,
                constraint: "z_u >= 0",
            });
        }
        self.quad.validate()
    }
}

/// Radial integral of the jammer-field PGFL exponent for a device with Tx
/// power scale `rho` and SINR target `gamma`:
/// `int_0^inf (1 - sum_e phat^(e)(r) p_e(r)) r dr`.
fn field_integral(
    rho: f64,
    gamma: f64,
    z_u: f64,
    los: &LosProfile,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    quad: &QuadratureSettings,
) -> Result<f64> {
    // Radius where the NLoS jamming term is comparable to the signal.
    let scale = (gamma * cfg.p_jam / rho)
        .powf(1.0 / env.alpha_nlos)
        .max(z_u)
        .clamp(1.0, 1e8);
    let out = integrate_half_line(
        |r| {
            let p_l = los.p_los(r);
            let mut v = 0.0;
            if p_l > 0.0 {
                let tau = cfg.tau_at(r, z_u, LinkEnvironment::Los, env);
                v += p_l
                    * interference_complement(LinkEnvironment::Los, gamma * tau / rho, env.m_los);
            }
            if p_l < 1.0 {
                let tau = cfg.tau_at(r, z_u, LinkEnvironment::Nlos, env);
                v += (1.0 - p_l)
                    * interference_complement(LinkEnvironment::Nlos, gamma * tau / rho, env.m_los);
            }
            v * r
        },
        scale,
        quad.radial_truncation,
        quad,
    )?;
    Ok(out.value)
}

/// Secrecy transmission probability with jammers drawn from a Poisson
/// process of density `lambda_u` at height `z_u`. The legitimate factor is
/// the jammer-field PGFL at the Rx times the noise term; the eavesdropper
/// factor is the PGFL of the eavesdropper process whose per-point success
/// contains its own jammer-field integral.
pub fn p_secrecy_multi(
    settings: &MultiJammerSettings,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<f64> {
    Ok(p_secrecy_multi_decomposed(settings, cfg, env)?.p_se)
}

/// Same evaluation, reported as the legitimate-factor / eavesdropper-factor
/// decomposition (the expression is a product of the two PGFL factors).
pub fn p_secrecy_multi_decomposed(
    settings: &MultiJammerSettings,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<crate::single_jammer::SecrecyResult> {
    settings.validate()?;
    cfg.validate()?;
    env.validate()?;
    let quad = &settings.quad;
    let los = LosProfile::new(settings.z_u, env);
    let rho_r = cfg.rho_r(env);

    let legit_exponent = if settings.lambda_u > 0.0 {
        2.0 * PI
            * settings.lambda_u
            * field_integral(rho_r, cfg.gamma_t, settings.z_u, &los, cfg, env, quad)?
    } else {
        0.0
    } + cfg.gamma_t * cfg.noise / rho_r;
    let legit = clamp_probability((-legit_exponent).exp())?;

    if cfg.lambda_e == 0.0 {
        return Ok(crate::single_jammer::SecrecyResult {
            p_s: legit,
            p_e: 0.0,
            p_se: legit,
        });
    }

    let inner_quad = quad.tightened(1e-2);
    let inner_error: RefCell<Option<Error>> = RefCell::new(None);
    let scale = (cfg.p_tx / (cfg.gamma_t_prime * cfg.noise))
        .powf(1.0 / cfg.alpha_tx_or(env))
        .clamp(1.0, 1e9);

    let outer = integrate_truncated_radial(
        |ell_e| {
            if ell_e == 0.0 {
                return 0.0;
            }
            let rho_e = cfg.rho_at(ell_e, env);
            let mut exponent = cfg.gamma_t_prime * cfg.noise / rho_e;
            if settings.lambda_u > 0.0 {
                match field_integral(
                    rho_e,
                    cfg.gamma_t_prime,
                    settings.z_u,
                    &los,
                    cfg,
                    env,
                    &inner_quad,
                ) {
                    Ok(j) => exponent += 2.0 * PI * settings.lambda_u * j,
                    Err(e) => {
                        inner_error.borrow_mut().get_or_insert(e);
                        return f64::NAN;
                    }
                }
            }
            (-exponent).exp() * ell_e
        },
        scale,
        quad,
    );
    let outer = match outer {
        Ok(out) => out,
        Err(e) => return Err(inner_error.into_inner().unwrap_or(e)),
    };
    let eve_factor = clamp_probability((-2.0 * PI * cfg.lambda_e * outer.value).exp())?;
    Ok(crate::single_jammer::SecrecyResult {
        p_s: legit,
        p_e: 1.0 - eve_factor,
        p_se: clamp_probability(legit * eve_factor)?,
    })
}

fn require_nlos_exponent(cfg: &NetworkConfig, env: &EnvironmentParams) -> Result<f64> {
    if let Some(a) = cfg.alpha_tx {
        if a != env.alpha_nlos {
            return Err(Error::InvalidParameter {
                name: "alpha_tx",
                value: a,
                constraint: "asymptotic forms require the NLoS G2G exponent",
            });
        }
    }
    if !(env.alpha_nlos > 2.0) {
        return Err(Error::InvalidParameter {
            name: "alpha_nlos",
            value: env.alpha_nlos,
            constraint: "alpha_nlos > 2 for the asymptotic integrals to converge",
        });
    }
    Ok(env.alpha_nlos)
}

/// Jammer-field exponent coefficient of the low-height limit:
/// `2 pi^2 lambda_u / (alpha sin(2 pi / alpha))`.
fn field_coefficient(lambda_u: f64, alpha: f64) -> f64 {
    2.0 * PI * PI * lambda_u / (alpha * (2.0 * PI / alpha).sin())
}

/// Low-height asymptote of the multi-jammer secrecy probability: every
/// A2G link degenerates to NLoS, the jammer-field integrals evaluate in
/// closed form, and a single radial quadrature over the eavesdropper
/// distance remains.
pub fn p_secrecy_multi_asymptotic(
    settings: &MultiJammerSettings,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<f64> {
    settings.validate()?;
    cfg.validate()?;
    env.validate()?;
    let alpha = require_nlos_exponent(cfg, env)?;
    let quad = &settings.quad;
    let coeff = field_coefficient(settings.lambda_u, alpha);

    let legit_exponent = coeff
        * (cfg.gamma_t * cfg.ell_r.powf(alpha) * cfg.p_jam / cfg.p_tx).powf(2.0 / alpha)
        + cfg.gamma_t * cfg.noise * cfg.ell_r.powf(alpha) / cfg.p_tx;

    if cfg.lambda_e == 0.0 {
        return clamp_probability((-legit_exponent).exp());
    }

    let noise_rate = cfg.gamma_t_prime * cfg.noise / cfg.p_tx;
    let field_rate = coeff * (cfg.gamma_t_prime * cfg.p_jam / cfg.p_tx).powf(2.0 / alpha);
    let noise_scale = noise_rate.powf(-1.0 / alpha);
    let field_scale = if field_rate > 0.0 {
        field_rate.powf(-0.5)
    } else {
        f64::INFINITY
    };
    let outer = integrate_truncated_radial(
        |ell| (-noise_rate * ell.powf(alpha) - field_rate * ell * ell).exp() * ell,
        noise_scale.min(field_scale).clamp(1.0, 1e9),
        quad,
    )?;
    clamp_probability((-legit_exponent - 2.0 * PI * cfg.lambda_e * outer.value).exp())
}

/// Closed form of the low-height asymptote at `alpha_nlos = 4`, where the
/// remaining radial integral is Gaussian-times-exponential and reduces to
/// the scaled complementary error function.
pub fn p_secrecy_multi_closed_form(
    settings: &MultiJammerSettings,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<f64> {
    settings.validate()?;
    cfg.validate()?;
    env.validate()?;
    require_nlos_exponent(cfg, env)?;
    if env.alpha_nlos != 4.0 {
        return Err(Error::InvalidParameter {
            name: "alpha_nlos",
            value: env.alpha_nlos,
            constraint: "closed form holds at alpha_nlos = 4 exactly",
        });
    }

    let ell4 = cfg.ell_r.powi(4);
    let legit_exponent =
        0.5 * PI * PI * settings.lambda_u * (cfg.gamma_t * ell4 * cfg.p_jam / cfg.p_tx).sqrt()
            + cfg.gamma_t * cfg.noise * ell4 / cfg.p_tx;

    // x = (pi^2 lambda_u / 4) sqrt(p_jam / noise); the eavesdropper term is
    // pi lambda_e sqrt(pi p_tx / (4 gamma_t' noise)) * exp(x^2) erfc(x),
    // evaluated through erfcx so large jammer densities cannot overflow.
    let x = 0.25 * PI * PI * settings.lambda_u * (cfg.p_jam / cfg.noise).sqrt();
    let eve_term = PI
        * cfg.lambda_e
        * (PI * cfg.p_tx / (4.0 * cfg.gamma_t_prime * cfg.noise)).sqrt()
        * special::erfcx(x);

    clamp_probability((-legit_exponent - eve_term).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_config() -> (NetworkConfig, EnvironmentParams) {
        (
            NetworkConfig {
                ell_r: 50.0,
                lambda_e: 1e-5,
                lambda_u: 7e-6,
                p_jam: 2e-11,
                ..NetworkConfig::default()
            },
            EnvironmentParams::default(),
        )
    }

    fn settings(lambda_u: f64, z_u: f64) -> MultiJammerSettings {
        MultiJammerSettings {
            lambda_u,
            z_u,
            quad: QuadratureSettings::default(),
        }
    }

    #[test]
    fn empty_fields_collapse_to_the_noise_factor() {
        let (cfg, env) = field_config();
        let cfg = NetworkConfig {
            lambda_e: 0.0,
            ..cfg
        };
        let s = settings(0.0, 10.0);
        let expected = (-cfg.gamma_t * cfg.noise / cfg.rho_r(&env)).exp();
        let got = p_secrecy_multi(&s, &cfg, &env).unwrap();
        assert!((got - expected).abs() < 1e-15, "{got} vs {expected}");

        let got = p_secrecy_multi_asymptotic(&s, &cfg, &env).unwrap();
        assert!((got - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn jammers_only_hurt_the_legitimate_link() {
        let (cfg, env) = field_config();
        let cfg = NetworkConfig {
            lambda_e: 0.0,
            ..cfg
        };
        let bound = (-cfg.gamma_t * cfg.noise / cfg.rho_r(&env)).exp();
        for &z in &[1.0, 30.0, 120.0] {
            let got = p_secrecy_multi(&settings(7e-6, z), &cfg, &env).unwrap();
            assert!(got <= bound, "z = {z}: {got} > {bound}");
        }
    }

    #[test]
    fn multi_reference_point() {
        // Frozen from arbitrary-precision nested quadrature at z_u = 60
        // with the short-link dense-eavesdropper parameter set.
        let (cfg, env) = field_config();
        let got = p_secrecy_multi(&settings(7e-6, 60.0), &cfg, &env).unwrap();
        assert!(
            (got - 0.0344389446590326).abs() < 1e-8,
            "p_secrecy_multi = {got}"
        );
    }

    #[test]
    fn asymptotic_reference_points() {
        let (cfg, env) = field_config();
        let s = settings(7e-6, 0.0);
        let got = p_secrecy_multi_asymptotic(&s, &cfg, &env).unwrap();
        assert!(
            (got - 7.468430101249025e-5).abs() / 7.468430101249025e-5 < 1e-8,
            "asymptotic (alpha 3.5) = {got}"
        );

        let env4 = EnvironmentParams {
            alpha_nlos: 4.0,
            ..env
        };
        let got = p_secrecy_multi_asymptotic(&s, &cfg, &env4).unwrap();
        assert!(
            (got - 0.06276927921430478).abs() / 0.06276927921430478 < 1e-8,
            "asymptotic (alpha 4) = {got}"
        );
    }

    #[test]
    fn closed_form_reference_and_identity() {
        let (cfg, env) = field_config();
        let env4 = EnvironmentParams {
            alpha_nlos: 4.0,
            ..env
        };
        let s = settings(7e-6, 0.0);
        let cf = p_secrecy_multi_closed_form(&s, &cfg, &env4).unwrap();
        assert!(
            (cf - 0.06276927921430478).abs() / 0.06276927921430478 < 1e-12,
            "closed form = {cf}"
        );
        let quadrature = p_secrecy_multi_asymptotic(&s, &cfg, &env4).unwrap();
        assert!(
            (cf - quadrature).abs() / cf < 1e-8,
            "closed form {cf} vs quadrature {quadrature}"
        );

        // Second frozen point with different powers and targets.
        let cfg2 = NetworkConfig {
            ell_r: 120.0,
            lambda_e: 3e-6,
            p_jam: 5e-11,
            noise: 1e-18,
            p_tx: 2e-8,
            gamma_t: 2.0,
            gamma_t_prime: 4.0,
            ..NetworkConfig::default()
        };
        let cf2 = p_secrecy_multi_closed_form(&settings(1e-6, 0.0), &cfg2, &env4).unwrap();
        assert!(
            (cf2 - 0.5461174302091147).abs() / 0.5461174302091147 < 1e-12,
            "closed form pt2 = {cf2}"
        );
    }

    #[test]
    fn closed_form_degenerate_limits() {
        let (cfg, env) = field_config();
        let env4 = EnvironmentParams {
            alpha_nlos: 4.0,
            ..env
        };

        // No eavesdroppers: only the legitimate exponential survives.
        let cfg_no_eve = NetworkConfig {
            lambda_e: 0.0,
            ..cfg
        };
        let s = settings(7e-6, 0.0);
        let got = p_secrecy_multi_closed_form(&s, &cfg_no_eve, &env4).unwrap();
        let ell4 = cfg.ell_r.powi(4);
        let expected = (-0.5 * PI * PI * 7e-6 * (cfg.gamma_t * ell4 * cfg.p_jam / cfg.p_tx).sqrt()
            - cfg.gamma_t * cfg.noise * ell4 / cfg.p_tx)
            .exp();
        assert!((got - expected).abs() < 1e-15);

        // No jammers: erfc(0) = 1 and the Gaussian factor is 1.
        let s0 = settings(0.0, 0.0);
        let got = p_secrecy_multi_closed_form(&s0, &cfg, &env4).unwrap();
        let expected = (-cfg.gamma_t * cfg.noise * ell4 / cfg.p_tx
            - PI * cfg.lambda_e * (PI * cfg.p_tx / (4.0 * cfg.gamma_t_prime * cfg.noise)).sqrt())
        .exp();
        assert!((got - expected).abs() < 1e-15 * expected.max(1e-300));

        // Wrong exponent is rejected.
        assert!(p_secrecy_multi_closed_form(&s, &cfg, &env).is_err());
    }

    #[test]
    fn asymptotic_rejects_alpha_two() {
        let (cfg, env) = field_config();
        let env2 = EnvironmentParams {
            alpha_nlos: 2.0,
            alpha_los: 2.0,
            ..env
        };
        assert!(p_secrecy_multi_asymptotic(&settings(1e-6, 0.0), &cfg, &env2).is_err());
    }

    #[test]
    fn asymptotic_approaches_full_formula_at_low_height() {
        let (cfg, env) = field_config();
        let asy = p_secrecy_multi_asymptotic(&settings(7e-6, 0.0), &cfg, &env).unwrap();
        let mut errors = Vec::new();
        for &z in &[100.0, 10.0, 1.0, 0.1] {
            let full = p_secrecy_multi(&settings(7e-6, z), &cfg, &env).unwrap();
            errors.push((full - asy).abs());
        }
        for pair in errors.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-12, "shrinkage violated: {errors:?}");
        }
    }
}
