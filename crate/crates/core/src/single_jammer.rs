//! Single-jammer secrecy analysis: the successful-transmission probability,
//! the eavesdropping probability over the Poisson field of eavesdroppers,
//! their product form, and the closed-form asymptote for a jammer near the
//! transmitter.
//!
//! The legitimate-link success probability mixes the LoS and NLoS
//! conditional branches by the LoS probability of the interference link.
//! The eavesdropping probability is the PGFL of the eavesdropper process
//! applied to the per-eavesdropper wiretap success probability, which is
//! the same branch expression with the eavesdropper's distance, power
//! scale, and SINR target substituted in; no closed form exists, so it is
//! evaluated by nested quadrature over the plane in polar coordinates.

use crate::channel::{
    horizontal_distance, EnvironmentParams, JammerPlacement, LinkEnvironment, LosProfile,
    NetworkConfig,
};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_truncated_radial, QuadratureSettings};
use crate::special;
use std::cell::RefCell;
use std::f64::consts::PI;

/// Decomposition of one secrecy evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyResult {
    /// Probability that the legitimate link beats its SINR target.
    pub p_s: f64,
    /// Probability that at least one eavesdropper beats the wiretap target.
    pub p_e: f64,
    /// Secrecy transmission probability `p_s * (1 - p_e)`.
    pub p_se: f64,
}

/// Clamp policy for probability outputs: absorb excursions below 1e-9
/// (quadrature roundoff), reject anything larger as a numerical bug.
pub(crate) fn clamp_probability(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        return Ok(value);
    }
    if (-1e-9..=1.0 + 1e-9).contains(&value) {
        return Ok(value.clamp(0.0, 1.0));
    }
    Err(Error::ProbabilityOutOfRange { value })
}

/// Interference attenuation factor of one environment branch:
/// the Laplace transform of the fading gain at `x = gamma * tau / rho`.
/// LoS: `(1 + x/m)^-m`; NLoS: `1/(1 + x)`.
pub(crate) fn interference_factor(link: LinkEnvironment, x: f64, m_los: u32) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    match link {
        LinkEnvironment::Nlos => 1.0 / (1.0 + x),
        LinkEnvironment::Los => {
            let m = f64::from(m_los);
            (-m * (x / m).ln_1p()).exp()
        }
    }
}

/// `1 - interference_factor`, evaluated in complement form so the
/// jammer-field integrands keep relative accuracy where they are tiny.
pub(crate) fn interference_complement(link: LinkEnvironment, x: f64, m_los: u32) -> f64 {
    if x.is_infinite() {
        return 1.0;
    }
    if x > 0.5 {
        return 1.0 - interference_factor(link, x, m_los);
    }
    match link {
        LinkEnvironment::Nlos => x / (1.0 + x),
        LinkEnvironment::Los => {
            let m = f64::from(m_los);
            -(-m * (x / m).ln_1p()).exp_m1()
        }
    }
}

/// Success probability of one link conditioned on the interference-link
/// environment: the single-environment branch before mixing by the LoS
/// probability. `d` and `z_u` locate the jammer relative to the receiving
/// device, `rho` is the Tx power scale at that device, `gamma` its SINR
/// target.
pub fn p_success_conditional(
    d: f64,
    z_u: f64,
    link: LinkEnvironment,
    rho: f64,
    gamma: f64,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d,
            constraint: "d >= 0",
        });
    }
    if !(z_u >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "z_u",
            value: z_u,
            constraint: "z_u >= 0",
        });
    }
    if !(rho > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rho",
            value: rho,
            constraint: "rho > 0",
        });
    }
    if rho.is_infinite() {
        // Device colocated with the Tx: success is certain.
        return Ok(1.0);
    }
    let tau = cfg.tau_at(d, z_u, link, env);
    let x = gamma * tau / rho;
    Ok((-gamma * cfg.noise / rho).exp() * interference_factor(link, x, env.m_los))
}

/// Successful transmission probability of the legitimate link for a given
/// jammer placement: LoS/NLoS branches mixed by the LoS probability of the
/// jammer-to-Rx link.
pub fn p_success(
    placement: &JammerPlacement,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<f64> {
    placement.validate()?;
    cfg.validate()?;
    env.validate()?;
    let d_r = placement.d_r(cfg.ell_r);
    let rho_r = cfg.rho_r(env);
    let p_l = crate::channel::los_probability(d_r, placement.z_u, env)?;
    let los = p_success_conditional(
        d_r,
        placement.z_u,
        LinkEnvironment::Los,
        rho_r,
        cfg.gamma_t,
        cfg,
        env,
    )?;
    let nlos = p_success_conditional(
        d_r,
        placement.z_u,
        LinkEnvironment::Nlos,
        rho_r,
        cfg.gamma_t,
        cfg,
        env,
    )?;
    // Lerp form of the mixture: exact when the branches coincide (no
    // jamming power, or Nakagami m = 1 with equal exponents).
    clamp_probability(nlos + p_l * (los - nlos))
}

/// Wiretap success probability of one eavesdropper at polar position
/// (`ell_e`, `theta_e`) relative to the Tx-jammer axis. The colocated case
/// `ell_e = 0` is the infinite-received-power limit, which is 1.
pub(crate) fn wiretap_success(
    ell_e: f64,
    theta_e: f64,
    d_tu: f64,
    z_u: f64,
    los: &LosProfile,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> f64 {
    if ell_e == 0.0 {
        return 1.0;
    }
    let rho_e = cfg.rho_at(ell_e, env);
    if rho_e.is_infinite() {
        return 1.0;
    }
    let noise_factor = (-cfg.gamma_t_prime * cfg.noise / rho_e).exp();
    if noise_factor == 0.0 {
        return 0.0;
    }
    let d_e = horizontal_distance(d_tu, ell_e, theta_e);
    let p_l = los.p_los(d_e);
    let nlos = {
        let tau = cfg.tau_at(d_e, z_u, LinkEnvironment::Nlos, env);
        interference_factor(
            LinkEnvironment::Nlos,
            cfg.gamma_t_prime * tau / rho_e,
            env.m_los,
        )
    };
    let value = if p_l > 0.0 {
        let tau = cfg.tau_at(d_e, z_u, LinkEnvironment::Los, env);
        let los_branch = interference_factor(
            LinkEnvironment::Los,
            cfg.gamma_t_prime * tau / rho_e,
            env.m_los,
        );
        nlos + p_l * (los_branch - nlos)
    } else {
        nlos
    };
    noise_factor * value
}

/// Characteristic radius beyond which the Tx signal is buried in noise at
/// the wiretap target; used to seed the radial quadrature breakpoints.
fn wiretap_radial_scale(cfg: &NetworkConfig, env: &EnvironmentParams) -> f64 {
    (cfg.p_tx / (cfg.gamma_t_prime * cfg.noise))
        .powf(1.0 / cfg.alpha_tx_or(env))
        .clamp(1.0, 1e9)
}

/// Eavesdropping probability: the PGFL of the eavesdropper Poisson process
/// applied to the wiretap success probability, integrated in polar
/// coordinates. The angular integral runs over half the plane and is
/// doubled (the integrand is symmetric about the Tx-jammer axis).
pub fn p_eavesdrop(
    placement: &JammerPlacement,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    quad: &QuadratureSettings,
) -> Result<f64> {
    placement.validate()?;
    cfg.validate()?;
    env.validate()?;
    quad.validate()?;
    if cfg.lambda_e == 0.0 {
        return Ok(0.0);
    }
    let los = LosProfile::new(placement.z_u, env);
    let inner_settings = quad.tightened(1e-2);
    let inner_error: RefCell<Option<Error>> = RefCell::new(None);

    let radial = integrate_truncated_radial(
        |ell_e| {
            if ell_e == 0.0 {
                return 0.0; // the ell_e measure factor vanishes
            }
            let angular = integrate(
                |theta| {
                    wiretap_success(ell_e, theta, placement.d_tu, placement.z_u, &los, cfg, env)
                },
                &[0.0, PI],
                &inner_settings,
            );
            match angular {
                Ok(out) => 2.0 * out.value * ell_e,
                Err(e) => {
                    inner_error.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            }
        },
        wiretap_radial_scale(cfg, env),
        quad,
    );

    let radial = match radial {
        Ok(out) => out,
        Err(outer) => return Err(inner_error.into_inner().unwrap_or(outer)),
    };
    clamp_probability(-(-cfg.lambda_e * radial.value).exp_m1())
}

/// Secrecy transmission probability and its decomposition: the legitimate
/// and wiretap channels are independent, so `p_se = p_s * (1 - p_e)`.
pub fn p_secrecy(
    placement: &JammerPlacement,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    quad: &QuadratureSettings,
) -> Result<SecrecyResult> {
    let p_s = p_success(placement, cfg, env)?;
    let p_e = p_eavesdrop(placement, cfg, env, quad)?;
    Ok(SecrecyResult {
        p_s,
        p_e,
        p_se: clamp_probability(p_s * (1.0 - p_e))?,
    })
}

/// Closed-form asymptote of the secrecy transmission probability for a
/// jammer approaching the Tx at low height: the exact `p_s` times the
/// limit of the eavesdropper PGFL factor, in which every wiretap link is
/// NLoS and the jammer-to-eavesdropper distance collapses onto the
/// eavesdropper's own Tx distance.
pub fn p_secrecy_asymptotic(
    placement: &JammerPlacement,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
) -> Result<f64> {
    cfg.validate()?;
    env.validate()?;
    if let Some(a) = cfg.alpha_tx {
        if a != env.alpha_nlos {
            return Err(Error::InvalidParameter {
                name: "alpha_tx",
                value: a,
                constraint: "asymptotic form requires the NLoS G2G exponent",
            });
        }
    }
    let alpha = env.alpha_nlos;
    let p_s = p_success(placement, cfg, env)?;
    let exponent = -2.0 * cfg.lambda_e * PI * cfg.p_tx * special::gamma(2.0 / alpha)
        / ((cfg.gamma_t_prime * cfg.p_jam + cfg.p_tx)
            * alpha
            * (cfg.gamma_t_prime * cfg.noise / cfg.p_tx).powf(2.0 / alpha));
    clamp_probability(p_s * exponent.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::Exp1;

    fn defaults() -> (
        JammerPlacement,
        NetworkConfig,
        EnvironmentParams,
        QuadratureSettings,
    ) {
        (
            JammerPlacement::default(),
            NetworkConfig::default(),
            EnvironmentParams::default(),
            QuadratureSettings::default(),
        )
    }

    #[test]
    fn conditional_branches_match_definition_quadrature() {
        // Frozen from arbitrary-precision quadrature of the defining double
        // integrals at d = 100, z_u = 100 with the default parameters.
        let (_, cfg, env, _) = defaults();
        let rho_r = cfg.rho_r(&env);
        let los = p_success_conditional(
            100.0,
            100.0,
            LinkEnvironment::Los,
            rho_r,
            cfg.gamma_t,
            &cfg,
            &env,
        )
        .unwrap();
        let nlos = p_success_conditional(
            100.0,
            100.0,
            LinkEnvironment::Nlos,
            rho_r,
            cfg.gamma_t,
            &cfg,
            &env,
        )
        .unwrap();
        assert!(
            (los - 4.9108747595257144e-5).abs() / 4.9108747595257144e-5 < 1e-12,
            "LoS branch {los}"
        );
        assert!(
            (nlos - 0.31874832256542949).abs() / 0.31874832256542949 < 1e-12,
            "NLoS branch {nlos}"
        );
    }

    #[test]
    fn conditional_limits() {
        let (_, mut cfg, env, _) = defaults();
        let rho = cfg.rho_r(&env);

        // No jamming power: both branches collapse to the noise factor.
        cfg.p_jam = 0.0;
        let expected = (-cfg.gamma_t * cfg.noise / rho).exp();
        for link in [LinkEnvironment::Los, LinkEnvironment::Nlos] {
            let v = p_success_conditional(50.0, 50.0, link, rho, cfg.gamma_t, &cfg, &env).unwrap();
            assert_eq!(v, expected);
        }

        // Nakagami m = 1 equals the Rayleigh branch exactly.
        let cfg = NetworkConfig::default();
        let env1 = EnvironmentParams {
            m_los: 1,
            alpha_los: env.alpha_nlos, // same exponent so only the family differs
            ..env
        };
        let a =
            p_success_conditional(80.0, 40.0, LinkEnvironment::Los, rho, 3.0, &cfg, &env1).unwrap();
        let b = p_success_conditional(80.0, 40.0, LinkEnvironment::Nlos, rho, 3.0, &cfg, &env1)
            .unwrap();
        assert!((a - b).abs() < 1e-15 * b, "m=1 LoS {a} vs NLoS {b}");
    }

    #[test]
    fn success_probability_reference_point() {
        // ell_r = 340, d_tu = 200, theta_r = pi, z_u = 100; frozen from an
        // arbitrary-precision evaluation.
        let (placement, cfg, env, _) = defaults();
        let p = p_success(&placement, &cfg, &env).unwrap();
        assert!((p - 0.6964457486628307).abs() < 1e-13, "p_success = {p}");
    }

    #[test]
    fn success_probability_no_jammer_limits() {
        let (placement, mut cfg, env, _) = defaults();
        cfg.p_jam = 0.0;
        let rho = cfg.rho_r(&env);
        let p = p_success(&placement, &cfg, &env).unwrap();
        assert_eq!(p, (-cfg.gamma_t * cfg.noise / rho).exp());

        cfg.noise = 1e-300; // sigma^2 -> 0
        let p = p_success(&placement, &cfg, &env).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    /// Independent Monte Carlo oracle for the legitimate-link success
    /// probability: direct sampling of the SINR definition.
    #[test]
    fn success_probability_against_direct_sampling() {
        let (placement, cfg, env, _) = defaults();
        let analytic = p_success(&placement, &cfg, &env).unwrap();

        let d_r = placement.d_r(cfg.ell_r);
        let p_l = crate::channel::los_probability(d_r, placement.z_u, &env).unwrap();
        let rho_r = cfg.rho_r(&env);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 1_000_000usize;
        let mut hits = 0usize;
        for _ in 0..n {
            let h_tr: f64 = rng.sample(Exp1);
            let link = if rng.random::<f64>() < p_l {
                LinkEnvironment::Los
            } else {
                LinkEnvironment::Nlos
            };
            let h_ur = crate::channel::sample_fading(link, env.m_los, &mut rng);
            let tau = cfg.tau_at(d_r, placement.z_u, link, &env);
            let gamma_r = h_tr * rho_r / (h_ur * tau + cfg.noise);
            if gamma_r > cfg.gamma_t {
                hits += 1;
            }
        }
        let mc = hits as f64 / n as f64;
        let se = (mc * (1.0 - mc) / n as f64).sqrt();
        assert!(
            (analytic - mc).abs() <= 4.0 * se,
            "analytic {analytic} vs sampled {mc} (se {se})"
        );
    }

    #[test]
    fn eavesdrop_reference_point_and_limits() {
        let (placement, cfg, env, quad) = defaults();
        // lambda_e = 0: empty field.
        let empty = NetworkConfig {
            lambda_e: 0.0,
            ..cfg
        };
        assert_eq!(p_eavesdrop(&placement, &empty, &env, &quad).unwrap(), 0.0);

        // Frozen from arbitrary-precision nested quadrature at the default
        // point (lambda_e = 5e-7, d_tu = 200, z_u = 100, theta_r = pi).
        let p = p_eavesdrop(&placement, &cfg, &env, &quad).unwrap();
        assert!((p - 0.4410738170319972).abs() < 1e-6, "p_eavesdrop = {p}");

        // Dense field: exponent diverges.
        let dense = NetworkConfig {
            lambda_e: 1.0,
            ..cfg
        };
        let p = p_eavesdrop(&placement, &dense, &env, &quad).unwrap();
        assert!(p > 1.0 - 1e-12);
    }

    #[test]
    fn secrecy_composition_and_reference() {
        let (placement, cfg, env, quad) = defaults();
        let result = p_secrecy(&placement, &cfg, &env, &quad).unwrap();
        assert!((result.p_se - result.p_s * (1.0 - result.p_e)).abs() < 1e-15);
        assert!(
            (result.p_se - 0.3892617639444090).abs() < 1e-6,
            "p_se = {}",
            result.p_se
        );

        let empty = NetworkConfig {
            lambda_e: 0.0,
            ..cfg
        };
        let r = p_secrecy(&placement, &empty, &env, &quad).unwrap();
        assert_eq!(r.p_se, r.p_s);

        let ideal = NetworkConfig {
            lambda_e: 0.0,
            p_jam: 0.0,
            noise: 1e-300,
            ..cfg
        };
        let r = p_secrecy(&placement, &ideal, &env, &quad).unwrap();
        assert!((r.p_se - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_form_matches_frozen_eve_factor() {
        let (_, cfg, env, _) = defaults();
        let placement = JammerPlacement {
            d_tu: 1.0,
            z_u: 1.0,
            theta_r: PI,
        };
        // Frozen eavesdropper factor at lambda_e = 5e-7 with defaults.
        let p_s = p_success(&placement, &cfg, &env).unwrap();
        let expected = p_s * 0.4518168951080986;
        let got = p_secrecy_asymptotic(&placement, &cfg, &env).unwrap();
        assert!(
            (got - expected).abs() < 1e-12,
            "asymptotic {got} vs {expected}"
        );

        // lambda_e = 0: the factor is exactly 1.
        let empty = NetworkConfig {
            lambda_e: 0.0,
            ..cfg
        };
        let got = p_secrecy_asymptotic(&placement, &empty, &env).unwrap();
        assert_eq!(got, p_success(&placement, &empty, &env).unwrap());

        // Powerful jammer: the exponent vanishes and only p_s is left.
        let strong = NetworkConfig { p_jam: 1e6, ..cfg };
        let p_s = p_success(&placement, &strong, &env).unwrap();
        let got = p_secrecy_asymptotic(&placement, &strong, &env).unwrap();
        assert!(got / p_s > 0.999_999_999);
    }

    #[test]
    fn interference_complement_is_stable() {
        // Complement form must agree with the direct difference where the
        // direct form is still accurate, and stay positive where it is not.
        for link in [LinkEnvironment::Los, LinkEnvironment::Nlos] {
            for &x in &[1e-3, 1e-1, 0.4, 0.6, 5.0, 1e4] {
                let direct = 1.0 - interference_factor(link, x, 2);
                let stable = interference_complement(link, x, 2);
                assert!((direct - stable).abs() <= 1e-12 * stable.max(1e-300));
            }
            let tiny = interference_complement(link, 1e-14, 2);
            assert!(tiny > 0.0 && tiny < 1e-13);
        }
        assert_eq!(
            interference_complement(LinkEnvironment::Nlos, f64::INFINITY, 2),
            1.0
        );
    }
}
