//! Stochastic-geometry simulator: an independent estimate of every
//! probability the analytic modules compute.
//!
//! Realizations are independent and carry their own random stream derived
//! from `(seed, realization index)`, so estimates are reproducible and
//! independent of how realizations are sharded across threads. Within a
//! realization the scoring uses exact short-circuits only: an eavesdropper
//! whose fading draw cannot beat the wiretap target even without
//! interference is skipped, and interference accumulation stops as soon as
//! the running sum settles the comparison. Neither changes the indicator's
//! distribution.

use crate::channel::{
    EnvironmentParams, JammerPlacement, LinkEnvironment, LosProfile, NetworkConfig,
};
use crate::multi_jammer::MultiJammerSettings;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Bernoulli estimate of one simulated probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_realizations: u64,
}

impl MonteCarloEstimate {
    fn from_successes(successes: u64, n: u64) -> Self {
        assert!(n >= 1, "at least one realization required");
        let mean = successes as f64 / n as f64;
        Self {
            mean,
            std_error: (mean * (1.0 - mean) / n as f64).sqrt(),
            n_realizations: n,
        }
    }

    /// Two-estimate (or estimate-vs-analytic) consistency check at `k`
    /// standard errors.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }
}

/// Family of reproducible random streams keyed by `(seed, index)`.
///
/// Every index yields an independent ChaCha stream, so parallel workers can
/// draw without coordination and the merged result does not depend on
/// scheduling.
#[derive(Debug, Clone, Copy)]
pub struct RandomStreams {
    seed: u64,
}

impl RandomStreams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Draws one Poisson point process on the disk of the given radius
/// centered at the origin: a Poisson count, then i.i.d. uniform points via
/// `r = R sqrt(u)`, `theta = 2 pi v`.
pub fn sample_ppp<R: Rng + ?Sized>(lambda: f64, radius: f64, rng: &mut R) -> Vec<[f64; 2]> {
    let mean = lambda * PI * radius * radius;
    if mean <= 0.0 {
        return Vec::new();
    }
    let count = Poisson::new(mean).expect("positive mean").sample(rng) as usize;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let r = radius * rng.random::<f64>().sqrt();
        let theta = 2.0 * PI * rng.random::<f64>();
        points.push([r * theta.cos(), r * theta.sin()]);
    }
    points
}

/// Fully materialized draw of one single-jammer realization, for
/// distributional diagnostics (the estimators stream instead). A2G links
/// are ordered Rx first, then one entry per eavesdropper.
#[derive(Debug, Clone)]
pub struct Realization {
    pub eve_positions: Vec<[f64; 2]>,
    pub jammer_positions: Vec<[f64; 2]>,
    pub fading_draws: Vec<f64>,
    pub env_draws: Vec<LinkEnvironment>,
}

/// Draws the positions, environment tags, and jammer-side fading gains of
/// one single-jammer realization.
pub fn sample_realization<R: Rng + ?Sized>(
    placement: &JammerPlacement,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    rng: &mut R,
) -> Realization {
    let los = LosProfile::new(placement.z_u, env);
    let gamma_dist = los_gain_distribution(env);
    let jammer = [
        placement.d_tu * placement.theta_r.cos(),
        placement.d_tu * placement.theta_r.sin(),
    ];
    let eve_positions = sample_ppp(cfg.lambda_e, cfg.region_radius, rng);

    let mut fading_draws = Vec::with_capacity(eve_positions.len() + 1);
    let mut env_draws = Vec::with_capacity(eve_positions.len() + 1);
    let mut draw_link = |d: f64, rng: &mut R| {
        let link = if rng.random::<f64>() < los.p_los(d) {
            LinkEnvironment::Los
        } else {
            LinkEnvironment::Nlos
        };
        env_draws.push(link);
        fading_draws.push(match link {
            LinkEnvironment::Los => gamma_dist.sample(rng),
            LinkEnvironment::Nlos => rng.sample(Exp1),
        });
    };

    let d_r = placement.d_r(cfg.ell_r);
    draw_link(d_r, rng);
    for eve in &eve_positions {
        let d_e = ((eve[0] - jammer[0]).powi(2) + (eve[1] - jammer[1]).powi(2)).sqrt();
        draw_link(d_e, rng);
    }

    Realization {
        eve_positions,
        jammer_positions: vec![jammer],
        fading_draws,
        env_draws,
    }
}

fn los_gain_distribution(env: &EnvironmentParams) -> Gamma<f64> {
    let m = f64::from(env.m_los);
    Gamma::new(m, 1.0 / m).expect("m_los >= 1 yields a valid Gamma")
}

/// Precomputed per-run state shared by all realizations.
struct SimContext {
    rx: [f64; 2],
    jammer: [f64; 2],
    z_u_sq: f64,
    los: LosProfile,
    gamma_dist: Gamma<f64>,
    rho_r: f64,
    p_tx: f64,
    p_jam: f64,
    noise: f64,
    gamma_t: f64,
    gamma_t_prime: f64,
    lambda_e: f64,
    lambda_u: f64,
    radius: f64,
    half_alpha_tx: f64,
    half_alpha_los: f64,
    half_alpha_nlos: f64,
}

impl SimContext {
    fn new(
        placement: &JammerPlacement,
        lambda_u: f64,
        z_u: f64,
        cfg: &NetworkConfig,
        env: &EnvironmentParams,
    ) -> Self {
        Self {
            rx: [cfg.ell_r, 0.0],
            jammer: [
                placement.d_tu * placement.theta_r.cos(),
                placement.d_tu * placement.theta_r.sin(),
            ],
            z_u_sq: z_u * z_u,
            los: LosProfile::new(z_u, env),
            gamma_dist: los_gain_distribution(env),
            rho_r: cfg.rho_r(env),
            p_tx: cfg.p_tx,
            p_jam: cfg.p_jam,
            noise: cfg.noise,
            gamma_t: cfg.gamma_t,
            gamma_t_prime: cfg.gamma_t_prime,
            lambda_e: cfg.lambda_e,
            lambda_u,
            radius: cfg.region_radius,
            half_alpha_tx: 0.5 * cfg.alpha_tx_or(env),
            half_alpha_los: 0.5 * env.alpha_los,
            half_alpha_nlos: 0.5 * env.alpha_nlos,
        }
    }

    /// Received jamming power of one A2G link with its own environment tag
    /// and fading draw.
    fn jam_link_gain<R: Rng + ?Sized>(&self, dx: f64, dy: f64, rng: &mut R) -> f64 {
        if self.p_jam == 0.0 {
            return 0.0;
        }
        let d_sq = dx * dx + dy * dy;
        let los = rng.random::<f64>() < self.los.p_los(d_sq.sqrt());
        let (h, half_alpha): (f64, f64) = if los {
            (self.gamma_dist.sample(rng), self.half_alpha_los)
        } else {
            (rng.sample(Exp1), self.half_alpha_nlos)
        };
        h * (d_sq + self.z_u_sq).powf(-half_alpha) * self.p_jam
    }

    /// Tx power scale at a ground point.
    fn rho_at(&self, ell_sq: f64) -> f64 {
        ell_sq.powf(-self.half_alpha_tx) * self.p_tx
    }

    /// Secrecy indicator of one single-jammer realization.
    fn indicator_single<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let h_tr: f64 = rng.sample(Exp1);
        let i_r = self.jam_link_gain(
            self.jammer[0] - self.rx[0],
            self.jammer[1] - self.rx[1],
            rng,
        );
        if h_tr * self.rho_r <= self.gamma_t * (i_r + self.noise) {
            return false;
        }
        for eve in sample_ppp(self.lambda_e, self.radius, rng) {
            let rho_e = self.rho_at(eve[0] * eve[0] + eve[1] * eve[1]);
            let h_te: f64 = rng.sample(Exp1);
            // Interference-free bound: this eavesdropper cannot reach the
            // target no matter what the jammer link does.
            if h_te * rho_e <= self.gamma_t_prime * self.noise {
                continue;
            }
            let i_e = self.jam_link_gain(eve[0] - self.jammer[0], eve[1] - self.jammer[1], rng);
            if h_te * rho_e >= self.gamma_t_prime * (i_e + self.noise) {
                return false;
            }
        }
        true
    }

    /// Secrecy indicator of one multi-jammer realization.
    fn indicator_multi<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let mut jammers = sample_ppp(self.lambda_u, self.radius, rng);
        // Near-Tx jammers first: the eavesdroppers that matter cluster
        // around the Tx, so their interference budget is spent early.
        jammers.sort_unstable_by(|a, b| {
            (a[0] * a[0] + a[1] * a[1]).total_cmp(&(b[0] * b[0] + b[1] * b[1]))
        });

        let h_tr: f64 = rng.sample(Exp1);
        let budget_r = h_tr * self.rho_r / self.gamma_t - self.noise;
        if budget_r <= 0.0 {
            return false;
        }
        let mut i_r = 0.0;
        for j in &jammers {
            i_r += self.jam_link_gain(j[0] - self.rx[0], j[1] - self.rx[1], rng);
            if i_r >= budget_r {
                return false;
            }
        }

        let eves = sample_ppp(self.lambda_e, self.radius, rng);
        let mut contenders: Vec<(f64, f64, f64)> = Vec::new();
        for eve in eves {
            let rho_e = self.rho_at(eve[0] * eve[0] + eve[1] * eve[1]);
            let h_te: f64 = rng.sample(Exp1);
            let budget = h_te * rho_e / self.gamma_t_prime - self.noise;
            if budget > 0.0 {
                contenders.push((budget, eve[0], eve[1]));
            }
        }
        // Hardest to jam first, so a secrecy breach is found quickly.
        contenders.sort_unstable_by(|a, b| b.0.total_cmp(&a.0));
        for (budget, x, y) in contenders {
            let mut i_e = 0.0;
            let mut jammed = false;
            for j in &jammers {
                i_e += self.jam_link_gain(j[0] - x, j[1] - y, rng);
                if i_e > budget {
                    jammed = true;
                    break;
                }
            }
            if !jammed {
                return false;
            }
        }
        true
    }
}

fn run<F: Fn(&mut ChaCha8Rng) -> bool + Sync>(
    n: u64,
    streams: &RandomStreams,
    indicator: F,
) -> MonteCarloEstimate {
    let successes: u64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.stream(i);
            u64::from(indicator(&mut rng))
        })
        .sum();
    MonteCarloEstimate::from_successes(successes, n)
}

/// Simulated secrecy transmission probability for a single jammer at the
/// given placement.
pub fn simulate_secrecy(
    placement: &JammerPlacement,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    n: u64,
    streams: &RandomStreams,
) -> MonteCarloEstimate {
    let ctx = SimContext::new(placement, 0.0, placement.z_u, cfg, env);
    run(n, streams, |rng| ctx.indicator_single(rng))
}

/// Simulated secrecy transmission probability under a Poisson field of
/// jammers at common height; interference at each device is the sum over
/// all jammers, each link with its own environment tag and fading.
pub fn simulate_secrecy_multi(
    settings: &MultiJammerSettings,
    cfg: &NetworkConfig,
    env: &EnvironmentParams,
    n: u64,
    streams: &RandomStreams,
) -> MonteCarloEstimate {
    let placement = JammerPlacement {
        d_tu: 0.0,
        z_u: settings.z_u,
        theta_r: 0.0,
    };
    let ctx = SimContext::new(&placement, settings.lambda_u, settings.z_u, cfg, env);
    run(n, streams, |rng| ctx.indicator_multi(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSettings;

    #[test]
    fn ppp_count_and_support() {
        let streams = RandomStreams::new(99);
        let mut rng = streams.stream(0);
        assert!(sample_ppp(0.0, 1e4, &mut rng).is_empty());

        let mut total = 0usize;
        let realizations = 10_000;
        for i in 0..realizations {
            let mut rng = streams.stream(i);
            let pts = sample_ppp(1e-5, 1e4, &mut rng);
            total += pts.len();
            if i < 50 {
                for p in &pts {
                    assert!(p[0].hypot(p[1]) <= 1e4);
                }
            }
        }
        let expected = 1e-5 * PI * 1e8;
        let mean = total as f64 / realizations as f64;
        let sigma = (expected / realizations as f64).sqrt();
        assert!(
            (mean - expected).abs() <= 4.0 * sigma,
            "mean count {mean} vs {expected} (sigma {sigma})"
        );
    }

    #[test]
    fn estimates_are_reproducible_and_scheduling_independent() {
        let placement = JammerPlacement::default();
        let cfg = NetworkConfig::default();
        let env = EnvironmentParams::default();
        let streams = RandomStreams::new(7);

        let a = simulate_secrecy(&placement, &cfg, &env, 5_000, &streams);
        let b = simulate_secrecy(&placement, &cfg, &env, 5_000, &streams);
        assert_eq!(a, b);

        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| simulate_secrecy(&placement, &cfg, &env, 5_000, &streams));
        assert_eq!(a, single);
    }

    #[test]
    fn trivial_limits() {
        let placement = JammerPlacement::default();
        let env = EnvironmentParams::default();
        let streams = RandomStreams::new(3);

        let ideal = NetworkConfig {
            lambda_e: 0.0,
            p_jam: 0.0,
            noise: 1e-300,
            ..NetworkConfig::default()
        };
        let est = simulate_secrecy(&placement, &ideal, &env, 2_000, &streams);
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.std_error, 0.0);

        let hopeless = NetworkConfig {
            gamma_t: 1e12,
            ..NetworkConfig::default()
        };
        let est = simulate_secrecy(&placement, &hopeless, &env, 2_000, &streams);
        assert_eq!(est.mean, 0.0);
    }

    #[test]
    fn doubling_n_halves_the_standard_error() {
        let placement = JammerPlacement::default();
        let cfg = NetworkConfig::default();
        let env = EnvironmentParams::default();
        let streams = RandomStreams::new(21);
        let small = simulate_secrecy(&placement, &cfg, &env, 20_000, &streams);
        let large = simulate_secrecy(&placement, &cfg, &env, 40_000, &streams);
        let ratio = large.std_error / small.std_error;
        assert!(
            (ratio - 0.5f64.sqrt()).abs() < 0.02,
            "std-error ratio {ratio}"
        );
    }

    #[test]
    fn no_jammer_success_matches_closed_form() {
        // With jamming power zero the legitimate side is pure noise-limited
        // Rayleigh and p_s = exp(-gamma_t sigma^2 / rho_r).
        let placement = JammerPlacement::default();
        let env = EnvironmentParams::default();
        let cfg = NetworkConfig {
            p_jam: 0.0,
            lambda_e: 0.0,
            ..NetworkConfig::default()
        };
        let streams = RandomStreams::new(17);
        let est = simulate_secrecy(&placement, &cfg, &env, 100_000, &streams);
        let expected = (-cfg.gamma_t * cfg.noise / cfg.rho_r(&env)).exp();
        assert!(
            est.agrees_with(expected, 4.0),
            "{} vs {expected} (se {})",
            est.mean,
            est.std_error
        );
    }

    #[test]
    fn realization_los_fraction_matches_the_model() {
        let env = EnvironmentParams::default();
        let cfg = NetworkConfig {
            lambda_e: 1e-7, // keep eve lists short; only the Rx link is scored
            ..NetworkConfig::default()
        };
        let streams = RandomStreams::new(5);
        for &z_u in &[20.0, 100.0, 250.0] {
            let placement = JammerPlacement {
                z_u,
                ..JammerPlacement::default()
            };
            let d_r = placement.d_r(cfg.ell_r);
            let p_l = crate::channel::los_probability(d_r, z_u, &env).unwrap();
            let n = 20_000;
            let mut los_count = 0usize;
            for i in 0..n {
                let mut rng = streams.stream(i);
                let realization = sample_realization(&placement, &cfg, &env, &mut rng);
                if realization.env_draws[0] == LinkEnvironment::Los {
                    los_count += 1;
                }
            }
            let frac = los_count as f64 / n as f64;
            let sigma = (p_l * (1.0 - p_l) / n as f64).sqrt();
            assert!(
                (frac - p_l).abs() <= 4.0 * sigma,
                "z_u = {z_u}: fraction {frac} vs {p_l}"
            );
        }
    }

    #[test]
    fn multi_with_no_jammers_is_bitwise_single_without_power() {
        let env = EnvironmentParams::default();
        let cfg = NetworkConfig {
            ell_r: 50.0,
            lambda_e: 1e-5,
            ..NetworkConfig::default()
        };
        let streams = RandomStreams::new(12);
        let single = simulate_secrecy(
            &JammerPlacement {
                d_tu: 0.0,
                z_u: 0.0,
                theta_r: 0.0,
            },
            &NetworkConfig { p_jam: 0.0, ..cfg },
            &env,
            3_000,
            &streams,
        );
        let multi = simulate_secrecy_multi(
            &MultiJammerSettings {
                lambda_u: 0.0,
                z_u: 0.0,
                quad: QuadratureSettings::default(),
            },
            &cfg,
            &env,
            3_000,
            &streams,
        );
        assert_eq!(single, multi);
    }

    #[test]
    fn multi_legitimate_factor_matches_analytic() {
        let env = EnvironmentParams::default();
        let cfg = NetworkConfig {
            ell_r: 50.0,
            lambda_e: 0.0,
            lambda_u: 7e-6,
            p_jam: 2e-11,
            ..NetworkConfig::default()
        };
        let settings = MultiJammerSettings {
            lambda_u: 7e-6,
            z_u: 60.0,
            quad: QuadratureSettings::default(),
        };
        let analytic = crate::multi_jammer::p_secrecy_multi(&settings, &cfg, &env).unwrap();
        let streams = RandomStreams::new(31);
        let est = simulate_secrecy_multi(&settings, &cfg, &env, 20_000, &streams);
        assert!(
            est.agrees_with(analytic, 4.0),
            "{} vs {analytic} (se {})",
            est.mean,
            est.std_error
        );
    }
}
