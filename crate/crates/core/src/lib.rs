//! Secrecy transmission probability of a UAV-jammer-aided wireless network
//! with Poisson-distributed eavesdroppers.
//!
//! The crate computes, for a transmitter-receiver pair protected by one
//! friendly UAV jammer (or a Poisson field of them), the probability that
//! the legitimate link beats its SINR target while every eavesdropper of a
//! planar Poisson process stays below its own:
//!
//! * [`channel`] — geometry, LoS probability, fading families, SINR;
//! * [`single_jammer`] — the success / eavesdropping decomposition, its
//!   quadrature evaluation, and the near-Tx closed-form asymptote;
//! * [`multi_jammer`] — the jammer-field expression, its low-height
//!   asymptote, and the closed form at path-loss exponent 4;
//! * [`montecarlo`] — an independent stochastic-geometry simulator used to
//!   validate every analytic expression;
//! * [`optimizer`] — grid-plus-refinement placement search;
//! * [`scenario`] — TOML scenario files, sweep execution, CSV + manifest
//!   output (the CLI front end lives in the `jamsec-cli` crate).

pub mod channel;
pub mod error;
pub mod montecarlo;
pub mod multi_jammer;
pub mod optimizer;
pub mod quadrature;
pub mod scenario;
pub mod single_jammer;
pub mod special;

pub use channel::{
    horizontal_distance, los_probability, q_function, sample_fading, sinr, EnvironmentParams,
    JammerPlacement, LinkEnvironment, LosProfile, NetworkConfig,
};
pub use error::{Error, Result};
pub use montecarlo::{
    sample_ppp, sample_realization, simulate_secrecy, simulate_secrecy_multi, MonteCarloEstimate,
    RandomStreams, Realization,
};
pub use multi_jammer::{
    p_secrecy_multi, p_secrecy_multi_asymptotic, p_secrecy_multi_closed_form,
    p_secrecy_multi_decomposed, MultiJammerSettings,
};
pub use optimizer::{
    optimize_height_multi, optimize_placement, GridAxis, OptimalPlacement, PlacementSearchSpec,
    SearchObjective,
};
pub use quadrature::QuadratureSettings;
pub use scenario::{
    load_scenario, run_scenario, validate_config, Mode, Model, RunOverrides, RunReport,
    ScenarioFile, SweepAxis,
};
pub use single_jammer::{
    p_eavesdrop, p_secrecy, p_secrecy_asymptotic, p_success, p_success_conditional, SecrecyResult,
};
