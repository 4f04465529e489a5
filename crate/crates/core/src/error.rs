//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates one of the documented domain invariants.
    #[error("invalid {name} = {value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The adaptive quadrature ran out of subdivisions before reaching the
    /// requested tolerance. The achieved error estimate is reported so the
    /// caller can decide whether the value is still usable.
    #[error(
        "quadrature did not converge: achieved error {achieved:.3e} \
         (requested abs {requested_abs:.1e} / rel {requested_rel:.1e}) \
         after {subdivisions} subdivisions"
    )]
    QuadratureNotConverged {
        achieved: f64,
        requested_abs: f64,
        requested_rel: f64,
        subdivisions: usize,
    },

    /// The integrand evaluated to a NaN or infinity inside the integration
    /// region, which indicates invalid inputs rather than a tolerance issue.
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    /// A truncated radial integral still has non-negligible mass at the
    /// truncation radius.
    #[error(
        "radial integrand at truncation radius {radius} m is {tail:.3e}, \
         not negligible against the integral {integral:.3e}"
    )]
    TailNotNegligible {
        radius: f64,
        tail: f64,
        integral: f64,
    },

    /// A quantity that must be a probability landed outside [0, 1] by more
    /// than the tolerated floating-point excursion; this signals a
    /// quadrature or formula bug, not roundoff.
    #[error("probability out of range: {value}")]
    ProbabilityOutOfRange { value: f64 },

    /// The optimizer objective evaluated to NaN or infinity at a grid point.
    #[error("objective is not finite at d_tu = {d_tu}, z_u = {z_u}")]
    NonFiniteObjective { d_tu: f64, z_u: f64 },

    /// Scenario-file level problem (unknown key, unreadable value, bad mode
    /// combination). Carries the offending description verbatim.
    #[error("scenario error: {0}")]
    Scenario(String),

    /// Filesystem failure while reading a scenario or writing results.
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}
