//! Special functions used by the channel model and the closed forms:
//! the Gaussian Q-function, the error function pair, the scaled
//! complementary error function, and the gamma function.
//!
//! Everything here wraps `libm`'s FreeBSD-derived routines, which are
//! accurate to a few ulp over the ranges we use. `erfcx` is assembled on
//! top of `erfc` because the closed-form multi-jammer expression needs
//! exp(x^2)*erfc(x) without overflowing at large x.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Error function erf(x) = 2/sqrt(pi) * int_0^x exp(-t^2) dt.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function erfc(x) = 1 - erf(x).
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Gaussian Q-function: the standard normal tail probability
/// Q(x) = P[N(0,1) > x] = erfc(x / sqrt(2)) / 2.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// Gamma function.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Scaled complementary error function erfcx(x) = exp(x^2) * erfc(x).
///
/// For x below 12 the direct product is exact enough and cannot overflow
/// (erfc(12) ~ 1.4e-64 is a normal double). Beyond that the asymptotic
/// expansion erfcx(x) ~ 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!!/(2x^2)^k is
/// converged to double precision well before its smallest term.
pub fn erfcx(x: f64) -> f64 {
    if x < 12.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    let inv_2x2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=20u32 {
        term *= -(2.0 * f64::from(k) - 1.0) * inv_2x2;
        sum += term;
        if term.abs() < f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum / (x * PI.sqrt())
}
