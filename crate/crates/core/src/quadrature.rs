//! Adaptive Gauss-Kronrod quadrature for the radial and angular integrals.
//!
//! The probability expressions reduce to one- and two-dimensional integrals
//! of three kinds:
//!
//! * integrands with super-exponential radial decay (the eavesdropper
//!   integrals) — integrated on `[0, radial_truncation]` with an explicit
//!   check that the integrand is negligible at the truncation radius;
//! * integrands with polynomial radial decay (the jammer-field integrals)
//!   — the tail beyond the truncation radius still matters, so the improper
//!   integral is completed with the substitution r = 1/u, which maps
//!   `[S, inf)` onto `(0, 1/S]` with a bounded transformed integrand;
//! * smooth angular integrands on `[0, pi]`.
//!
//! Each interval is estimated with the 15-point Kronrod rule and its
//! embedded 7-point Gauss rule; the worst interval is bisected until the
//! summed error estimate meets the tolerance.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances and truncation controls for the numerical integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSettings {
    /// Relative tolerance on each integral.
    pub rel_tol: f64,
    /// Absolute tolerance on each integral.
    pub abs_tol: f64,
    /// Radius at which radial integrals with decaying integrands are cut;
    /// defaults to the simulation region radius.
    pub radial_truncation: f64,
    /// Subdivision budget per integral.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            radial_truncation: 1e4,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: self.rel_tol,
                constraint: "rel_tol > 0",
            });
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                value: self.abs_tol,
                constraint: "abs_tol > 0",
            });
        }
        if !(self.radial_truncation > 0.0) {
            return Err(Error::InvalidParameter {
                name: "radial_truncation",
                value: self.radial_truncation,
                constraint: "radial_truncation > 0",
            });
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter {
                name: "max_subdivisions",
                value: 0.0,
                constraint: "max_subdivisions >= 1",
            });
        }
        Ok(())
    }

    /// Same tolerances tightened by `factor`, used for inner integrals so
    /// their error does not dominate the outer one.
    pub(crate) fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: (self.rel_tol * factor).max(1e-14),
            abs_tol: (self.abs_tol * factor).max(1e-300),
            ..*self
        }
    }
}

/// Value and diagnostics of one integral.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with
// the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Gauss-Kronrod 15/7 estimate on [a, b].
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut fv = [0.0f64; 15];
    for (i, &x) in XGK.iter().enumerate() {
        let lo = center - half * x;
        let hi = center + half * x;
        let flo = f(lo);
        if !flo.is_finite() {
            return Err(Error::NonFiniteIntegrand { x: lo });
        }
        fv[i] = flo;
        if i < 7 {
            let fhi = f(hi);
            if !fhi.is_finite() {
                return Err(Error::NonFiniteIntegrand { x: hi });
            }
            fv[14 - i] = fhi;
        }
    }

    let mut kronrod = 0.0;
    let mut resabs = 0.0;
    for (i, &w) in WGK.iter().enumerate() {
        let pair = if i < 7 { fv[i] + fv[14 - i] } else { fv[7] };
        kronrod += w * pair;
        let abs_pair = if i < 7 {
            fv[i].abs() + fv[14 - i].abs()
        } else {
            fv[7].abs()
        };
        resabs += w * abs_pair;
    }
    let mut gauss = WG[3] * fv[7];
    for (i, &w) in WG.iter().enumerate().take(3) {
        let j = 2 * i + 1;
        gauss += w * (fv[j] + fv[14 - j]);
    }

    let mean = 0.5 * kronrod;
    let mut resasc = WGK[7] * (fv[7] - mean).abs();
    for i in 0..7 {
        resasc += WGK[i] * ((fv[i] - mean).abs() + (fv[14 - i] - mean).abs());
    }

    let value = kronrod * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * 1.0f64.min((200.0 * error / resasc).powf(1.5));
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if floor > f64::MIN_POSITIVE {
        error = error.max(floor);
    }

    Ok(Segment { a, b, value, error })
}

/// Adaptive integration over the union of `[breakpoints[i], breakpoints[i+1]]`.
///
/// Breakpoints let the caller pre-split around known scale changes so the
/// first error estimates already see the structure of the integrand.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    assert!(
        breakpoints.len() >= 2,
        "integrate needs at least one interval"
    );
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;

    for w in breakpoints.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let seg = gk15(&f, w[0], w[1])?;
        evaluations += 15;
        value += seg.value;
        error += seg.error;
        heap.push(seg);
    }

    let mut subdivisions = 0;
    while error > settings.abs_tol.max(settings.rel_tol * value.abs()) {
        if subdivisions >= settings.max_subdivisions {
            return Err(Error::QuadratureNotConverged {
                achieved: error,
                requested_abs: settings.abs_tol,
                requested_rel: settings.rel_tol,
                subdivisions,
            });
        }
        let Some(worst) = heap.pop() else {
            // Every interval hit f64 resolution; the residual estimate is
            // all that is achievable.
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer splittable in f64; accept its estimate.
            error -= worst.error;
            continue;
        }
        let left = gk15(&f, worst.a, mid)?;
        let right = gk15(&f, mid, worst.b)?;
        evaluations += 30;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    Ok(QuadratureOutcome {
        value,
        error_estimate: error,
        evaluations,
    })
}

/// Integral of `f` over `[0, inf)` for integrands with polynomial decay.
///
/// The head `[0, split]` is integrated directly; the tail substitutes
/// r = 1/u so that `int_split^inf f(r) dr = int_0^{1/split} f(1/u)/u^2 du`
/// and adaptivity resolves the (integrable) behaviour near u = 0.
pub fn integrate_half_line<F: Fn(f64) -> f64>(
    f: F,
    interior_scale: f64,
    split: f64,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    let scale = interior_scale.clamp(1e-3, split);
    let head_points = [
        0.0,
        0.01 * scale,
        0.1 * scale,
        scale,
        (10.0 * scale).min(split),
        (100.0 * scale).min(split),
        split,
    ];
    let head = integrate(&f, &head_points, settings)?;
    let tail = integrate(|u| f(1.0 / u) / (u * u), &[0.0, 1.0 / split], settings)?;
    Ok(QuadratureOutcome {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        evaluations: head.evaluations + tail.evaluations,
    })
}

/// Integral of `f` over `[0, radial_truncation]` for integrands that decay
/// super-exponentially, with the tail-negligibility check: the integrand at
/// the truncation radius must be below 1e-12 of the integral.
pub fn integrate_truncated_radial<F: Fn(f64) -> f64>(
    f: F,
    interior_scale: f64,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    let trunc = settings.radial_truncation;
    let scale = interior_scale.clamp(1e-3, trunc);
    let points = [
        0.0,
        0.01 * scale,
        0.1 * scale,
        scale,
        (10.0 * scale).min(trunc),
        (100.0 * scale).min(trunc),
        trunc,
    ];
    let out = integrate(&f, &points, settings)?;
    let tail = f(trunc).abs();
    if tail > 1e-12 * out.value.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::TailNotNegligible {
            radius: trunc,
            tail,
            integral: out.value,
        });
    }
    Ok(out)
}
