//! P-value and S-value functions of a hypothesized parameter value.
//!
//! For a normal estimate `m` with standard error `se`, the one-sided
//! P-value for `μ ≥ μ₁` is the lower tail `Φ((m - μ₁)/se)` of the
//! statistic `m - μ₁`. It falls as `μ₁` rises. Its complement is the
//! P-value for `μ ≤ μ₁`, and the surprisal of that complement measures
//! the information against `μ ≤ μ₁`. The two move together, so the
//! quantity sometimes labelled "severity" is just this P-value function.
//! Neither takes a null value `μ₀` as input.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun;
use crate::units::{InfoUnit, SValue};

/// A normal (Wald-type) point estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateSpec {
    estimate: f64,
    std_error: f64,
}

impl EstimateSpec {
    pub fn new(estimate: f64, std_error: f64) -> Result<Self> {
        if !estimate.is_finite() {
            return Err(domain(format!("estimate must be finite, got {estimate}")));
        }
        if !(std_error > 0.0) || !std_error.is_finite() {
            return Err(domain(format!(
                "standard error must be a finite positive number, got {std_error}"
            )));
        }
        Ok(EstimateSpec {
            estimate,
            std_error,
        })
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    pub fn std_error(&self) -> f64 {
        self.std_error
    }

    fn standardized(&self, mu1: f64) -> f64 {
        (self.estimate - mu1) / self.std_error
    }
}

/// One row of a P-/S-value curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub mu1: f64,
    /// P-value for `μ ≥ μ₁`.
    pub p_ge: f64,
    /// P-value for `μ ≤ μ₁`.
    pub p_le: f64,
    /// Information against `μ ≤ μ₁`.
    pub s_le: SValue,
    /// Two-sided P-value for `μ = μ₁`.
    pub p_two: f64,
    pub s_two: SValue,
}

/// `Φ((m - μ₁)/se)`: the P-value for `μ ≥ μ₁`.
pub fn p_lower(spec: &EstimateSpec, mu1: f64) -> f64 {
    specfun::normal_cdf(spec.standardized(mu1))
}

/// `1 - p_lower`: the P-value for `μ ≤ μ₁`.
pub fn p_upper(spec: &EstimateSpec, mu1: f64) -> f64 {
    specfun::normal_cdf(-spec.standardized(mu1))
}

/// Surprisal of `p_le = 1 - p_lower(μ₁)`, the information against `μ ≤ μ₁`.
///
/// Computed from the log tail, so it stays finite when `p_le` underflows.
pub fn s_upper_complement(spec: &EstimateSpec, mu1: f64, unit: InfoUnit) -> SValue {
    let nats = -specfun::ln_normal_cdf(-spec.standardized(mu1));
    SValue::from_nats_clamped(nats)
        .expect("normal log tail is finite for finite arguments")
        .convert(unit)
}

fn point(spec: &EstimateSpec, mu1: f64, unit: InfoUnit) -> CurvePoint {
    let z = spec.standardized(mu1);
    let p_ge = specfun::normal_cdf(z);
    let p_le = specfun::normal_cdf(-z);
    let ln_p_two = std::f64::consts::LN_2 + specfun::ln_normal_cdf(-z.abs());
    let two_sided = SValue::from_nats_clamped(-ln_p_two)
        .expect("normal log tail is finite for finite arguments");
    CurvePoint {
        mu1,
        p_ge,
        p_le,
        s_le: s_upper_complement(spec, mu1, unit),
        p_two: 2.0 * p_ge.min(p_le),
        s_two: two_sided.convert(unit),
    }
}

/// Tabulates the curve at `steps` equally spaced values from `from` to
/// `to`, both ends included.
pub fn curve(
    spec: &EstimateSpec,
    from: f64,
    to: f64,
    steps: usize,
    unit: InfoUnit,
) -> Result<Vec<CurvePoint>> {
    if !(from.is_finite() && to.is_finite()) || !(from < to) {
        return Err(domain(format!(
            "curve range needs finite from < to, got from = {from}, to = {to}"
        )));
    }
    if steps < 2 {
        return Err(domain(format!("curve needs at least 2 steps, got {steps}")));
    }
    let last = (steps - 1) as f64;
    let width = to - from;
    Ok((0..steps)
        .map(|i| {
            let mu1 = if i + 1 == steps {
                to
            } else {
                from + width * (i as f64 / last)
            };
            point(spec, mu1, unit)
        })
        .collect())
}
