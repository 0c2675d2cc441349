//! Likelihood and Bayes-factor benchmarks for an observed P-value.
//!
//! * The maximum-likelihood ratio (MLR) of the unrestricted model over the
//!   model with the test hypothesis imposed, its deviance `2 ln(MLR)` and
//!   the AIC change `2 ln(MLR) - 2d`. The MLR is only available here for
//!   the one-dimensional normal test, where `MLR = exp(z²/2)`.
//! * The bound `b = -e p ln(p)`, valid for `p < 1/e`. It is a sharp lower
//!   bound on the Bayes factor for the hypothesis when the alternatives
//!   are strongly restricted. `1/b` bounds the increase in odds against
//!   the hypothesis, and `1/(1 + 1/b)` is the Type-1 error rate of the
//!   associated conditional decision rule.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun;
use crate::units::PValue;

/// `1/e`, the upper end of the range where the Bayes-factor bound applies.
pub const BF_BOUND_LIMIT: f64 = 1.0 / E;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BayesFactorBound {
    /// `b = -e p ln(p)`.
    pub b: f64,
    /// `1/b`.
    pub odds_increase_bound: f64,
    /// `1/(1 + 1/b)`.
    pub conditional_type1: f64,
}

/// All calibrations of one P-value.
///
/// Fields that do not apply are `None`, with the reason recorded in `notes`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub p: PValue,
    /// Dimension `d` of the test hypothesis.
    pub df_d: u32,
    pub mlr: Option<f64>,
    pub deviance: Option<f64>,
    pub aic_delta: Option<f64>,
    pub bf_lower_bound: Option<f64>,
    pub odds_increase_bound: Option<f64>,
    pub conditional_type1: Option<f64>,
    pub notes: Vec<String>,
}

/// MLR for a one-degree-of-freedom normal test with two-sided P-value `p`.
pub fn mlr_normal_1df(p: PValue) -> Result<f64> {
    let p = p.get();
    if p >= 1.0 {
        return Err(domain(
            "the normal-test MLR requires p < 1 (p = 1 leaves the direction of z undefined)",
        ));
    }
    // z = Φ⁻¹(1 - p/2), taken from the lower tail to keep small p exact.
    let z = specfun::normal_quantile(p / 2.0)?;
    Ok((0.5 * z * z).exp())
}

/// Deviance `2 ln(mlr)` and AIC change `2 ln(mlr) - 2d`.
pub fn deviance_and_aic(mlr: f64, d: u32) -> Result<(f64, f64)> {
    if !(mlr >= 1.0) || !mlr.is_finite() {
        return Err(domain(format!(
            "MLR must be a finite number >= 1, got {mlr}"
        )));
    }
    if d == 0 {
        return Err(domain("hypothesis dimension d must be at least 1"));
    }
    let deviance = 2.0 * mlr.ln();
    Ok((deviance, deviance - 2.0 * f64::from(d)))
}

/// The `-e p ln(p)` Bayes-factor bound and the quantities derived from it.
pub fn bayes_factor_bound(p: PValue) -> Result<BayesFactorBound> {
    let p = p.get();
    if p >= BF_BOUND_LIMIT {
        return Err(domain(format!(
            "the -e p ln(p) Bayes-factor bound only holds for p < 1/e = {BF_BOUND_LIMIT:.4}, got {p}"
        )));
    }
    let b = -E * p * p.ln();
    let odds_increase_bound = 1.0 / b;
    Ok(BayesFactorBound {
        b,
        odds_increase_bound,
        conditional_type1: 1.0 / (1.0 + odds_increase_bound),
    })
}

pub fn calibration_report(p: PValue, d: u32) -> Result<CalibrationReport> {
    if p.get() >= 1.0 {
        return Err(domain("calibration requires p < 1"));
    }
    if d == 0 {
        return Err(domain("hypothesis dimension d must be at least 1"));
    }
    let mut report = CalibrationReport {
        p,
        df_d: d,
        mlr: None,
        deviance: None,
        aic_delta: None,
        bf_lower_bound: None,
        odds_increase_bound: None,
        conditional_type1: None,
        notes: Vec::new(),
    };

    if d == 1 {
        // Deviance is z², which stays finite even when exp(z²/2) does not.
        let z = specfun::normal_quantile(p.get() / 2.0)?;
        let deviance = z * z;
        let mlr = (0.5 * deviance).exp();
        report.deviance = Some(deviance);
        report.aic_delta = Some(deviance - 2.0 * f64::from(d));
        if mlr.is_finite() {
            report.mlr = Some(mlr);
        } else {
            report.notes.push(format!(
                "MLR = exp({:.6}) exceeds the largest double; deviance and AIC change are still given",
                0.5 * deviance
            ));
        }
    } else {
        report.notes.push(format!(
            "MLR, deviance and AIC change are only computed for the 1-df normal test (d = 1), got d = {d}"
        ));
    }

    if p.get() < BF_BOUND_LIMIT {
        let bf = bayes_factor_bound(p)?;
        report.bf_lower_bound = Some(bf.b);
        report.odds_increase_bound = Some(bf.odds_increase_bound);
        report.conditional_type1 = Some(bf.conditional_type1);
    } else {
        report.notes.push(format!(
            "Bayes-factor bound omitted: -e p ln(p) is only a valid bound for p < 1/e = {BF_BOUND_LIMIT:.4}"
        ));
    }
    Ok(report)
}
