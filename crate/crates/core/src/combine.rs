//! Combining evidence from K independent studies.
//!
//! Three tests are provided:
//!
//! * the S-summation test, which sums the per-study surprisals in nats and
//!   refers twice the sum to a χ² distribution on 2K degrees of freedom
//!   (Fisher's method). It tests the conjunction of all study models and
//!   assumes nothing about how those models relate;
//! * the Z²-summation test, which refers `Σ zₖ²` to χ² on K degrees of
//!   freedom;
//! * the homogeneity-constrained pooled test, an inverse-variance
//!   fixed-effect pool whose single z-statistic has 1 degree of freedom.
//!   Assuming a common effect imposes K − 1 constraints.
//!
//! Under the null each valid S-value contributes one nat of "noise", so
//! the raw sum `S₊` is expected to be K nats while the summary S-value of
//! the combined test is expected to be 1 nat.
//!
//! All surprisal arithmetic happens in nats and tail probabilities are
//! evaluated in log space, so combining many small P-values never
//! overflows to an infinite S-value.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specfun::{self, ChiSquare};
use crate::units::{surprisal, InfoUnit, PValue, SValue};

/// The evidence one study contributes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    P { p: PValue },
    Effect { estimate: f64, std_error: f64 },
}

impl Evidence {
    pub fn effect(estimate: f64, std_error: f64) -> Result<Self> {
        if !estimate.is_finite() {
            return Err(domain(format!(
                "effect estimate must be finite, got {estimate}"
            )));
        }
        if !(std_error > 0.0) || !std_error.is_finite() {
            return Err(domain(format!(
                "standard error must be a finite positive number, got {std_error}"
            )));
        }
        Ok(Evidence::Effect {
            estimate,
            std_error,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyResult {
    pub id: String,
    #[serde(flatten)]
    pub evidence: Evidence,
}

impl StudyResult {
    pub fn with_p(id: impl Into<String>, p: PValue) -> Self {
        StudyResult {
            id: id.into(),
            evidence: Evidence::P { p },
        }
    }

    pub fn with_effect(id: impl Into<String>, estimate: f64, std_error: f64) -> Result<Self> {
        Ok(StudyResult {
            id: id.into(),
            evidence: Evidence::effect(estimate, std_error)?,
        })
    }
}

/// Result of the S-summation test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinationReport {
    pub k: usize,
    /// Sum of the per-study S-values, in nats.
    pub s_plus: SValue,
    /// Reference χ² degrees of freedom, 2K.
    pub df: u32,
    /// Summary P-value. Reads 0 only once it falls below the smallest
    /// positive double; `s_summary` stays exact regardless.
    pub p_summary: f64,
    pub s_summary: SValue,
    /// K nats: what `s_plus` averages when every study model holds.
    pub expected_noise_nats: f64,
    /// `s_plus - s_summary`, about K − 1 nats on average under the null.
    pub shrinkage_nats: f64,
}

/// Result of the Z²-summation test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZSquaredReport {
    pub k: usize,
    /// `Σ zₖ²`.
    pub statistic: f64,
    /// K. Subtract any cross-study sharp constraints that were used to
    /// produce the z-scores; see [`z_squared_test_with_df`].
    pub df: u32,
    pub p_summary: f64,
    pub s_summary: SValue,
}

/// Result of the homogeneity-constrained pooled test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PooledReport {
    pub k: usize,
    pub null_value: f64,
    pub pooled_estimate: f64,
    pub pooled_se: f64,
    pub z: f64,
    pub p_two_sided: f64,
    pub s_summary: SValue,
    /// Always 1: the K − 1 homogeneity constraints leave one degree of freedom.
    pub df: u32,
}

/// Side-by-side comparison of the S-summation and pooled tests on the same studies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodComparison {
    pub k: usize,
    /// Two-sided normal P-value of each study, in input order.
    pub study_p_values: Vec<f64>,
    pub s_summation: CombinationReport,
    pub pooled: PooledReport,
    /// Pooled summary S-value minus S-summation summary S-value, in nats.
    pub difference_nats: f64,
}

/// Fisher's combination test in surprisal form.
///
/// Every study must carry P-value evidence.
pub fn s_summation_test(studies: &[StudyResult]) -> Result<CombinationReport> {
    if studies.is_empty() {
        return Err(Error::Empty("S-summation test"));
    }
    let nats = studies
        .iter()
        .map(|s| match s.evidence {
            Evidence::P { p } => Ok(surprisal(p, InfoUnit::Nats).value()),
            Evidence::Effect { .. } => Err(domain(format!(
                "study `{}` carries an effect estimate; the S-summation test needs P-values",
                s.id
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    s_summation_from_nats(nats)
}

/// S-summation on per-study surprisals already expressed in nats.
pub fn s_summation_from_nats(mut nats: Vec<f64>) -> Result<CombinationReport> {
    if nats.is_empty() {
        return Err(Error::Empty("S-summation test"));
    }
    if let Some(bad) = nats.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(Error::InvalidSValue(*bad));
    }
    let k = nats.len();
    let df = u32::try_from(2 * k).map_err(|_| domain("too many studies"))?;
    // Summing in sorted order makes the result independent of study order.
    nats.sort_by(f64::total_cmp);
    let s_plus: f64 = nats.iter().sum();
    let ln_p = specfun::ln_chisq_survival(ChiSquare::new(df)?, 2.0 * s_plus)?;
    let s_summary = SValue::from_nats_clamped(-ln_p)?;
    Ok(CombinationReport {
        k,
        s_plus: SValue::new(s_plus, InfoUnit::Nats)?,
        df,
        p_summary: ln_p.exp(),
        s_summary,
        expected_noise_nats: k as f64,
        shrinkage_nats: s_plus - s_summary.value(),
    })
}

/// Z²-summation test on K degrees of freedom.
pub fn z_squared_test(z_scores: &[f64]) -> Result<ZSquaredReport> {
    let df = u32::try_from(z_scores.len()).map_err(|_| domain("too many z-scores"))?;
    z_squared_test_with_df(z_scores, df)
}

/// Z²-summation test with the reference degrees of freedom set explicitly.
///
/// Each cross-study sharp constraint used to compute the z-scores removes
/// one degree of freedom from K.
pub fn z_squared_test_with_df(z_scores: &[f64], df: u32) -> Result<ZSquaredReport> {
    if z_scores.is_empty() {
        return Err(Error::Empty("Z²-summation test"));
    }
    if let Some(bad) = z_scores.iter().find(|z| !z.is_finite()) {
        return Err(domain(format!("z-scores must be finite, got {bad}")));
    }
    let mut squares: Vec<f64> = z_scores.iter().map(|z| z * z).collect();
    squares.sort_by(f64::total_cmp);
    let statistic: f64 = squares.iter().sum();
    let ln_p = specfun::ln_chisq_survival(ChiSquare::new(df)?, statistic)?;
    Ok(ZSquaredReport {
        k: z_scores.len(),
        statistic,
        df,
        p_summary: ln_p.exp(),
        s_summary: SValue::from_nats_clamped(-ln_p)?,
    })
}

fn effects(studies: &[StudyResult]) -> Result<Vec<(f64, f64)>> {
    studies
        .iter()
        .map(|s| match s.evidence {
            Evidence::Effect {
                estimate,
                std_error,
            } => {
                if !(std_error > 0.0) {
                    return Err(domain(format!(
                        "study `{}` has non-positive standard error {std_error}",
                        s.id
                    )));
                }
                Ok((estimate, std_error))
            }
            Evidence::P { .. } => Err(domain(format!(
                "study `{}` carries only a P-value; this test needs an estimate and standard error",
                s.id
            ))),
        })
        .collect()
}

/// Two-sided normal P-value `2Φ(-|z|)` in log space.
fn ln_two_sided_p(z: f64) -> f64 {
    std::f64::consts::LN_2 + specfun::ln_normal_cdf(-z.abs())
}

/// Inverse-variance fixed-effect pooled test of `δ = null_value`,
/// assuming a common effect across studies.
pub fn pooled_homogeneity_test(studies: &[StudyResult], null_value: f64) -> Result<PooledReport> {
    if studies.is_empty() {
        return Err(Error::Empty("pooled homogeneity test"));
    }
    if !null_value.is_finite() {
        return Err(domain(format!(
            "null value must be finite, got {null_value}"
        )));
    }
    let mut pairs = effects(studies)?;
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut weight_sum = 0.0;
    let mut weighted = 0.0;
    for &(estimate, se) in &pairs {
        let w = 1.0 / (se * se);
        weight_sum += w;
        weighted += w * estimate;
    }
    let pooled_estimate = weighted / weight_sum;
    let pooled_se = weight_sum.sqrt().recip();
    let z = (pooled_estimate - null_value) / pooled_se;
    if !(weight_sum.is_finite() && pooled_estimate.is_finite() && z.is_finite()) {
        return Err(domain(
            "estimates and standard errors are too extreme to pool in double precision",
        ));
    }
    let ln_p = ln_two_sided_p(z);
    Ok(PooledReport {
        k: pairs.len(),
        null_value,
        pooled_estimate,
        pooled_se,
        z,
        p_two_sided: ln_p.exp().min(1.0),
        s_summary: SValue::from_nats_clamped(-ln_p)?,
        df: 1,
    })
}

/// Runs the S-summation test on per-study two-sided normal P-values and
/// the pooled test on the same effect estimates.
pub fn compare_methods(studies: &[StudyResult], null_value: f64) -> Result<MethodComparison> {
    let pooled = pooled_homogeneity_test(studies, null_value)?;
    let pairs = effects(studies)?;
    let ln_ps = pairs
        .iter()
        .map(|&(estimate, se)| {
            let z = (estimate - null_value) / se;
            if z.is_finite() {
                Ok(ln_two_sided_p(z).min(0.0))
            } else {
                Err(domain(format!(
                    "study z-score ({estimate} - {null_value})/{se} is not finite"
                )))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let s_summation = s_summation_from_nats(ln_ps.iter().map(|l| -l).collect())?;
    let difference_nats = pooled.s_summary.value() - s_summation.s_summary.value();
    Ok(MethodComparison {
        k: pairs.len(),
        study_p_values: ln_ps.iter().map(|l| l.exp()).collect(),
        s_summation,
        pooled,
        difference_nats,
    })
}
