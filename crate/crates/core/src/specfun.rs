//! Numerical kernels: log-gamma, regularized incomplete gamma, chi-squared
//! tail probabilities and the standard normal distribution.
//!
//! Everything here is self-contained. Each kernel also has a log-space
//! variant so that tail probabilities far below the smallest double can
//! still be turned into finite surprisals.

use crate::error::{domain, Error, Result};

/// Hard cap on series and continued-fraction iterations.
pub const MAX_ITERATIONS: usize = 500;

/// Series terminates once a term falls below this fraction of the sum.
const SERIES_TOLERANCE: f64 = 1e-16;

/// Continued fractions terminate once a Lentz update factor is this close to one.
/// 1e-16 sits below the spacing of doubles just under 1.0, so the machine
/// epsilon is the tightest attainable stopping rule.
const CF_TOLERANCE: f64 = f64::EPSILON;

const LENTZ_TINY: f64 = 1e-300;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// Stirling series coefficients B_2k / (2k (2k - 1)).
const STIRLING_COEF: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_CUTOVER: f64 = 15.0;

/// Natural log of the gamma function for `x > 0`.
///
/// Lanczos below 15, Stirling series above. Arguments below 0.5 are
/// shifted up with `ln Γ(x) = ln Γ(x + 1) - ln x`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!(
            "log_gamma requires a finite x > 0, got {x}"
        )));
    }
    if x < 0.5 {
        return Ok(log_gamma_lanczos(x + 1.0) - x.ln());
    }
    if x >= STIRLING_CUTOVER {
        return Ok(log_gamma_stirling(x));
    }
    Ok(log_gamma_lanczos(x))
}

fn log_gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

fn log_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut correction = 0.0;
    let mut power = inv;
    for c in STIRLING_COEF {
        correction += c * power;
        power *= inv2;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + correction
}

fn check_gamma_args(a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!(
            "incomplete gamma requires a finite a > 0, got a = {a}"
        )));
    }
    if !(x >= 0.0) {
        return Err(domain(format!(
            "incomplete gamma requires x >= 0, got x = {x}"
        )));
    }
    Ok(())
}

/// Regularized upper incomplete gamma function `Q(a, x) = Γ(a, x) / Γ(a)`.
pub fn reg_gamma_upper(a: f64, x: f64) -> Result<f64> {
    Ok(ln_reg_gamma_upper(a, x)?.exp())
}

/// Regularized lower incomplete gamma function `P(a, x) = 1 - Q(a, x)`.
pub fn reg_gamma_lower(a: f64, x: f64) -> Result<f64> {
    check_gamma_args(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let log_prefactor = gamma_log_prefactor(a, x)?;
    if x < a + 1.0 {
        Ok(lower_series(a, x, log_prefactor)?)
    } else {
        Ok(-(upper_continued_fraction_ln(a, x, log_prefactor)?).exp_m1())
    }
}

/// `ln Q(a, x)`, finite even where `Q` itself underflows.
///
/// Series expansion of `P` for `x < a + 1`, Lentz continued fraction for
/// `Q` otherwise.
pub fn ln_reg_gamma_upper(a: f64, x: f64) -> Result<f64> {
    check_gamma_args(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    let log_prefactor = gamma_log_prefactor(a, x)?;
    if x < a + 1.0 {
        let p = lower_series(a, x, log_prefactor)?;
        Ok((-p).ln_1p())
    } else {
        upper_continued_fraction_ln(a, x, log_prefactor)
    }
}

/// `ln(x^a e^-x / Γ(a))`.
fn gamma_log_prefactor(a: f64, x: f64) -> Result<f64> {
    Ok(a * x.ln() - x - log_gamma(a)?)
}

// P(a, x) = prefactor * sum_n x^n / (a (a+1) ... (a+n))
fn lower_series(a: f64, x: f64, log_prefactor: f64) -> Result<f64> {
    let mut denom = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITERATIONS {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term < sum * SERIES_TOLERANCE {
            return Ok((log_prefactor + sum.ln()).exp().min(1.0));
        }
    }
    Err(Error::NoConvergence {
        routine: "incomplete gamma series",
        iterations: MAX_ITERATIONS,
    })
}

// Q(a, x) = prefactor / (x + 1 - a - 1(1-a)/(x + 3 - a - 2(2-a)/(x + 5 - a - ...)))
fn upper_continued_fraction_ln(a: f64, x: f64, log_prefactor: f64) -> Result<f64> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / LENTZ_TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITERATIONS {
        let n = i as f64;
        let an = -n * (n - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < LENTZ_TINY {
            d = LENTZ_TINY;
        }
        c = b + an / c;
        if c.abs() < LENTZ_TINY {
            c = LENTZ_TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() <= CF_TOLERANCE {
            return Ok(log_prefactor + h.ln());
        }
    }
    Err(Error::NoConvergence {
        routine: "incomplete gamma continued fraction",
        iterations: MAX_ITERATIONS,
    })
}

/// Chi-squared distribution with a positive integer number of degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiSquare {
    df: u32,
}

impl ChiSquare {
    pub fn new(df: u32) -> Result<Self> {
        if df == 0 {
            return Err(domain("chi-squared degrees of freedom must be at least 1"));
        }
        Ok(ChiSquare { df })
    }

    #[inline]
    pub fn df(self) -> u32 {
        self.df
    }

    fn shape(self) -> f64 {
        f64::from(self.df) / 2.0
    }
}

fn check_chisq_x(x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(domain(format!(
            "chi-squared statistic must be >= 0, got {x}"
        )));
    }
    Ok(())
}

/// Upper tail `Pr(X > x)` for `X ~ χ²(df)`.
pub fn chisq_survival(dist: ChiSquare, x: f64) -> Result<f64> {
    check_chisq_x(x)?;
    reg_gamma_upper(dist.shape(), x / 2.0)
}

/// Natural log of [`chisq_survival`], usable when the tail underflows.
pub fn ln_chisq_survival(dist: ChiSquare, x: f64) -> Result<f64> {
    check_chisq_x(x)?;
    ln_reg_gamma_upper(dist.shape(), x / 2.0)
}

/// Lower tail `Pr(X <= x)`.
pub fn chisq_cdf(dist: ChiSquare, x: f64) -> Result<f64> {
    check_chisq_x(x)?;
    reg_gamma_lower(dist.shape(), x / 2.0)
}

/// Critical value `x` with `Pr(X > x) = p`, found by bisection on the
/// log survival function.
pub fn chisq_upper_quantile(dist: ChiSquare, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!(
            "chi-squared quantile requires 0 < p < 1, got {p}"
        )));
    }
    let target = p.ln();
    let mut lo = 0.0;
    let mut hi = f64::from(dist.df).max(1.0);
    while ln_chisq_survival(dist, hi)? > target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ln_chisq_survival(dist, mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Complementary error function.
///
/// A positive-term Maclaurin series for `erf` below 1, and a continued
/// fraction that keeps full relative accuracy in the tail above it.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 1.0 {
        return 1.0 - erf_series(x);
    }
    (ln_erfc_tail(x)).exp()
}

/// `ln erfc(x)`, finite for every finite `x`.
pub fn ln_erfc(x: f64) -> f64 {
    if x < 1.0 {
        erfc(x).ln()
    } else {
        ln_erfc_tail(x)
    }
}

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n (2x^2)^n x / (1 * 3 * ... * (2n+1))
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > sum * SERIES_TOLERANCE {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    2.0 * FRAC_1_SQRT_PI * (-x2).exp() * sum
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 2x / (2x^2 + 1 - 1*2/(2x^2 + 5 - 3*4/(2x^2 + 9 - ...)))
// At x >= 1 this converges in under a hundred steps.
fn ln_erfc_tail(x: f64) -> f64 {
    if x.is_infinite() {
        return f64::NEG_INFINITY;
    }
    let x2 = x * x;
    let b0 = 2.0 * x2 + 1.0;
    let mut f = b0;
    let mut c = b0;
    let mut d = 0.0;
    for i in 1..=MAX_ITERATIONS {
        let n = i as f64;
        let an = -(2.0 * n - 1.0) * (2.0 * n);
        let bn = b0 + 4.0 * n;
        d = bn + an * d;
        if d.abs() < LENTZ_TINY {
            d = LENTZ_TINY;
        }
        d = 1.0 / d;
        c = bn + an / c;
        if c.abs() < LENTZ_TINY {
            c = LENTZ_TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= CF_TOLERANCE {
            break;
        }
    }
    -x2 - LN_SQRT_PI + (2.0 * x / f).ln()
}

/// Standard normal density.
#[inline]
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z - LN_SQRT_2PI).exp()
}

/// Standard normal CDF `Φ(z)`.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// `ln Φ(z)`, accurate deep into the lower tail.
pub fn ln_normal_cdf(z: f64) -> f64 {
    ln_erfc(-z / std::f64::consts::SQRT_2) - std::f64::consts::LN_2
}

/// Upper tail `1 - Φ(z)`, computed without cancellation.
#[inline]
pub fn normal_sf(z: f64) -> f64 {
    normal_cdf(-z)
}

/// Standard normal quantile `Φ⁻¹(q)` for `0 < q < 1`.
///
/// Acklam's rational approximation, polished with one Halley step
/// against [`normal_cdf`].
pub fn normal_quantile(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!(
            "normal quantile requires q in the open interval (0, 1), got {q}"
        )));
    }
    if q == 0.5 {
        return Ok(0.0);
    }
    // Work in the lower half and reflect, so that tiny tail areas keep
    // their relative precision.
    if q > 0.5 {
        let upper = 1.0 - q;
        return Ok(-lower_half_quantile(upper));
    }
    Ok(lower_half_quantile(q))
}

fn lower_half_quantile(q: f64) -> f64 {
    let x = acklam(q);
    // Halley step; the residual is taken in log space in the far tail.
    let err = if q < 1e-300 {
        let ln_cdf = ln_normal_cdf(x);
        (ln_cdf - q.ln()).exp_m1() * q
    } else {
        normal_cdf(x) - q
    };
    let u = err / normal_pdf(x);
    if !u.is_finite() {
        return x;
    }
    x - u / (1.0 + 0.5 * x * u)
}

fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}
