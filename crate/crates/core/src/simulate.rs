//! Monte Carlo checks of P-value validity.
//!
//! A valid P-value is uniform under the model used to compute it, so its
//! surprisal `-ln P` is Exponential(1): one nat on average, or
//! `log₂ e ≈ 1.443` bits. The rule "reject if `p ≤ α`" then rejects a
//! fraction `α` of the time. Exact P-values from discrete data are only
//! conservatively valid: `Pr(P ≤ α) ≤ α`, and the mean surprisal is at
//! most one nat.
//!
//! # Random numbers
//!
//! Draws come from ChaCha8 (`rand_chacha::ChaCha8Rng`). The key is
//! expanded from the 64-bit seed with `SeedableRng::seed_from_u64` and the
//! ChaCha stream id selects a substream. Replicates are processed in
//! blocks of [`BLOCK_SIZE`]; block `b` reads stream `stream + b`
//! (wrapping), starting at word zero. Blocks may run on any number of
//! threads. Their sufficient statistics are merged in block order, so a
//! summary depends only on `(seed, stream, n)` and never on the thread count.
//!
//! Uniform variates are `(⌊u64 / 2¹²⌋ + ½)·2⁻⁵²`, which is never 0 or 1.

use std::f64::consts::LOG2_E;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Replicates per RNG substream.
pub const BLOCK_SIZE: usize = 4096;

/// Below this many replicates the summary statistics are flagged as unreliable.
pub const MIN_RELIABLE_N: usize = 1000;

/// Minimum sample size for the Kolmogorov–Smirnov report.
pub const MIN_KS_SAMPLES: usize = 100;

/// Asymptotic 1% critical value of `√n · D_n`.
pub const KS_CRITICAL_1PCT: f64 = 1.63;

/// Width of the acceptance bands, in standard errors.
pub const BAND_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngSpec { seed, stream }
    }

    /// Generator for the given block of replicates.
    pub fn block_rng(&self, block: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream.wrapping_add(block));
        rng
    }
}

/// Uniform on the open interval (0, 1).
#[inline]
pub fn open_unit(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

/// Where null P-values come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum NullGenerator {
    /// Exactly valid: P ~ Uniform(0, 1).
    Uniform,
    /// Exact upper-tail P-value of a binomial count drawn under `theta0`.
    ExactBinomial { trials: u32, theta0: f64 },
}

/// Pre-tabulated exact binomial test under its own null.
#[derive(Debug, Clone)]
pub struct ExactBinomial {
    trials: u32,
    theta0: f64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
    upper_p: Vec<f64>,
}

impl ExactBinomial {
    pub fn new(trials: u32, theta0: f64) -> Result<Self> {
        if trials == 0 {
            return Err(domain("binomial trials must be at least 1"));
        }
        if !(theta0 > 0.0 && theta0 < 1.0) {
            return Err(domain(format!("theta0 must lie in (0, 1), got {theta0}")));
        }
        let n = trials as usize;
        let (ln_t, ln_1mt) = (theta0.ln(), (-theta0).ln_1p());
        let mut ln_choose = 0.0;
        let mut pmf = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k > 0 {
                ln_choose += ((n - k + 1) as f64 / k as f64).ln();
            }
            pmf.push((ln_choose + k as f64 * ln_t + (n - k) as f64 * ln_1mt).exp());
        }
        let mut cdf = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        for &m in &pmf {
            acc += m;
            cdf.push(acc);
        }
        // Upper tails summed from the top keep small tails exact.
        let mut upper_p = vec![0.0; n + 1];
        let mut tail = 0.0;
        for k in (0..=n).rev() {
            tail += pmf[k];
            upper_p[k] = tail.min(1.0);
        }
        upper_p[0] = 1.0;
        Ok(ExactBinomial {
            trials,
            theta0,
            pmf,
            cdf,
            upper_p,
        })
    }

    pub fn trials(&self) -> u32 {
        self.trials
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// `Pr(X = x)`.
    pub fn pmf(&self, x: u32) -> f64 {
        self.pmf.get(x as usize).copied().unwrap_or(0.0)
    }

    /// Exact one-sided P-value `Pr(X′ ≥ x)`.
    pub fn upper_tail_p(&self, x: u32) -> Result<f64> {
        self.upper_p
            .get(x as usize)
            .copied()
            .ok_or_else(|| domain(format!("x = {x} exceeds {} trials", self.trials)))
    }

    /// Exact `Pr(P ≤ α)` by enumeration of the sample space.
    pub fn rejection_probability(&self, alpha: f64) -> f64 {
        self.pmf
            .iter()
            .zip(&self.upper_p)
            .filter(|(_, &p)| p <= alpha)
            .map(|(&m, _)| m)
            .sum()
    }

    /// Exact `E[-ln P]`, in nats, by enumeration.
    pub fn mean_surprisal(&self) -> f64 {
        self.pmf
            .iter()
            .zip(&self.upper_p)
            .map(|(&m, &p)| -m * p.ln())
            .sum()
    }

    /// Draws a count by inverting the tabulated CDF.
    fn draw(&self, rng: &mut impl RngCore) -> usize {
        let u = open_unit(rng);
        self.cdf
            .partition_point(|&c| c < u)
            .min(self.trials as usize)
    }

    fn draw_p(&self, rng: &mut impl RngCore) -> f64 {
        self.upper_p[self.draw(rng)]
    }
}

enum Source {
    Uniform,
    Binomial(ExactBinomial),
}

impl Source {
    fn new(generator: NullGenerator) -> Result<Self> {
        Ok(match generator {
            NullGenerator::Uniform => Source::Uniform,
            NullGenerator::ExactBinomial { trials, theta0 } => {
                Source::Binomial(ExactBinomial::new(trials, theta0)?)
            }
        })
    }

    fn draw_p(&self, rng: &mut impl RngCore) -> f64 {
        match self {
            Source::Uniform => open_unit(rng),
            Source::Binomial(b) => b.draw_p(rng),
        }
    }
}

/// Rejection rate of "reject if `p ≤ α`" at one level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaRate {
    pub alpha: f64,
    pub rejection_rate: f64,
    /// `α + 3·√(α(1-α)/n)`.
    pub upper_band: f64,
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub generator: NullGenerator,
    pub rng: RngSpec,
    pub n: usize,
    pub mean_s_nats: f64,
    pub mean_s_bits: f64,
    /// Standard error of `mean_s_nats`.
    pub se_of_mean: f64,
    pub empirical_type1: Vec<AlphaRate>,
    /// Levels at which the rejection rate exceeds its upper band.
    pub dominance_violations: usize,
    /// True when `n` is below [`MIN_RELIABLE_N`].
    pub low_n: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EValueCheck {
    pub generator: NullGenerator,
    pub n: usize,
    /// Sample mean of `S_e = -ln P`, which should not exceed 1.
    pub mean_e_condition: f64,
    pub se: f64,
    /// Closed-form or enumerated `E[S_e]` under the generator.
    pub exact_expectation: f64,
    /// `mean_e_condition - 3·se ≤ 1`.
    pub pass: bool,
    pub low_n: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    Exponential1,
    Uniform01,
}

impl Reference {
    pub fn cdf(self, x: f64) -> f64 {
        match self {
            Reference::Exponential1 => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x).exp_m1()
                }
            }
            Reference::Uniform01 => x.clamp(0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsReport {
    pub n: usize,
    pub ks_statistic: f64,
    /// `1.63/√n`.
    pub critical_value: f64,
    pub pass: bool,
}

#[derive(Clone, Default)]
struct Tally {
    n: usize,
    sum: f64,
    sum_sq: f64,
    rejections: Vec<u64>,
}

impl Tally {
    fn merge(&mut self, other: &Tally) {
        self.n += other.n;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        for (a, b) in self.rejections.iter_mut().zip(&other.rejections) {
            *a += b;
        }
    }
}

fn check_alphas(alphas: &[f64]) -> Result<()> {
    match alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
        Some(bad) => Err(domain(format!(
            "alpha levels must lie in (0, 1), got {bad}"
        ))),
        None => Ok(()),
    }
}

fn block_count(n: usize) -> usize {
    n.div_ceil(BLOCK_SIZE)
}

fn block_len(n: usize, block: usize) -> usize {
    (n - block * BLOCK_SIZE).min(BLOCK_SIZE)
}

/// Runs `work` over every block and returns the results in block order.
fn for_each_block<T, F>(n: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = std::thread::available_parallelism()
        .map(|w| w.get())
        .unwrap_or(1);
    for_each_block_on(n, workers, work)
}

fn for_each_block_on<T, F>(n: usize, workers: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let blocks = block_count(n);
    let workers = workers.min(blocks);
    if workers <= 1 {
        return (0..blocks).map(&work).collect();
    }
    let mut slots: Vec<Option<T>> = (0..blocks).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let work = &work;
                scope.spawn(move || {
                    (w..blocks)
                        .step_by(workers)
                        .map(|b| (b, work(b)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (b, value) in handle.join().expect("simulation worker panicked") {
                slots[b] = Some(value);
            }
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every block filled"))
        .collect()
}

fn tally(n: usize, rng: RngSpec, source: &Source, alphas: &[f64]) -> Tally {
    let parts = for_each_block(n, |b| {
        let mut r = rng.block_rng(b as u64);
        let mut t = Tally {
            rejections: vec![0; alphas.len()],
            ..Tally::default()
        };
        for _ in 0..block_len(n, b) {
            let p = source.draw_p(&mut r);
            let s = -p.ln();
            t.n += 1;
            t.sum += s;
            t.sum_sq += s * s;
            for (count, &a) in t.rejections.iter_mut().zip(alphas) {
                if p <= a {
                    *count += 1;
                }
            }
        }
        t
    });
    let mut total = Tally {
        rejections: vec![0; alphas.len()],
        ..Tally::default()
    };
    for part in &parts {
        total.merge(part);
    }
    total
}

fn mean_and_se(t: &Tally) -> (f64, f64) {
    let n = t.n as f64;
    let mean = t.sum / n;
    if t.n < 2 {
        return (mean, 0.0);
    }
    let var = ((t.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, (var / n).sqrt())
}

fn summarize(
    generator: NullGenerator,
    rng: RngSpec,
    alphas: &[f64],
    t: Tally,
) -> SimulationSummary {
    let n = t.n as f64;
    let (mean_s_nats, se_of_mean) = mean_and_se(&t);
    let empirical_type1: Vec<AlphaRate> = alphas
        .iter()
        .zip(&t.rejections)
        .map(|(&alpha, &count)| {
            let rejection_rate = count as f64 / n;
            let upper_band = alpha + BAND_SIGMAS * (alpha * (1.0 - alpha) / n).sqrt();
            AlphaRate {
                alpha,
                rejection_rate,
                upper_band,
                violation: rejection_rate > upper_band,
            }
        })
        .collect();
    SimulationSummary {
        generator,
        rng,
        n: t.n,
        mean_s_nats,
        mean_s_bits: mean_s_nats * LOG2_E,
        se_of_mean,
        dominance_violations: empirical_type1.iter().filter(|r| r.violation).count(),
        empirical_type1,
        low_n: t.n < MIN_RELIABLE_N,
    }
}

/// Simulates `n` null P-values from `generator` and summarizes their
/// surprisal and rejection rates.
pub fn simulate(
    n: usize,
    rng: RngSpec,
    alphas: &[f64],
    generator: NullGenerator,
) -> Result<SimulationSummary> {
    if n == 0 {
        return Err(domain("replicate count n must be at least 1"));
    }
    check_alphas(alphas)?;
    let source = Source::new(generator)?;
    let t = tally(n, rng, &source, alphas);
    Ok(summarize(generator, rng, alphas, t))
}

/// Draws `n` uniform P-values and summarizes them.
pub fn simulate_uniform_p(n: usize, rng: RngSpec, alphas: &[f64]) -> Result<SimulationSummary> {
    simulate(n, rng, alphas, NullGenerator::Uniform)
}

/// Draws binomial counts under `theta0` and tests each with the exact
/// upper-tail P-value, checking conservative validity at every `α`.
pub fn simulate_exact_binomial(
    n_reps: usize,
    trials: u32,
    theta0: f64,
    rng: RngSpec,
    alphas: &[f64],
) -> Result<SimulationSummary> {
    simulate(
        n_reps,
        rng,
        alphas,
        NullGenerator::ExactBinomial { trials, theta0 },
    )
}

/// The P-values behind [`simulate`], in replicate order.
pub fn null_p_values(n: usize, rng: RngSpec, generator: NullGenerator) -> Result<Vec<f64>> {
    let source = Source::new(generator)?;
    let blocks = for_each_block(n, |b| {
        let mut r = rng.block_rng(b as u64);
        (0..block_len(n, b))
            .map(|_| source.draw_p(&mut r))
            .collect::<Vec<_>>()
    });
    Ok(blocks.concat())
}

/// Checks `E[-ln P] ≤ 1` under the generator.
pub fn evalue_check(n: usize, rng: RngSpec, generator: NullGenerator) -> Result<EValueCheck> {
    if n == 0 {
        return Err(domain("replicate count n must be at least 1"));
    }
    let source = Source::new(generator)?;
    let exact_expectation = match &source {
        // -ln U ~ Exponential(1)
        Source::Uniform => 1.0,
        Source::Binomial(b) => b.mean_surprisal(),
    };
    let t = tally(n, rng, &source, &[]);
    let (mean, se) = mean_and_se(&t);
    Ok(EValueCheck {
        generator,
        n,
        mean_e_condition: mean,
        se,
        exact_expectation,
        pass: mean - BAND_SIGMAS * se <= 1.0,
        low_n: n < MIN_RELIABLE_N,
    })
}

/// One-sample Kolmogorov–Smirnov test against a fixed reference CDF,
/// passing at the asymptotic 1% level.
pub fn distribution_report(samples: &[f64], reference: Reference) -> Result<KsReport> {
    if samples.len() < MIN_KS_SAMPLES {
        return Err(domain(format!(
            "Kolmogorov-Smirnov report needs at least {MIN_KS_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(domain("samples contain NaN"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = reference.cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max);
    let critical_value = KS_CRITICAL_1PCT / n.sqrt();
    Ok(KsReport {
        n: sorted.len(),
        ks_statistic: d,
        critical_value,
        pass: d < critical_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use std::f64::consts::LN_2;

    const ALPHAS: [f64; 4] = [0.01, 0.05, 0.1, 0.5];

    #[test]
    fn uniform_draws_stay_inside_open_interval() {
        struct Const(u64);
        impl RngCore for Const {
            fn next_u32(&mut self) -> u32 {
                self.0 as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0
            }
            fn fill_bytes(&mut self, dst: &mut [u8]) {
                dst.fill(0)
            }
        }
        assert!(open_unit(&mut Const(0)) > 0.0);
        assert!(open_unit(&mut Const(u64::MAX)) < 1.0);
    }

    #[test]
    fn block_streams_differ() {
        let spec = RngSpec::new(7, 0);
        let a = spec.block_rng(0).next_u64();
        let b = spec.block_rng(1).next_u64();
        assert_ne!(a, b);
        assert_eq!(a, RngSpec::new(7, 0).block_rng(0).next_u64());
        assert_eq!(RngSpec::new(7, 1).block_rng(0).next_u64(), b);
    }

    #[test]
    fn binomial_tables() {
        let b = ExactBinomial::new(10, 0.5).unwrap();
        assert!((b.upper_tail_p(10).unwrap() - 1.0 / 1024.0).abs() < 1e-16);
        assert!((b.upper_tail_p(9).unwrap() - 11.0 / 1024.0).abs() < 1e-15);
        assert_eq!(b.upper_tail_p(0).unwrap(), 1.0);
        assert!(b.upper_tail_p(11).is_err());
        assert!((b.rejection_probability(0.05) - 11.0 / 1024.0).abs() < 1e-15);

        let coin = ExactBinomial::new(1, 0.5).unwrap();
        assert_eq!(coin.upper_tail_p(1).unwrap(), 0.5);
        assert_eq!(coin.upper_tail_p(0).unwrap(), 1.0);
        assert_eq!(coin.rejection_probability(0.05), 0.0);
        assert!((coin.mean_surprisal() - 0.5 * LN_2).abs() < 1e-16);

        assert!(ExactBinomial::new(0, 0.5).is_err());
        assert!(ExactBinomial::new(5, 0.0).is_err());
        assert!(ExactBinomial::new(5, 1.0).is_err());
    }

    #[test]
    fn uniform_mean_and_rates() {
        let s = simulate_uniform_p(100_000, RngSpec::new(42, 0), &ALPHAS).unwrap();
        let tol = 3.0 / (s.n as f64).sqrt();
        assert!((s.mean_s_nats - 1.0).abs() < tol, "{}", s.mean_s_nats);
        assert!(((s.mean_s_bits / s.mean_s_nats) - LOG2_E).abs() < 1e-12);
        for r in &s.empirical_type1 {
            let band = 3.0 * (r.alpha * (1.0 - r.alpha) / s.n as f64).sqrt();
            assert!(
                (r.rejection_rate - r.alpha).abs() < band,
                "alpha={}",
                r.alpha
            );
        }
        assert_eq!(s.dominance_violations, 0);
        assert!(!s.low_n);
    }

    #[test]
    fn single_replicate_is_flagged() {
        let s = simulate_uniform_p(1, RngSpec::new(1, 0), &[0.05]).unwrap();
        assert_eq!(s.n, 1);
        assert!(s.low_n);
        assert_eq!(s.se_of_mean, 0.0);
    }

    #[test]
    fn argument_errors() {
        assert!(simulate_uniform_p(0, RngSpec::new(1, 0), &[0.05]).is_err());
        assert!(simulate_uniform_p(10, RngSpec::new(1, 0), &[0.0]).is_err());
        assert!(simulate_uniform_p(10, RngSpec::new(1, 0), &[1.0]).is_err());
        assert!(simulate_exact_binomial(10, 0, 0.5, RngSpec::new(1, 0), &[0.05]).is_err());
        assert!(simulate_exact_binomial(10, 3, 1.5, RngSpec::new(1, 0), &[0.05]).is_err());
    }

    #[test]
    fn deterministic_across_runs() {
        let a = simulate_uniform_p(20_000, RngSpec::new(9, 3), &ALPHAS).unwrap();
        let b = simulate_uniform_p(20_000, RngSpec::new(9, 3), &ALPHAS).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mean_s_nats.to_bits(), b.mean_s_nats.to_bits());
        let c = simulate_uniform_p(20_000, RngSpec::new(10, 3), &ALPHAS).unwrap();
        assert_ne!(a.mean_s_nats, c.mean_s_nats);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let spec = RngSpec::new(21, 4);
        let n = 5 * BLOCK_SIZE + 17;
        let draw = |b: usize| {
            let mut r = spec.block_rng(b as u64);
            (0..block_len(n, b))
                .map(|_| open_unit(&mut r))
                .collect::<Vec<_>>()
        };
        let serial = for_each_block_on(n, 1, draw).concat();
        for workers in [2, 3, 8] {
            assert_eq!(for_each_block_on(n, workers, draw).concat(), serial);
        }
        assert_eq!(serial.len(), n);
    }

    #[test]
    fn p_values_match_summary() {
        let spec = RngSpec::new(5, 0);
        let ps = null_p_values(10_000, spec, NullGenerator::Uniform).unwrap();
        let s = simulate_uniform_p(10_000, spec, &[0.05]).unwrap();
        let rejections = ps.iter().filter(|&&p| p <= 0.05).count();
        assert_eq!(
            rejections as f64 / 10_000.0,
            s.empirical_type1[0].rejection_rate
        );
    }

    #[test]
    fn binomial_single_trial() {
        let s = simulate_exact_binomial(5_000, 1, 0.5, RngSpec::new(3, 0), &[0.05, 0.5]).unwrap();
        assert_eq!(s.empirical_type1[0].rejection_rate, 0.0);
        assert_eq!(s.dominance_violations, 0);
    }

    #[test]
    fn evalue_uniform_and_binomial() {
        let e = evalue_check(100_000, RngSpec::new(11, 0), NullGenerator::Uniform).unwrap();
        assert_eq!(e.exact_expectation, 1.0);
        assert!((e.mean_e_condition - 1.0).abs() < 3.0 * e.se);
        assert!(e.pass);

        let g = NullGenerator::ExactBinomial {
            trials: 1,
            theta0: 0.5,
        };
        let e = evalue_check(100_000, RngSpec::new(11, 0), g).unwrap();
        assert!((e.exact_expectation - 0.346_573_590_279_972_6).abs() < 1e-15);
        assert!((e.mean_e_condition - e.exact_expectation).abs() < 3.0 * e.se);
        assert!(e.pass);

        let small = evalue_check(50, RngSpec::new(11, 0), NullGenerator::Uniform).unwrap();
        assert!(small.low_n);
    }

    #[test]
    fn ks_perfect_fit() {
        let n = 1000;
        let samples: Vec<f64> = (1..=n)
            .map(|i| -(1.0 - (i as f64 - 0.5) / n as f64).ln())
            .collect();
        let r = distribution_report(&samples, Reference::Exponential1).unwrap();
        assert!(r.ks_statistic <= 0.5 / n as f64 + 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn ks_rejects_mismatch() {
        let u = null_p_values(10_000, RngSpec::new(2, 0), NullGenerator::Uniform).unwrap();
        assert!(
            !distribution_report(&u, Reference::Exponential1)
                .unwrap()
                .pass
        );
        assert!(distribution_report(&u, Reference::Uniform01).unwrap().pass);
    }

    #[test]
    fn ks_size_contract() {
        let err = distribution_report(&[0.5; 99], Reference::Uniform01).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("at least 100")));
        assert!(distribution_report(&[f64::NAN; 100], Reference::Uniform01).is_err());
    }
}
