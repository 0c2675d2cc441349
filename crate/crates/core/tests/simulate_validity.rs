//! Null-distribution checks for the simulation harness at full size.

use proptest::prelude::*;
use svalue::simulate::{
    distribution_report, null_p_values, simulate_exact_binomial, simulate_uniform_p, ExactBinomial,
    NullGenerator, Reference, RngSpec,
};

#[test]
fn uniform_rates_within_three_se() {
    let n = 100_000;
    let alphas = [0.01, 0.05, 0.1, 0.5];
    let s = simulate_uniform_p(n, RngSpec::new(11, 0), &alphas).unwrap();
    for rate in &s.empirical_type1 {
        let se = (rate.alpha * (1.0 - rate.alpha) / n as f64).sqrt();
        assert!(
            (rate.rejection_rate - rate.alpha).abs() < 3.0 * se,
            "α = {}: {}",
            rate.alpha,
            rate.rejection_rate
        );
    }
    assert!((s.mean_s_bits / s.mean_s_nats - std::f64::consts::LOG2_E).abs() < 1e-12);
}

#[test]
fn surprisal_of_uniform_is_exponential() {
    let ps = null_p_values(10_000, RngSpec::new(12, 0), NullGenerator::Uniform).unwrap();
    let s: Vec<f64> = ps.iter().map(|p| -p.ln()).collect();
    let report = distribution_report(&s, Reference::Exponential1).unwrap();
    assert!(
        report.pass,
        "D = {} vs {}",
        report.ks_statistic, report.critical_value
    );
}

#[test]
fn exact_binomial_is_conservative() {
    let alphas = [0.001, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 0.9];
    for trials in [1, 5, 10, 50] {
        let s = simulate_exact_binomial(
            100_000,
            trials,
            0.5,
            RngSpec::new(13, u64::from(trials)),
            &alphas,
        )
        .unwrap();
        assert_eq!(s.dominance_violations, 0, "trials = {trials}");
        assert!(s.mean_s_nats < 1.0, "trials = {trials}");
    }
}

proptest! {
    #[test]
    fn exact_rejection_never_exceeds_alpha(trials in 1u32..80, theta0 in 0.01f64..0.99, alpha in 1e-4f64..0.999) {
        let test = ExactBinomial::new(trials, theta0).unwrap();
        prop_assert!(test.rejection_probability(alpha) <= alpha + 1e-12);
    }
}
