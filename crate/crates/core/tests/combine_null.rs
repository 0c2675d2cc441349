//! Noise-nat accounting of the S-summation test under uniform nulls.

use svalue::combine::s_summation_from_nats;
use svalue::simulate::{null_p_values, NullGenerator, RngSpec};

struct Moments {
    n: f64,
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn new() -> Self {
        Moments {
            n: 0.0,
            sum: 0.0,
            sum_sq: 0.0,
        }
    }

    fn push(&mut self, x: f64) {
        self.n += 1.0;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn mean(&self) -> f64 {
        self.sum / self.n
    }

    fn se(&self) -> f64 {
        let m = self.mean();
        ((self.sum_sq - self.n * m * m) / (self.n - 1.0) / self.n).sqrt()
    }

    fn within(&self, target: f64, sigmas: f64) -> bool {
        (self.mean() - target).abs() <= sigmas * self.se()
    }
}

fn run(k: usize, replicates: usize, seed: u64) -> (Moments, Moments, Moments) {
    let ps = null_p_values(
        k * replicates,
        RngSpec::new(seed, 0),
        NullGenerator::Uniform,
    )
    .unwrap();
    let (mut plus, mut summary, mut shrink) = (Moments::new(), Moments::new(), Moments::new());
    for chunk in ps.chunks_exact(k) {
        let r = s_summation_from_nats(chunk.iter().map(|p| -p.ln()).collect()).unwrap();
        plus.push(r.s_plus.value());
        summary.push(r.s_summary.value());
        shrink.push(r.shrinkage_nats);
    }
    (plus, summary, shrink)
}

#[test]
fn noise_nats_and_shrinkage() {
    for (k, seed) in [(1, 101), (2, 102), (3, 103), (5, 105), (10, 110)] {
        let (plus, summary, shrink) = run(k, 50_000, seed);
        assert!(
            plus.within(k as f64, 3.0),
            "K={k}: mean s_plus {}",
            plus.mean()
        );
        assert!(
            summary.within(1.0, 3.0),
            "K={k}: mean s_summary {}",
            summary.mean()
        );
        if k > 1 {
            assert!(
                shrink.within(k as f64 - 1.0, 3.0),
                "K={k}: mean shrinkage {}",
                shrink.mean()
            );
        }
    }
}

#[test]
fn summary_p_is_uniform_under_null() {
    // The combined P-value of valid inputs is itself valid.
    let k = 4;
    let ps = null_p_values(k * 20_000, RngSpec::new(77, 0), NullGenerator::Uniform).unwrap();
    let summaries: Vec<f64> = ps
        .chunks_exact(k)
        .map(|c| {
            s_summation_from_nats(c.iter().map(|p| -p.ln()).collect())
                .unwrap()
                .p_summary
        })
        .collect();
    let report =
        svalue::simulate::distribution_report(&summaries, svalue::simulate::Reference::Uniform01)
            .unwrap();
    assert!(report.pass, "D = {}", report.ks_statistic);
}
