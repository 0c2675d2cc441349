//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's numerical kernels.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `e^{-x/2} Σ_{j < df/2} (x/2)^j / j!`, the χ² survival for even df.
pub fn even_df_survival(df: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..df / 2 {
        term *= half / f64::from(j);
        sum += term;
    }
    (-half).exp() * sum
}

/// Γ(k/2) for odd k, from Γ(1/2) = √π and the recurrence.
fn gamma_half_odd(k: u32) -> f64 {
    let mut g = PI.sqrt();
    let mut a = 0.5;
    while a < f64::from(k) / 2.0 {
        g *= a;
        a += 1.0;
    }
    g
}

pub fn chisq_density(df: u32, t: f64) -> f64 {
    let k = f64::from(df);
    t.powf(k / 2.0 - 1.0) * (-t / 2.0).exp() / (2f64.powf(k / 2.0) * gamma_half_odd(df))
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, depth)
}

/// Φ(z) as 1/2 plus the integral of the density from 0 to z.
pub fn normal_cdf_by_quadrature(z: f64) -> f64 {
    let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
    0.5 + adaptive_simpson(&pdf, 0.0, z, 1e-13, 50)
}

/// `Pr(P ≤ α)` for the exact upper-tail binomial(trials, 1/2) test, by
/// enumerating every outcome with integer arithmetic.
pub fn fair_coin_rejection_probability(trials: u32, alpha: f64) -> f64 {
    let n = u64::from(trials);
    let total = 1u128 << n;
    let choose = |k: u64| -> u128 {
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * u128::from(n - i) / u128::from(i + 1);
        }
        c
    };
    let mut rejecting: u128 = 0;
    for x in 0..=n {
        let tail: u128 = (x..=n).map(choose).sum();
        if (tail as f64) / (total as f64) <= alpha {
            rejecting += choose(x);
        }
    }
    rejecting as f64 / total as f64
}
