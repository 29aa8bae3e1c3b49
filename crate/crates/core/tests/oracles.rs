//! Independent oracles for the frozen reference values: plain fixed-point
//! iteration, Newton from zero, bisection on the defining equation, and a
//! brute-force grid for the three-point degree search.

use giantmax_core::dist::{DegreeDistribution, WeightDistribution};
use giantmax_core::fixpoint::{smallest_root, solve_thinned, solve_weights};
use giantmax_core::optimizer::{mu_c, optimal_weight, optimize_three_point, two_point_q};
use giantmax_core::Distribution;

fn iterate_to_fixed_point(f: impl Fn(f64) -> f64) -> f64 {
    let mut s = 0.0;
    loop {
        let next = f(s);
        if (next - s).abs() < 1e-14 {
            return next;
        }
        s = next;
    }
}

#[test]
fn poisson_two_extinction() {
    let oracle = iterate_to_fixed_point(|s| (-2.0 * (1.0 - s)).exp());
    assert!((oracle - 0.203_188).abs() < 1e-6);
    let fbar = WeightDistribution::point(2.0).unwrap().pgf();
    assert!((smallest_root(&fbar).unwrap() - oracle).abs() < 1e-12);
    let r = solve_weights(&WeightDistribution::point(2.0).unwrap(), 1.0).unwrap();
    assert!((r.giant_fraction - (1.0 - oracle)).abs() < 1e-12);
}

#[test]
fn thinned_constant_three_quadratic() {
    // (0.2 + 0.8 s)^2 = s  <=>  0.64 s^2 - 0.68 s + 0.04 = 0.
    let z = (0.68 - (0.68f64 * 0.68 - 4.0 * 0.64 * 0.04).sqrt()) / 1.28;
    assert!((z - 0.0625).abs() < 1e-15);
    let r = solve_thinned(&DegreeDistribution::constant(3).unwrap(), 0.8).unwrap();
    assert!((r.z - z).abs() < 1e-12);
    assert!((r.giant_fraction - (1.0 - (0.2f64 + 0.8 * z).powi(3))).abs() < 1e-12);
}

#[test]
fn critical_mean_by_independent_bisection() {
    let h = |x: f64| (x - 0.5).exp() - 2.0 * x;
    let (mut lo, mut hi) = (1.1f64, 10.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            hi = mid
        } else {
            lo = mid
        }
    }
    assert!((mu_c() - lo).abs() < 1e-14);
    assert!((mu_c() - 1.756).abs() < 5e-4);
}

#[test]
fn optimal_weight_at_unit_mean() {
    let m = mu_c();
    let expected = (1.0 / m) * (1.0 - 1.0 / (2.0 * m));
    let r = optimal_weight(1.0).unwrap();
    assert!((r.best_giant_fraction - expected).abs() < 1e-12);
    assert!((r.best_giant_fraction - 0.4073).abs() < 1e-4);
}

#[test]
fn two_point_oracle() {
    let z = iterate_to_fixed_point(|s| (-2.0 * (1.0 - s)).exp());
    let q = 1.0 - 0.75 * (1.0 - z);
    assert!((two_point_q(1.5, 2.0).unwrap() - q).abs() < 1e-12);
    assert!((q - 0.402_392).abs() < 2e-6);
}

/// `q_{D,p}` for masses `b` at `k`, `c` at `k+1`, rest at zero, with `z`
/// located by Newton's method from zero.
pub fn brute_q(mu: f64, p: f64, k: usize, b: f64) -> Option<f64> {
    let kf = k as f64;
    let c = (mu - kf * b) / (kf + 1.0);
    let zero = 1.0 - b - c;
    if c < -1e-12 || zero < -1e-12 {
        return None;
    }
    let (c, zero) = (c.max(0.0), zero.max(0.0));
    if p == 1.0 && ((k == 1 && b == 0.0) || (k == 2 && c.abs() < 1e-15)) {
        return None;
    }
    let u = |s: f64| 1.0 - p + p * s;
    let fbar =
        |s: f64| (kf * b * u(s).powi(k as i32 - 1) + (kf + 1.0) * c * u(s).powi(k as i32)) / mu;
    let dfbar = |s: f64| {
        p * (kf * (kf - 1.0) * b * u(s).powi(k as i32 - 2)
            + (kf + 1.0) * kf * c * u(s).powi(k as i32 - 1))
            / mu
    };
    let mean = dfbar(1.0);
    let z = if fbar(0.0) == 0.0 {
        0.0
    } else if mean <= 1.0 + 1e-12 {
        1.0
    } else {
        let mut s = 0.0f64;
        for _ in 0..500 {
            let next = s - (fbar(s) - s) / (dfbar(s) - 1.0);
            if next <= s || next.is_nan() {
                break;
            }
            s = next;
        }
        s
    };
    Some(zero + b * u(z).powi(k as i32) + c * u(z).powi(k as i32 + 1))
}

/// Best `q` over `points` equispaced masses for every `k`.
pub fn brute_force(mu: f64, p: f64, k_max: usize, points: usize) -> f64 {
    let k_min = ((mu.ceil() as usize).saturating_sub(1)).max(1);
    let mut best = f64::INFINITY;
    for k in k_min..=k_max {
        let b_max = (mu / k as f64).min(k as f64 + 1.0 - mu);
        if b_max < 0.0 {
            continue;
        }
        for j in 0..points {
            let b = b_max * j as f64 / (points - 1) as f64;
            if let Some(q) = brute_q(mu, p, k, b) {
                best = best.min(q);
            }
        }
    }
    best
}

#[test]
fn three_point_matches_brute_force_grid() {
    let r = optimize_three_point(3.0, 0.5, 100).unwrap();
    let brute = brute_force(3.0, 0.5, 100, 10_000);
    let q = 1.0 - r.best_giant_fraction;
    assert!(q <= brute + 1e-12, "optimizer {q} worse than grid {brute}");
    assert!((q - brute).abs() < 1e-8, "optimizer {q} grid {brute}");
    let Distribution::Degree(d) = &r.best else {
        panic!()
    };
    let k = r.k.unwrap();
    assert!(d
        .pmf()
        .iter()
        .enumerate()
        .all(|(i, &m)| m == 0.0 || i == 0 || i == k || i == k + 1));
}
