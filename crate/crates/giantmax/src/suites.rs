//! Randomized verification suites run by `giantmax verify`.
//!
//! Each trial draws from its own seeded stream, so a suite's outcome depends
//! only on `(trials, seed)`.

use giantmax_core::dist::{DegreeDistribution, WeightDistribution};
use giantmax_core::fixpoint::{solve_thinned, solve_weights};
use giantmax_core::optimizer::{
    optimal_weight, optimize_three_point, verify_crossing, DEFAULT_CROSSING_GRID, DEFAULT_K_MAX,
};
use giantmax_core::quad::integrate;
use giantmax_core::rng::{derive_seed, stream_rng, STREAM_SUITE};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const THEOREM31_MEANS: [f64; 5] = [0.8, 1.2, 1.5, 2.0, 3.0];
pub const THEOREM41_RETENTIONS: [f64; 3] = [0.3, 0.6, 0.9];
pub const WEIGHT_DOMINANCE_TOLERANCE: f64 = 1e-9;
pub const DEGREE_DOMINANCE_TOLERANCE: f64 = 1e-8;
pub const INTEGRAL_IDENTITY_TOLERANCE: f64 = 1e-8;
pub const THINNING_IDENTITY_TOLERANCE: f64 = 1e-12;
/// Largest atom location of random weight laws.
pub const WEIGHT_RANGE: f64 = 10.0;
const MAX_RECORDED_FAILURES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Mixed Poisson pgf stays below a Poisson pgf after touching it.
    Crossing,
    /// No weight law beats the closed-form optimum.
    Theorem31,
    /// No degree law beats the best three-point law.
    Theorem41,
    /// Integral and thinning identities of the generating functions.
    Identities,
}

impl Suite {
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Crossing | Suite::Theorem31 => 1000,
            Suite::Theorem41 => 500,
            Suite::Identities => 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    /// Individual comparisons made; a trial can make several.
    pub checks: usize,
    pub violations: usize,
    /// Largest amount by which a check exceeded its tolerance (0 when none).
    pub worst_excess: f64,
    /// Crossing trials where the two functions never met.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vacuous: Option<usize>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Default)]
struct Tally {
    checks: usize,
    violations: usize,
    worst_excess: f64,
    vacuous: usize,
    failures: Vec<String>,
}

impl Tally {
    /// Records `value <= limit`.
    fn check_le(&mut self, value: f64, limit: f64, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !(value <= limit) {
            self.violations += 1;
            let excess = value - limit;
            self.worst_excess = self.worst_excess.max(if excess.is_nan() {
                f64::INFINITY
            } else {
                excess
            });
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.violations += other.violations;
        self.worst_excess = self.worst_excess.max(other.worst_excess);
        self.vacuous += other.vacuous;
        self.failures.extend(other.failures);
        self.failures.truncate(MAX_RECORDED_FAILURES);
        self
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    stream_rng(derive_seed(seed, trial as u64), STREAM_SUITE)
}

/// Up to `max_atoms` atoms uniform on `[0, 10]` with random masses.
pub fn random_weight_law<R: Rng>(rng: &mut R, max_atoms: usize) -> WeightDistribution {
    let count = rng.gen_range(1..=max_atoms);
    let raw: Vec<(f64, f64)> = (0..count)
        .map(|_| (rng.gen_range(0.0..=WEIGHT_RANGE), rng.gen_range(0.01..1.0)))
        .collect();
    let total: f64 = raw.iter().map(|a| a.1).sum();
    WeightDistribution::new(raw.into_iter().map(|(x, p)| (x, p / total))).expect("valid random law")
}

/// A random law with at most six atoms in `[0, 10]` and mean exactly `mu`:
/// up to five random atoms, mixed with an atom at 0 or 10 to fix the mean.
pub fn random_weight_law_with_mean<R: Rng>(rng: &mut R, mu: f64) -> WeightDistribution {
    assert!(mu > 0.0 && mu < WEIGHT_RANGE);
    loop {
        let base = random_weight_law(rng, 5);
        let m = base.mean();
        if m == 0.0 {
            continue;
        }
        let (alpha, anchor) = if m >= mu {
            (mu / m, 0.0)
        } else {
            ((WEIGHT_RANGE - mu) / (WEIGHT_RANGE - m), WEIGHT_RANGE)
        };
        let atoms = base
            .atoms()
            .iter()
            .map(|&(x, p)| (x, alpha * p))
            .chain(std::iter::once((anchor, 1.0 - alpha)));
        if let Ok(law) = WeightDistribution::new(atoms) {
            return law;
        }
    }
}

/// Random degree pmf with support inside `{0, ..., 7}` and positive mean.
pub fn random_degree_law<R: Rng>(rng: &mut R) -> DegreeDistribution {
    loop {
        let max_degree = rng.gen_range(1..=7usize);
        let raw: Vec<f64> = (0..=max_degree)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    0.0
                } else {
                    rng.gen::<f64>()
                }
            })
            .collect();
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            continue;
        }
        if let Ok(d) = DegreeDistribution::new(raw.iter().map(|m| m / total).collect()) {
            if d.mean() > 0.0 {
                return d;
            }
        }
    }
}

fn crossing_trial(seed: u64, trial: usize) -> Tally {
    let mut rng = trial_rng(seed, trial);
    let mut tally = Tally::default();
    let x = loop {
        let x = random_weight_law(&mut rng, 6);
        if x.mean() > 0.0 {
            break x;
        }
    };
    let lambda = x.mean() * rng.gen_range(0.05..1.5);
    let report = verify_crossing(&x, lambda, DEFAULT_CROSSING_GRID);
    if report.is_vacuous() {
        tally.vacuous += 1;
    }
    tally.checks += 1;
    if !report.passed() {
        tally.violations += 1;
        tally.worst_excess = report.max_excess;
        tally.failures.push(format!(
            "trial {trial}: {} grid points above exp(-{lambda}(1-s)) by up to {:e}",
            report.violations, report.max_excess
        ));
    }
    tally
}

fn theorem31_trial(seed: u64, trial: usize) -> Tally {
    let mut rng = trial_rng(seed, trial);
    let mut tally = Tally::default();
    for mu in THEOREM31_MEANS {
        let law = random_weight_law_with_mean(&mut rng, mu);
        let giant = match solve_weights(&law, 1.0) {
            Ok(r) => r.giant_fraction,
            Err(e) => {
                tally.check_le(f64::NAN, 0.0, || format!("trial {trial}: {e}"));
                continue;
            }
        };
        let best = optimal_weight(mu)
            .expect("positive mean")
            .best_giant_fraction;
        tally.check_le(giant, best + WEIGHT_DOMINANCE_TOLERANCE, || {
            format!("trial {trial}: mu {mu}: giant {giant} above optimum {best}")
        });
    }
    tally
}

fn theorem41_trial(seed: u64, trial: usize) -> Tally {
    let mut rng = trial_rng(seed, trial);
    let mut tally = Tally::default();
    let d = random_degree_law(&mut rng);
    let mu = d.mean();
    let k_max = DEFAULT_K_MAX.max(mu.ceil() as usize);
    for p in THEOREM41_RETENTIONS {
        let q = solve_thinned(&d, p).expect("valid law").q;
        let best = optimize_three_point(mu, p, k_max).expect("feasible search");
        let q_best = 1.0 - best.best_giant_fraction;
        tally.check_le(q_best, q + DEGREE_DOMINANCE_TOLERANCE, || {
            format!(
                "trial {trial}: p {p}: pmf {:?} has q {q} below three-point {q_best}",
                d.pmf()
            )
        });
    }
    tally
}

fn identities_trial(seed: u64, trial: usize) -> Tally {
    let mut rng = trial_rng(seed, trial);
    let mut tally = Tally::default();
    let w = loop {
        let w = random_weight_law(&mut rng, 6);
        if w.mean() > 0.0 {
            break w;
        }
    };
    let d = random_degree_law(&mut rng);
    let p = rng.gen_range(0.01..=1.0);

    for (name, f, fbar, mean) in [
        (
            "weight",
            w.pgf(),
            w.size_biased_pgf().expect("positive mean"),
            w.mean(),
        ),
        (
            "degree",
            d.pgf(),
            d.size_biased_pgf().expect("positive mean"),
            d.mean(),
        ),
    ] {
        for i in 0..=20 {
            let s = i as f64 / 20.0;
            let tail = integrate(|x| fbar.eval(x).expect("in domain"), s, 1.0, 1e-13);
            let gap = (f.eval(s).expect("in domain") - (1.0 - mean * tail)).abs();
            tally.check_le(gap, INTEGRAL_IDENTITY_TOLERANCE, || {
                format!("trial {trial}: {name} integral identity off by {gap:e} at s = {s}")
            });
        }
    }

    let thinned = w.pgf().thin(p).expect("valid retention");
    let scaled = w.scaled(p).expect("valid retention").pgf();
    for i in 0..100 {
        let s = i as f64 / 99.0;
        let gap = (thinned.eval(s).expect("in domain") - scaled.eval(s).expect("in domain")).abs();
        tally.check_le(gap, THINNING_IDENTITY_TOLERANCE, || {
            format!("trial {trial}: thinning by {p} differs from scaling by {gap:e} at s = {s}")
        });
    }
    tally
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> SuiteReport {
    let trial = match suite {
        Suite::Crossing => crossing_trial,
        Suite::Theorem31 => theorem31_trial,
        Suite::Theorem41 => theorem41_trial,
        Suite::Identities => identities_trial,
    };
    let tallies: Vec<Tally> = (0..trials)
        .into_par_iter()
        .map(|i| trial(seed, i))
        .collect();
    let tally = tallies.into_iter().fold(Tally::default(), Tally::merge);
    SuiteReport {
        suite,
        trials,
        seed,
        checks: tally.checks,
        violations: tally.violations,
        worst_excess: tally.worst_excess,
        vacuous: (suite == Suite::Crossing).then_some(tally.vacuous),
        failures: tally.failures,
    }
}
