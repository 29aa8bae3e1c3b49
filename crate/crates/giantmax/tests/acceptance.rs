//! Acceptance criteria 1 to 10, one PASS/FAIL line each. Exits nonzero if
//! any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use giantmax::core::dist::{DegreeDistribution, WeightDistribution};
use giantmax::core::optimizer::{
    edge_budget, mu_c, optimize_three_point, poisson_extinction, scan_lambda, DEFAULT_K_MAX,
    DEFAULT_LAMBDA_MAX,
};
use giantmax::core::{Distribution, GraphModel};
use giantmax::montecarlo::{self, ExperimentReport, ExperimentSpec};
use giantmax::suites::{run_suite, Suite};

const MC_N: usize = 100_000;
const MC_REPS: usize = 16;
const MC_SEED: u64 = 0;
const GAP: f64 = 0.01;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn simulate(model: GraphModel, distribution: Distribution, p: f64) -> ExperimentReport {
    let spec = ExperimentSpec {
        model,
        distribution,
        p,
        n: MC_N,
        replicates: MC_REPS,
        master_seed: MC_SEED,
    };
    montecarlo::run(&spec).expect("experiment runs")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = mu_c();
    let elapsed = start.elapsed();
    let residual = (2.0 * m - (m - 0.5).exp()).abs();
    let pass =
        (1.7560..=1.7570).contains(&m) && residual < 1e-10 && elapsed < Duration::from_millis(1);
    outcome(
        pass,
        format!("mu_c = {m:.14}, residual {residual:.1e}, {elapsed:?}"),
    )
}

fn criterion_2() -> Outcome {
    let m = mu_c();
    let mut pass = true;
    let mut parts = Vec::new();
    for mu in [0.8, 1.2, 1.5] {
        let r = scan_lambda(mu, DEFAULT_LAMBDA_MAX).expect("scan");
        let lambda = r.parameter;
        let stationarity = (2.0 * lambda * poisson_extinction(lambda) - 1.0).abs();
        let offset = (lambda - m).abs();
        pass &= stationarity < 1e-6 && offset < 1e-5;
        parts.push(format!(
            "mu {mu}: |2 l z - 1| {stationarity:.1e}, |l - mu_c| {offset:.1e}"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn suite_outcome(suite: Suite, trials: usize, seed: u64, budget: Duration) -> Outcome {
    let start = Instant::now();
    let r = run_suite(suite, trials, seed);
    let elapsed = start.elapsed();
    let pass = r.passed() && elapsed < budget;
    outcome(
        pass,
        format!(
            "{} checks, {} violations, worst excess {:.1e}, {elapsed:.2?}",
            r.checks, r.violations, r.worst_excess
        ),
    )
}

fn criterion_3() -> Outcome {
    suite_outcome(Suite::Theorem31, 1000, 0, Duration::from_secs(60))
}

/// `q` for masses `b` at `k`, `c` at `k + 1` and the rest at zero, with `z`
/// from Newton's method started at zero on `fbar(s) - s`.
fn grid_q(mu: f64, p: f64, k: usize, b: f64) -> Option<f64> {
    let kf = k as f64;
    let c = (mu - kf * b) / (kf + 1.0);
    let zero = 1.0 - b - c;
    if c < -1e-12 || zero < -1e-12 {
        return None;
    }
    let (c, zero) = (c.max(0.0), zero.max(0.0));
    // {0, 2} support without thinning is excluded.
    if p == 1.0 && ((k == 1 && b == 0.0) || (k == 2 && c.abs() < 1e-15)) {
        return None;
    }
    let ki = k as i32;
    let u = |s: f64| 1.0 - p + p * s;
    let fbar = |s: f64| (kf * b * u(s).powi(ki - 1) + (kf + 1.0) * c * u(s).powi(ki)) / mu;
    let dfbar = |s: f64| {
        p * (kf * (kf - 1.0) * b * u(s).powi(ki - 2) + (kf + 1.0) * kf * c * u(s).powi(ki - 1)) / mu
    };
    let z = if fbar(0.0) == 0.0 {
        0.0
    } else if dfbar(1.0) <= 1.0 + 1e-12 {
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
    Some(zero + b * u(z).powi(ki) + c * u(z).powi(ki + 1))
}

fn brute_force_q(mu: f64, p: f64, k_max: usize, points: usize) -> f64 {
    let k_min = ((mu.ceil() as usize).saturating_sub(1)).max(1);
    let mut best = f64::INFINITY;
    for k in k_min..=k_max {
        let b_max = (mu / k as f64).min(k as f64 + 1.0 - mu);
        if b_max < 0.0 {
            continue;
        }
        for j in 0..points {
            let b = b_max * j as f64 / (points - 1) as f64;
            if let Some(q) = grid_q(mu, p, k, b) {
                best = best.min(q);
            }
        }
    }
    best
}

const SPOT_CASES: [(f64, f64); 10] = [
    (3.0, 0.5),
    (1.5, 0.6),
    (1.0, 0.3),
    (2.0, 0.9),
    (2.5, 0.7),
    (4.0, 0.4),
    (1.2, 0.8),
    (5.0, 0.3),
    (0.8, 0.95),
    (3.5, 1.0),
];

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let suite = run_suite(Suite::Theorem41, 500, 0);
    let mut worst = 0.0f64;
    for (mu, p) in SPOT_CASES {
        let r = optimize_three_point(mu, p, DEFAULT_K_MAX).expect("search");
        let q = 1.0 - r.best_giant_fraction;
        worst = worst.max((q - brute_force_q(mu, p, DEFAULT_K_MAX, 10_000)).abs());
    }
    let elapsed = start.elapsed();
    let pass = suite.passed() && worst < 1e-8 && elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "{} checks, {} violations; brute-force spot gap {worst:.1e}; {elapsed:.2?}",
            suite.checks, suite.violations
        ),
    )
}

fn criterion_5() -> Outcome {
    suite_outcome(Suite::Crossing, 1000, 0, Duration::MAX)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let w = WeightDistribution::point(2.0).unwrap();
    let r = simulate(GraphModel::Poissonian, w.into(), 1.0);
    let elapsed = start.elapsed();
    let gap = (r.mean - 0.796812).abs();
    let second = r
        .outcomes
        .iter()
        .map(|o| o.second_fraction)
        .fold(0.0, f64::max);
    let pass = gap <= GAP && second < 0.01 && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "mean {:.6}, gap {gap:.1e}, max second {second:.1e}, {elapsed:.2?}",
            r.mean
        ),
    )
}

fn criterion_7() -> Outcome {
    let d = DegreeDistribution::constant(3).unwrap();
    let super_ = simulate(GraphModel::Configuration, d.clone().into(), 0.8);
    let sub = simulate(GraphModel::Configuration, d.into(), 0.3);
    let gap = (super_.mean - 0.984375).abs();
    let pass = gap <= GAP && sub.mean < 0.01;
    outcome(
        pass,
        format!(
            "p 0.8 mean {:.6} gap {gap:.1e}; p 0.3 mean {:.2e}",
            super_.mean, sub.mean
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let mut previous = 0.0;
    for eps in [0.05, 0.02, 0.01] {
        let r = edge_budget(1.5, eps).expect("edge budget");
        let exact = (r.giant_fraction - (0.75 - eps)).abs();
        let mc = simulate(
            GraphModel::Configuration,
            r.distribution.clone().into(),
            r.p,
        );
        let gap = (mc.mean - r.giant_fraction).abs();
        pass &=
            exact < 1e-12 && r.giant_fraction > previous && r.giant_fraction < 0.75 && gap <= GAP;
        previous = r.giant_fraction;
        parts.push(format!(
            "eps {eps}: giant {:.6}, mc gap {gap:.1e}",
            r.giant_fraction
        ));
    }
    let dense = edge_budget(2.5, 0.01).expect("edge budget");
    let mc = simulate(
        GraphModel::Configuration,
        dense.distribution.clone().into(),
        dense.p,
    );
    let smallest = mc
        .outcomes
        .iter()
        .map(|o| o.largest_fraction)
        .fold(1.0, f64::min);
    pass &= dense.giant_fraction == 1.0 && smallest > 0.99;
    parts.push(format!(
        "c 2.5: giant {}, min mc {smallest:.6}",
        dense.giant_fraction
    ));
    outcome(pass, parts.join("; "))
}

fn criterion_9() -> Outcome {
    suite_outcome(Suite::Identities, 100, 0, Duration::MAX)
}

fn cli_output(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_giantmax"))
        .args(args)
        .output()
        .expect("binary runs");
    out.stdout
}

fn criterion_10(dir: &Path) -> Outcome {
    let weights = dir.join("weights.json");
    let degrees = dir.join("degrees.json");
    std::fs::write(
        &weights,
        r#"{"type":"weight_atoms","atoms":[{"x":0.5,"p":0.5},{"x":3,"p":0.5}]}"#,
    )
    .unwrap();
    std::fs::write(&degrees, r#"{"type":"degree_pmf","pmf":[0.1,0.2,0.3,0.4]}"#).unwrap();
    let (w, d) = (weights.to_str().unwrap(), degrees.to_str().unwrap());
    let commands: Vec<Vec<&str>> = vec![
        vec!["solve", "--dist", w],
        vec!["solve", "--dist", d, "--p", "0.7"],
        vec!["optimize-weights", "--mu", "1.2"],
        vec!["optimize-degrees", "--mu", "2.5", "--p", "0.6"],
        vec![
            "simulate",
            "--model",
            "poissonian",
            "--dist",
            w,
            "--n",
            "5000",
            "--reps",
            "4",
            "--seed",
            "7",
        ],
        vec![
            "simulate",
            "--model",
            "configuration",
            "--dist",
            d,
            "--p",
            "0.8",
            "--n",
            "5000",
            "--reps",
            "4",
            "--seed",
            "7",
        ],
        vec!["verify", "crossing", "--trials", "50", "--seed", "3"],
        vec!["verify", "theorem31", "--trials", "50", "--seed", "3"],
        vec!["verify", "theorem41", "--trials", "10", "--seed", "3"],
        vec!["verify", "identities", "--trials", "10", "--seed", "3"],
        vec!["edge-budget", "--c", "1.5", "--epsilon", "0.02"],
    ];
    let mut identical = 0;
    for args in &commands {
        let first = cli_output(args);
        if !first.is_empty() && first == cli_output(args) {
            identical += 1;
        }
    }
    outcome(
        identical == commands.len(),
        format!(
            "{identical}/{} commands byte-identical across reruns",
            commands.len()
        ),
    )
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<(&str, Check)> = vec![
        ("critical mean", Box::new(criterion_1)),
        ("lambda-scan stationarity", Box::new(criterion_2)),
        ("weight-law dominance suite", Box::new(criterion_3)),
        ("three-point degree dominance", Box::new(criterion_4)),
        ("crossing suite", Box::new(criterion_5)),
        ("poissonian simulation", Box::new(criterion_6)),
        ("thinned configuration simulation", Box::new(criterion_7)),
        ("edge budget", Box::new(criterion_8)),
        ("identity suite", Box::new(criterion_9)),
        ("cli determinism", Box::new(|| criterion_10(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
