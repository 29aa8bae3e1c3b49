//! The `giantmax` command line.
//!
//! Exit codes: 0 ok, 1 property violation, 2 usage or parse error, 3 domain
//! error, 4 resource guard.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use giantmax_core::fixpoint::solve_distribution;
use giantmax_core::optimizer::{
    edge_budget, mu_c, optimal_weight, optimize_three_point, scan_lambda, EdgeBudgetRegime,
    OptimizationResult, SearchWarning, DEFAULT_K_MAX, DEFAULT_LAMBDA_MAX,
};
use giantmax_core::{Distribution, GraphModel};
use serde_json::{json, Value};

use crate::format::{self, DistributionRecord, MACHINE_DIGITS, TABLE_DIGITS};
use crate::montecarlo::{self, ExperimentSpec};
use crate::suites::{self, Suite};
use crate::{Error, Result};

pub const THREADS_ENV: &str = "GIANTMAX_THREADS";
pub const DEFAULT_SEED: u64 = 0;
/// Second-largest component threshold reported by `simulate`.
pub const SECOND_COMPONENT_THRESHOLD: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(
    name = "giantmax",
    version,
    about = "Giant-component sizes of random graphs: theory, optima and simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Human-readable key/value lines.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Poissonian,
    Configuration,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extinction probability z, non-giant fraction q and giant fraction 1-q.
    Solve {
        #[arg(long)]
        dist: PathBuf,
        /// Edge retention probability.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal Poissonian weight law for a given mean.
    OptimizeWeights {
        #[arg(long)]
        mu: f64,
        /// Upper end of the numerical lambda scan [default: max(50, 2 mu)].
        #[arg(long)]
        lambda_max: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Best degree law on {0, k, k+1} for a given mean and retention.
    OptimizeDegrees {
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Replicated graph simulation compared with the fixed-point limit.
    Simulate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        dist: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        reps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Randomized property suite; exits 1 on any violation.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Largest giant for a fixed expected number of edges c n / 2.
    EdgeBudget {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// A command's result: the full JSON document, a flat record for CSV and
/// tables, and optionally a row set that replaces the record in CSV.
struct Output {
    json: Value,
    record: Vec<(&'static str, Value)>,
    rows: Option<(Vec<&'static str>, Vec<Vec<Value>>)>,
    exit_code: i32,
}

impl Output {
    fn new(json: Value, record: Vec<(&'static str, Value)>) -> Self {
        Output {
            json,
            record,
            rows: None,
            exit_code: 0,
        }
    }

    fn write<W: Write>(mut self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Json => {
                format::round_json(&mut self.json, MACHINE_DIGITS);
                let text = serde_json::to_string_pretty(&self.json)?;
                writeln!(out, "{text}").map_err(Error::Output)?;
            }
            Format::Csv => {
                let (header, rows) = self.rows.unwrap_or_else(|| {
                    let (keys, values) = self.record.into_iter().unzip();
                    (keys, vec![values])
                });
                let mut writer = csv::Writer::from_writer(&mut out);
                writer.write_record(&header)?;
                for row in rows {
                    writer.write_record(
                        row.iter().map(|v| format::render_scalar(v, MACHINE_DIGITS)),
                    )?;
                }
                writer.flush().map_err(Error::Output)?;
            }
            Format::Table => {
                let width = self.record.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (key, value) in &self.record {
                    let text = format::render_scalar(value, TABLE_DIGITS);
                    writeln!(out, "{key:<width$}  {text}").map_err(Error::Output)?;
                }
            }
        }
        Ok(())
    }
}

fn model_name(d: &Distribution) -> &'static str {
    match d {
        Distribution::Weight(_) => "poissonian",
        Distribution::Degree(_) => "configuration",
    }
}

fn cmd_solve(dist: &Path, p: f64) -> Result<Output> {
    let distribution = format::read_distribution(dist)?;
    let r = solve_distribution(&distribution, p)?;
    let degenerate = r.degeneracy.map(|d| d.to_string());
    if let Some(msg) = &degenerate {
        eprintln!("warning: {msg}");
    }
    let json = json!({
        "model": model_name(&distribution),
        "distribution": DistributionRecord::from(&distribution),
        "p": p,
        "z": r.z,
        "q": r.q,
        "giant_fraction": r.giant_fraction,
        "offspring_mean": r.offspring_mean,
        "method": r.method.as_str(),
        "iterations": r.iterations,
        "residual": r.residual,
        "degenerate": degenerate,
    });
    let record = vec![
        ("model", json!(model_name(&distribution))),
        ("p", json!(p)),
        ("z", json!(r.z)),
        ("q", json!(r.q)),
        ("giant_fraction", json!(r.giant_fraction)),
        ("offspring_mean", json!(r.offspring_mean)),
        ("method", json!(r.method.as_str())),
        ("iterations", json!(r.iterations)),
        ("residual", json!(r.residual)),
        ("degenerate", json!(degenerate)),
    ];
    Ok(Output::new(json, record))
}

fn weight_atoms(r: &OptimizationResult) -> Vec<(f64, f64)> {
    match &r.best {
        Distribution::Weight(w) => w.atoms().to_vec(),
        Distribution::Degree(_) => Vec::new(),
    }
}

fn cmd_optimize_weights(mu: f64, lambda_max: Option<f64>) -> Result<Output> {
    let best = optimal_weight(mu)?;
    let lambda_max = lambda_max.unwrap_or(DEFAULT_LAMBDA_MAX.max(2.0 * mu));
    let scan = scan_lambda(mu, lambda_max)?;
    let mass = weight_atoms(&best)
        .iter()
        .find(|a| a.0 == best.parameter)
        .map_or(0.0, |a| a.1);
    let json = json!({
        "mu": mu,
        "mu_c": mu_c(),
        "lambda_star": best.parameter,
        "mass_at_lambda": mass,
        "distribution": DistributionRecord::from(&best.best),
        "giant_fraction": best.best_giant_fraction,
        "stationarity_residual": best.stationarity_residual,
        "scan": {
            "lambda_max": lambda_max,
            "lambda": scan.parameter,
            "giant_fraction": scan.best_giant_fraction,
            "stationarity_residual": scan.stationarity_residual,
            "evaluations": scan.search_trace.len(),
        },
    });
    let record = vec![
        ("mu", json!(mu)),
        ("lambda_star", json!(best.parameter)),
        ("mass_at_lambda", json!(mass)),
        ("giant_fraction", json!(best.best_giant_fraction)),
        ("stationarity_residual", json!(best.stationarity_residual)),
        ("scan_lambda", json!(scan.parameter)),
        ("scan_giant_fraction", json!(scan.best_giant_fraction)),
    ];
    Ok(Output::new(json, record))
}

fn cmd_optimize_degrees(mu: f64, p: f64, k_max: usize) -> Result<Output> {
    let r = optimize_three_point(mu, p, k_max)?;
    let k = r.k.expect("degree search reports k");
    let (zero, at_k, at_k1) = match &r.best {
        Distribution::Degree(d) => (d.prob(0), d.prob(k), d.prob(k + 1)),
        Distribution::Weight(_) => unreachable!("degree search returns a degree law"),
    };
    let warnings: Vec<String> = r
        .warnings
        .iter()
        .map(|w| match w {
            SearchWarning::OptimumAtKMax(k) => {
                format!("optimum at k = {k} = k_max; a larger --k-max may improve it")
            }
            SearchWarning::ExcludedDegenerate { k, b } => format!(
                "excluded degenerate candidate (k = {k}, mass {b}): all degrees in {{0, 2}} with p = 1"
            ),
        })
        .collect();
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let at_k_max = r
        .warnings
        .iter()
        .any(|w| matches!(w, SearchWarning::OptimumAtKMax(_)));
    let per_k: Vec<Value> = r
        .search_trace
        .iter()
        .map(|t| json!({"k": t.k, "mass_at_k": t.parameter, "giant_fraction": t.giant_fraction}))
        .collect();
    let json = json!({
        "mu": mu,
        "p": p,
        "k_max": k_max,
        "k": k,
        "masses": {"zero": zero, "k": at_k, "k_plus_1": at_k1},
        "distribution": DistributionRecord::from(&r.best),
        "giant_fraction": r.best_giant_fraction,
        "at_k_max": at_k_max,
        "warnings": warnings,
        "per_k": per_k,
    });
    let record = vec![
        ("mu", json!(mu)),
        ("p", json!(p)),
        ("k", json!(k)),
        ("mass_zero", json!(zero)),
        ("mass_k", json!(at_k)),
        ("mass_k_plus_1", json!(at_k1)),
        ("giant_fraction", json!(r.best_giant_fraction)),
        ("at_k_max", json!(at_k_max)),
    ];
    Ok(Output::new(json, record))
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    model: Model,
    dist: &Path,
    p: f64,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<Output> {
    let distribution = format::read_distribution(dist)?;
    let spec = ExperimentSpec {
        model: match model {
            Model::Poissonian => GraphModel::Poissonian,
            Model::Configuration => GraphModel::Configuration,
        },
        distribution,
        p,
        n,
        replicates: reps,
        master_seed: seed,
    };
    let report = montecarlo::run(&spec)?;
    if let Some(msg) = &report.degenerate {
        eprintln!("warning: {msg}; theory comparison suppressed");
    }
    let check = montecarlo::second_component_check(&report, SECOND_COMPONENT_THRESHOLD);
    let mut json = serde_json::to_value(&report)?;
    json["distribution"] = serde_json::to_value(DistributionRecord::from(&spec.distribution))?;
    json["second_component_threshold"] = json!(SECOND_COMPONENT_THRESHOLD);
    json["second_component_check"] = serde_json::to_value(check)?;
    let record = vec![
        ("model", json!(report.model)),
        ("n", json!(report.n)),
        ("p", json!(report.p)),
        ("replicates", json!(report.replicates)),
        ("mean", json!(report.mean)),
        ("sd", json!(report.sd)),
        ("standard_error", json!(report.standard_error)),
        ("theory_giant", json!(report.theory_giant)),
        ("abs_gap", json!(report.abs_gap)),
        ("within_tolerance", json!(report.within_tolerance)),
        ("second_component_check", serde_json::to_value(check)?),
    ];
    let rows = report
        .outcomes
        .iter()
        .map(|o| {
            vec![
                json!(o.replicate),
                json!(o.largest_fraction),
                json!(o.second_fraction),
            ]
        })
        .collect();
    let mut output = Output::new(json, record);
    output.rows = Some((
        vec!["replicate", "largest_fraction", "second_fraction"],
        rows,
    ));
    Ok(output)
}

fn cmd_verify(suite: Suite, trials: Option<usize>, seed: u64) -> Result<Output> {
    let trials = trials.unwrap_or(suite.default_trials());
    let report = suites::run_suite(suite, trials, seed);
    let passed = report.passed();
    let mut json = serde_json::to_value(&report)?;
    json["passed"] = json!(passed);
    let record = vec![
        ("suite", serde_json::to_value(suite)?),
        ("trials", json!(trials)),
        ("checks", json!(report.checks)),
        ("violations", json!(report.violations)),
        ("passed", json!(passed)),
    ];
    for failure in &report.failures {
        eprintln!("violation: {failure}");
    }
    let mut output = Output::new(json, record);
    output.exit_code = if passed { 0 } else { 1 };
    Ok(output)
}

fn cmd_edge_budget(c: f64, epsilon: f64) -> Result<Output> {
    let r = edge_budget(c, epsilon)?;
    let regime = match r.regime {
        EdgeBudgetRegime::Dense => "c>2",
        EdgeBudgetRegime::Sparse => "c<=2",
    };
    let distribution = Distribution::Degree(r.distribution.clone());
    let degenerate = r.degeneracy.map(|d| d.to_string());
    let json = json!({
        "c": c,
        "regime": regime,
        "epsilon": r.epsilon,
        "p": r.p,
        "distribution": DistributionRecord::from(&distribution),
        "giant_fraction": r.giant_fraction,
        "bound": r.bound,
        "bound_attained": r.bound_attained,
        "degenerate": degenerate,
    });
    let record = vec![
        ("c", json!(c)),
        ("regime", json!(regime)),
        ("epsilon", json!(r.epsilon)),
        ("p", json!(r.p)),
        ("giant_fraction", json!(r.giant_fraction)),
        ("bound", json!(r.bound)),
        ("bound_attained", json!(r.bound_attained)),
    ];
    Ok(Output::new(json, record))
}

/// Runs one parsed command, writing its report to `out`. Returns the exit
/// code for a successful run (0, or 1 when a suite found violations).
pub fn run<W: Write>(cli: Cli, out: W) -> Result<i32> {
    let (output, format) = match cli.command {
        Command::Solve { dist, p, output } => (cmd_solve(&dist, p)?, output.format),
        Command::OptimizeWeights {
            mu,
            lambda_max,
            output,
        } => (cmd_optimize_weights(mu, lambda_max)?, output.format),
        Command::OptimizeDegrees {
            mu,
            p,
            k_max,
            output,
        } => (cmd_optimize_degrees(mu, p, k_max)?, output.format),
        Command::Simulate {
            model,
            dist,
            p,
            n,
            reps,
            seed,
            output,
        } => (cmd_simulate(model, &dist, p, n, reps, seed)?, output.format),
        Command::Verify {
            suite,
            trials,
            seed,
            output,
        } => (cmd_verify(suite, trials, seed)?, output.format),
        Command::EdgeBudget { c, epsilon, output } => (cmd_edge_budget(c, epsilon)?, output.format),
    };
    let code = output.exit_code;
    output.write(format, out)?;
    Ok(code)
}

/// Caps the global worker pool at `GIANTMAX_THREADS` when set.
pub fn configure_threads() {
    if let Some(threads) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        // Fails only if the pool already exists, which keeps its size.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    configure_threads();
    let stdout = std::io::stdout();
    match run(cli, stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
