//! Replicated graph simulations compared against the fixed-point limit.
//!
//! Replicate `i` draws its seed from `(master_seed, i)`, so results do not
//! depend on which thread ran which replicate or in what order.

use giantmax_core::components::components;
use giantmax_core::fixpoint::{solve_distribution, Degeneracy};
use giantmax_core::graph::{gen_configuration, gen_poissonian, thin_edges};
use giantmax_core::rng::derive_seed;
use giantmax_core::{Distribution, GraphModel};
use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result};

/// Half-edge budget above which experiments are refused.
pub const HALF_EDGE_LIMIT: f64 = 1e8;
/// Smallest allowed gap tolerance between simulated mean and theory.
pub const MIN_GAP_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub model: GraphModel,
    pub distribution: Distribution,
    /// Edge retention probability.
    pub p: f64,
    pub n: usize,
    pub replicates: usize,
    pub master_seed: u64,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        match (self.model, &self.distribution) {
            (GraphModel::Poissonian, Distribution::Weight(_))
            | (GraphModel::Configuration, Distribution::Degree(_)) => {}
            (GraphModel::Poissonian, _) => {
                return Err(Error::ModelMismatch {
                    model: "poissonian",
                    expected: "weight_atoms",
                })
            }
            (GraphModel::Configuration, _) => {
                return Err(Error::ModelMismatch {
                    model: "configuration",
                    expected: "degree_pmf",
                })
            }
        }
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidSpec("replicates must be at least 1".into()));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(giantmax_core::Error::Domain {
                what: "retention probability",
                value: self.p,
            }
            .into());
        }
        Ok(())
    }

    /// Expected half-edge count of one ground graph.
    pub fn half_edges(&self) -> f64 {
        self.n as f64 * self.distribution.mean()
    }

    pub fn check_resources(&self) -> Result<()> {
        let half_edges = self.half_edges();
        if half_edges > HALF_EDGE_LIMIT {
            return Err(Error::ResourceGuard {
                half_edges,
                limit: HALF_EDGE_LIMIT,
            });
        }
        Ok(())
    }

    /// The excluded unthinned `{0, 2}` configuration model.
    pub fn degeneracy(&self) -> Option<Degeneracy> {
        match &self.distribution {
            Distribution::Degree(d) if self.p == 1.0 && d.is_supported_on_zero_two() => {
                Some(Degeneracy::ZeroTwoUnthinned)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicateOutcome {
    pub replicate: usize,
    pub seed: u64,
    pub edges: usize,
    pub largest: usize,
    pub second: usize,
    pub largest_fraction: f64,
    pub second_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub model: &'static str,
    pub n: usize,
    pub p: f64,
    pub replicates: usize,
    pub master_seed: u64,
    pub outcomes: Vec<ReplicateOutcome>,
    pub mean: f64,
    pub sd: f64,
    pub standard_error: f64,
    /// `1 - q` from the fixed point; absent for the degenerate model.
    pub theory_giant: Option<f64>,
    pub abs_gap: Option<f64>,
    /// `max(0.01, 4 standard errors)`.
    pub gap_tolerance: f64,
    pub within_tolerance: Option<bool>,
    pub degenerate: Option<String>,
}

pub fn run_replicate(spec: &ExperimentSpec, replicate: usize) -> Result<ReplicateOutcome> {
    let seed = derive_seed(spec.master_seed, replicate as u64);
    let ground = match &spec.distribution {
        Distribution::Weight(w) => gen_poissonian(spec.n, w, seed)?,
        Distribution::Degree(d) => gen_configuration(spec.n, d, seed)?,
    };
    let graph = thin_edges(&ground, spec.p, seed)?;
    let census = components(&graph);
    Ok(ReplicateOutcome {
        replicate,
        seed,
        edges: graph.edges.len(),
        largest: census.largest,
        second: census.second,
        largest_fraction: census.largest_fraction(),
        second_fraction: census.second_fraction(),
    })
}

/// Runs all replicates on the current rayon pool.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    spec.check_resources()?;
    let outcomes = (0..spec.replicates)
        .into_par_iter()
        .map(|i| run_replicate(spec, i))
        .collect::<Result<Vec<_>>>()?;
    let degeneracy = spec.degeneracy();
    let theory_giant = match degeneracy {
        Some(_) => None,
        None => Some(solve_distribution(&spec.distribution, spec.p)?.giant_fraction),
    };
    Ok(summarize(spec, outcomes, theory_giant, degeneracy))
}

fn summarize(
    spec: &ExperimentSpec,
    outcomes: Vec<ReplicateOutcome>,
    theory_giant: Option<f64>,
    degeneracy: Option<Degeneracy>,
) -> ExperimentReport {
    let count = outcomes.len() as f64;
    let mean = outcomes.iter().map(|o| o.largest_fraction).sum::<f64>() / count;
    let sd = if outcomes.len() > 1 {
        let ss: f64 = outcomes
            .iter()
            .map(|o| (o.largest_fraction - mean).powi(2))
            .sum();
        (ss / (count - 1.0)).sqrt()
    } else {
        0.0
    };
    let standard_error = sd / count.sqrt();
    let gap_tolerance = MIN_GAP_TOLERANCE.max(4.0 * standard_error);
    let abs_gap = theory_giant.map(|t| (mean - t).abs());
    ExperimentReport {
        model: spec.model.as_str(),
        n: spec.n,
        p: spec.p,
        replicates: spec.replicates,
        master_seed: spec.master_seed,
        outcomes,
        mean,
        sd,
        standard_error,
        theory_giant,
        abs_gap,
        gap_tolerance,
        within_tolerance: abs_gap.map(|g| g <= gap_tolerance),
        degenerate: degeneracy.map(|d| d.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondComponentCheck {
    Passed,
    Failed,
    /// Not meaningful for the degenerate model, where a second linear-size
    /// component can persist.
    SkippedDegenerate,
}

impl SecondComponentCheck {
    pub fn passed(self) -> bool {
        self == SecondComponentCheck::Passed
    }
}

/// Passes when every replicate's second-largest component is below
/// `threshold` as a fraction of `n`.
pub fn second_component_check(report: &ExperimentReport, threshold: f64) -> SecondComponentCheck {
    if report.degenerate.is_some() {
        return SecondComponentCheck::SkippedDegenerate;
    }
    if report
        .outcomes
        .iter()
        .all(|o| o.second_fraction < threshold)
    {
        SecondComponentCheck::Passed
    } else {
        SecondComponentCheck::Failed
    }
}

/// CSV with one row per replicate.
pub fn write_replicates_csv<W: std::io::Write>(report: &ExperimentReport, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["replicate", "largest_fraction", "second_fraction"])?;
    for o in &report.outcomes {
        writer.write_record([
            o.replicate.to_string(),
            crate::format::round_sig(o.largest_fraction, crate::format::MACHINE_DIGITS).to_string(),
            crate::format::round_sig(o.second_fraction, crate::format::MACHINE_DIGITS).to_string(),
        ])?;
    }
    writer.flush().map_err(Error::Output)?;
    Ok(())
}
