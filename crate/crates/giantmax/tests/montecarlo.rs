use giantmax::core::dist::{DegreeDistribution, WeightDistribution};
use giantmax::core::graph::{gen_configuration, gen_poissonian, thin_edges};
use giantmax::core::{Distribution, GraphModel};
use giantmax::montecarlo::{
    run, second_component_check, write_replicates_csv, ExperimentSpec, SecondComponentCheck,
};

fn spec(
    model: GraphModel,
    distribution: Distribution,
    p: f64,
    n: usize,
    replicates: usize,
) -> ExperimentSpec {
    ExperimentSpec {
        model,
        distribution,
        p,
        n,
        replicates,
        master_seed: 11,
    }
}

#[test]
fn configuration_degrees_follow_the_target_law() {
    let pmf = vec![0.1, 0.25, 0.3, 0.2, 0.15];
    let d = DegreeDistribution::new(pmf.clone()).unwrap();
    let g = gen_configuration(100_000, &d, 5).unwrap();
    let mut counts = [0usize; 16];
    for deg in g.degrees() {
        counts[deg as usize] += 1;
    }
    let tv: f64 = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| (c as f64 / g.n as f64 - pmf.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 0.01, "total variation {tv}");
}

#[test]
fn mean_degrees_match_the_model() {
    let g = gen_poissonian(100_000, &WeightDistribution::point(2.0).unwrap(), 1).unwrap();
    assert!(
        (g.mean_degree() / 2.0 - 1.0).abs() < 0.01,
        "{}",
        g.mean_degree()
    );
    let g = gen_configuration(100_000, &DegreeDistribution::constant(3).unwrap(), 1).unwrap();
    assert!(
        (g.mean_degree() / 3.0 - 1.0).abs() < 0.01,
        "{}",
        g.mean_degree()
    );
}

#[test]
fn thinned_edge_count_is_binomial() {
    let g = gen_configuration(50_000, &DegreeDistribution::constant(4).unwrap(), 2).unwrap();
    let m = g.edges.len() as f64;
    for p in [0.2, 0.5, 0.9] {
        let kept = thin_edges(&g, p, 3).unwrap().edges.len() as f64;
        let sd = (m * p * (1.0 - p)).sqrt();
        assert!((kept - m * p).abs() < 5.0 * sd, "p {p}: kept {kept} of {m}");
    }
}

#[test]
fn thinning_weights_matches_scaling_weights() {
    // Thinning a Poissonian graph by p has the same law as scaling weights by p.
    let w = WeightDistribution::new(vec![(1.0, 0.5), (4.0, 0.5)]).unwrap();
    let thinned = run(&spec(
        GraphModel::Poissonian,
        w.clone().into(),
        0.6,
        50_000,
        8,
    ))
    .unwrap();
    let scaled = run(&spec(
        GraphModel::Poissonian,
        w.scaled(0.6).unwrap().into(),
        1.0,
        50_000,
        8,
    ))
    .unwrap();
    let theory = thinned.theory_giant.unwrap();
    assert!((theory - scaled.theory_giant.unwrap()).abs() < 1e-12);
    assert!(
        (thinned.mean - scaled.mean).abs() < 0.01,
        "{} vs {}",
        thinned.mean,
        scaled.mean
    );
}

/// Root-mean-square distance of the replicate largest fractions from theory.
fn rms_error(r: &giantmax::montecarlo::ExperimentReport) -> f64 {
    let theory = r.theory_giant.unwrap();
    let ss: f64 = r
        .outcomes
        .iter()
        .map(|o| (o.largest_fraction - theory).powi(2))
        .sum();
    (ss / r.outcomes.len() as f64).sqrt()
}

#[test]
fn error_shrinks_with_n() {
    let x = WeightDistribution::point(1.5).unwrap();
    let small = run(&spec(
        GraphModel::Poissonian,
        x.clone().into(),
        1.0,
        1_000,
        16,
    ))
    .unwrap();
    let large = run(&spec(GraphModel::Poissonian, x.into(), 1.0, 100_000, 16)).unwrap();
    let (es, el) = (rms_error(&small), rms_error(&large));
    assert!(el < es / 3.0, "rms error {es} at n=1e3, {el} at n=1e5");
    assert!(large.within_tolerance.unwrap());
}

#[test]
fn runs_are_reproducible_and_seed_sensitive() {
    let d = DegreeDistribution::new(vec![0.2, 0.2, 0.3, 0.3]).unwrap();
    let a = run(&spec(
        GraphModel::Configuration,
        d.clone().into(),
        0.7,
        5_000,
        6,
    ))
    .unwrap();
    let b = run(&spec(
        GraphModel::Configuration,
        d.clone().into(),
        0.7,
        5_000,
        6,
    ))
    .unwrap();
    assert_eq!(a, b);
    let mut other = spec(GraphModel::Configuration, d.into(), 0.7, 5_000, 6);
    other.master_seed = 12;
    assert_ne!(run(&other).unwrap().outcomes, a.outcomes);
}

#[test]
fn degenerate_model_suppresses_theory() {
    let d = DegreeDistribution::new(vec![0.5, 0.0, 0.5]).unwrap();
    let r = run(&spec(GraphModel::Configuration, d.into(), 1.0, 10_000, 4)).unwrap();
    assert!(r.theory_giant.is_none() && r.abs_gap.is_none());
    assert!(r.degenerate.is_some());
    assert_eq!(
        second_component_check(&r, 0.01),
        SecondComponentCheck::SkippedDegenerate
    );
}

#[test]
fn replicate_csv_has_one_row_per_replicate() {
    let x = WeightDistribution::point(2.0).unwrap();
    let r = run(&spec(GraphModel::Poissonian, x.into(), 1.0, 2_000, 5)).unwrap();
    let mut buf = Vec::new();
    write_replicates_csv(&r, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "replicate,largest_fraction,second_fraction");
    assert_eq!(rows.len(), 6);
    assert!(rows[1].starts_with("0,"));
}
