//! Optimal weight and degree laws for the giant component.
//!
//! * [`mu_c`]: the critical mean, largest root of `2x = exp(x - 1/2)`.
//! * [`optimal_weight`]: the closed-form optimal Poissonian weight law, with
//!   [`scan_lambda`] as its numerical counterpart over two-point laws.
//! * [`optimize_three_point`]: numerical search over degree laws on
//!   `{0, k, k+1}` for the thinned configuration model.
//! * [`edge_budget`]: the fixed expected-edge-count analysis.
//! * [`verify_crossing`]: checks that a mixed Poisson pgf stays below a
//!   Poisson pgf after touching it.

use alloc::vec;
use alloc::vec::Vec;

use crate::dist::{DegreeDistribution, Distribution, WeightDistribution};
use crate::fixpoint::{self, bisect_fixed_point, Degeneracy, CRITICAL_SLACK};
use crate::search::{grid_then_golden, Minimum};
use crate::{Error, Result};

/// Bracket for [`mu_c`]; the equation's other root, 1/2, lies outside.
pub const MU_C_BRACKET: (f64, f64) = (1.1, 10.0);
pub const DEFAULT_LAMBDA_MAX: f64 = 50.0;
pub const DEFAULT_K_MAX: usize = 100;
pub const GRID_POINTS: usize = 512;
pub const REFINE_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_CROSSING_GRID: usize = 1024;
pub const CROSSING_TOLERANCE: f64 = 1e-12;
/// Lower end of the λ scan when `mu <= 1`; below it `q(λ) = 1`.
const SUPERCRITICAL_FLOOR: f64 = 1.0 + 1e-6;

fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}

fn check_mean(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(domain("mean", mu))
    }
}

fn check_retention(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(domain("retention probability", p))
    }
}

/// Largest root of `2x = exp(x - 1/2)`, approximately 1.756431.
pub fn mu_c() -> f64 {
    let h = |x: f64| libm::exp(x - 0.5) - 2.0 * x;
    let (mut lo, mut hi) = MU_C_BRACKET;
    // h(lo) < 0 < h(hi)
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if h(lo).abs() <= h(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Weight law `P(X = lambda) = mu / lambda`, `P(X = 0) = 1 - mu / lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointWeightFamily {
    mu: f64,
    lambda: f64,
}

impl TwoPointWeightFamily {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        check_mean(mu)?;
        if !(lambda >= mu) || !lambda.is_finite() {
            return Err(domain("atom location", lambda));
        }
        Ok(TwoPointWeightFamily { mu, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mass(&self) -> f64 {
        self.mu / self.lambda
    }

    pub fn law(&self) -> WeightDistribution {
        WeightDistribution::two_point(self.mu, self.lambda).expect("validated on construction")
    }

    /// `f(s; lambda) = 1 - mu/lambda + (mu/lambda) exp(-lambda (1 - s))`.
    pub fn pgf_value(&self, s: f64) -> f64 {
        1.0 - self.mass() + self.mass() * libm::exp(-self.lambda * (1.0 - s))
    }

    /// Extinction probability of Poisson(lambda) offspring.
    pub fn z(&self) -> f64 {
        poisson_extinction(self.lambda)
    }

    pub fn q(&self) -> f64 {
        1.0 - self.mass() * (1.0 - self.z())
    }

    pub fn giant_fraction(&self) -> f64 {
        self.mass() * (1.0 - self.z())
    }
}

/// Smallest root of `s = exp(-lambda (1 - s))`.
pub fn poisson_extinction(lambda: f64) -> f64 {
    if lambda <= 1.0 + CRITICAL_SLACK {
        return 1.0;
    }
    bisect_fixed_point(|s| libm::exp(-lambda * (1.0 - s))).z
}

/// `q(lambda)` for the two-point weight family with mean `mu`.
pub fn two_point_q(mu: f64, lambda: f64) -> Result<f64> {
    Ok(TwoPointWeightFamily::new(mu, lambda)?.q())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    /// Integer atom for degree searches.
    pub k: Option<usize>,
    /// `lambda` for weight searches, mass at `k` for degree searches.
    pub parameter: f64,
    /// Giant fraction `1 - q`; NaN where the point was excluded.
    pub giant_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SearchWarning {
    /// The best family sits at the search bound; a larger bound may improve it.
    OptimumAtKMax(usize),
    /// A `{0, 2}` candidate with no thinning was excluded from the search.
    ExcludedDegenerate { k: usize, b: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best: Distribution,
    pub best_giant_fraction: f64,
    /// `lambda*` for weight laws, the mass at `k` for degree laws.
    pub parameter: f64,
    pub k: Option<usize>,
    /// `|2 lambda* z(lambda*) - 1|` for interior weight optima.
    pub stationarity_residual: Option<f64>,
    pub search_trace: Vec<TracePoint>,
    pub warnings: Vec<SearchWarning>,
}

/// Closed-form optimal weight law for mean `mu`: all mass at `mu` when
/// `mu >= mu_c`, otherwise mass `mu / mu_c` at `mu_c` and the rest at zero.
pub fn optimal_weight(mu: f64) -> Result<OptimizationResult> {
    check_mean(mu)?;
    let critical = mu_c();
    let lambda = mu.max(critical);
    let family = TwoPointWeightFamily::new(mu, lambda)?;
    let law = family.law();
    let solved = fixpoint::solve_weights(&law, 1.0)?;
    let stationarity_residual = (mu < critical).then(|| (2.0 * lambda * solved.z - 1.0).abs());
    Ok(OptimizationResult {
        best: Distribution::Weight(law),
        best_giant_fraction: solved.giant_fraction,
        parameter: lambda,
        k: None,
        stationarity_residual,
        search_trace: vec![TracePoint {
            k: None,
            parameter: lambda,
            giant_fraction: solved.giant_fraction,
        }],
        warnings: Vec::new(),
    })
}

/// Minimizes `q(lambda)` over the two-point family on
/// `[max(mu, 1 + 1e-6), lambda_max]`.
pub fn scan_lambda(mu: f64, lambda_max: f64) -> Result<OptimizationResult> {
    check_mean(mu)?;
    let lo = mu.max(SUPERCRITICAL_FLOOR);
    if !(lambda_max > lo) || !lambda_max.is_finite() {
        return Err(Error::EmptySearch);
    }
    let mut raw = Vec::with_capacity(GRID_POINTS + 64);
    let objective = |lambda: f64| TwoPointWeightFamily { mu, lambda }.q();
    let Minimum { x: lambda, .. } = grid_then_golden(
        objective,
        lo,
        lambda_max,
        GRID_POINTS,
        REFINE_TOLERANCE,
        &mut raw,
    )?;
    let family = TwoPointWeightFamily::new(mu, lambda)?;
    let law = family.law();
    let solved = fixpoint::solve_weights(&law, 1.0)?;
    let interior = lambda > lo && lambda < lambda_max;
    Ok(OptimizationResult {
        best: Distribution::Weight(law),
        best_giant_fraction: solved.giant_fraction,
        parameter: lambda,
        k: None,
        stationarity_residual: interior.then(|| (2.0 * lambda * solved.z - 1.0).abs()),
        search_trace: raw
            .into_iter()
            .map(|(parameter, q)| TracePoint {
                k: None,
                parameter,
                giant_fraction: 1.0 - q,
            })
            .collect(),
        warnings: Vec::new(),
    })
}

fn powi(mut base: f64, mut exp: usize) -> f64 {
    let mut acc = 1.0;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// Degree law with masses `b` at `k`, `c` at `k + 1` and the rest at zero,
/// where `k b + (k + 1) c = mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreePointDegreeFamily {
    pub mu: f64,
    pub p: f64,
    pub k: usize,
    pub b: f64,
}

impl ThreePointDegreeFamily {
    /// Feasible masses at `k` form `[0, min(mu / k, k + 1 - mu)]`; `None`
    /// when that interval is empty.
    pub fn b_max(mu: f64, k: usize) -> Option<f64> {
        if k == 0 {
            return None;
        }
        let kf = k as f64;
        let top = (mu / kf).min(kf + 1.0 - mu);
        (top >= 0.0).then_some(top)
    }

    /// `(P(D = 0), P(D = k), P(D = k + 1))` with round-off snapped to zero.
    pub fn masses(&self) -> (f64, f64, f64) {
        let snap = |m: f64| if m.abs() < 1e-15 { 0.0 } else { m };
        let kf = self.k as f64;
        let c = snap((self.mu - kf * self.b) / (kf + 1.0));
        let zero = snap(1.0 - self.b - c);
        (zero, self.b, c)
    }

    pub fn law(&self) -> Result<DegreeDistribution> {
        let (zero, b, c) = self.masses();
        let mut pmf = vec![0.0; self.k + 2];
        pmf[0] += zero;
        pmf[self.k] += b;
        pmf[self.k + 1] += c;
        DegreeDistribution::new(pmf)
    }

    pub fn is_degenerate(&self) -> bool {
        if self.p != 1.0 {
            return false;
        }
        let (_, b, c) = self.masses();
        match self.k {
            1 => b == 0.0 && c > 0.0,
            2 => c == 0.0 && b > 0.0,
            _ => false,
        }
    }

    /// `q_{D,p}` evaluated in closed form on the three atoms.
    pub fn q(&self) -> f64 {
        let (zero, b, c) = self.masses();
        let k = self.k;
        let kf = k as f64;
        let p = self.p;
        let mu = self.mu;
        let offspring = p * (kf * (kf - 1.0) * b + (kf + 1.0) * kf * c) / mu;
        let fbar = |s: f64| {
            let u = 1.0 - p * (1.0 - s);
            let lower = powi(u, k - 1);
            ((kf * b + (kf + 1.0) * c * u) * lower / mu).clamp(0.0, 1.0)
        };
        let z = if fbar(0.0) == 0.0 {
            0.0
        } else if offspring <= 1.0 + CRITICAL_SLACK {
            1.0
        } else {
            bisect_fixed_point(fbar).z
        };
        let u = 1.0 - p * (1.0 - z);
        let uk = powi(u, k);
        (zero + b * uk + c * uk * u).clamp(0.0, 1.0)
    }
}

/// Searches degree laws on `{0, k, k+1}` with mean `mu` for the smallest
/// `q_{D,p}`, over `k` from `max(1, ceil(mu) - 1)` to `k_max`.
///
/// Candidates in the excluded `{0, 2}` unthinned model are skipped and
/// reported in `warnings`. Ties go to the smaller `k`, then the smaller mass.
/// `search_trace` holds the best point of each `k` searched. The scan stops
/// once `1 - mu / k`, a lower bound on `q`, exceeds the best value found.
pub fn optimize_three_point(mu: f64, p: f64, k_max: usize) -> Result<OptimizationResult> {
    check_mean(mu)?;
    check_retention(p)?;
    let ceil = libm::ceil(mu) as usize;
    if k_max < ceil {
        return Err(domain("k_max", k_max as f64));
    }
    let k_min = ceil.saturating_sub(1).max(1);
    let mut best: Option<(usize, Minimum)> = None;
    let mut trace = Vec::with_capacity(k_max + 1 - k_min);
    let mut warnings = Vec::new();
    let mut scratch = Vec::with_capacity(GRID_POINTS + 64);
    for k in k_min..=k_max {
        // P(D = 0) >= 1 - mu / k bounds q from below for every larger k too.
        if best.is_some_and(|(_, m)| 1.0 - mu / k as f64 > m.value) {
            break;
        }
        let Some(b_max) = ThreePointDegreeFamily::b_max(mu, k) else {
            continue;
        };
        let mut excluded: Option<f64> = None;
        let objective = |b: f64| {
            let family = ThreePointDegreeFamily { mu, p, k, b };
            if family.is_degenerate() {
                excluded.get_or_insert(b);
                f64::INFINITY
            } else {
                family.q()
            }
        };
        scratch.clear();
        let found = grid_then_golden(
            objective,
            0.0,
            b_max,
            GRID_POINTS,
            REFINE_TOLERANCE,
            &mut scratch,
        );
        if let Some(b) = excluded {
            warnings.push(SearchWarning::ExcludedDegenerate { k, b });
        }
        let Ok(min) = found else {
            continue;
        };
        trace.push(TracePoint {
            k: Some(k),
            parameter: min.x,
            giant_fraction: 1.0 - min.value,
        });
        if best.is_none_or(|(_, m)| min.value < m.value) {
            best = Some((k, min));
        }
    }
    let (k, min) = best.ok_or(Error::EmptySearch)?;
    let mut family = ThreePointDegreeFamily { mu, p, k, b: min.x };
    // No mass at k: report the same law as the (k + 1) family.
    let (_, b, c) = family.masses();
    if b == 0.0 && c > 0.0 {
        family = ThreePointDegreeFamily {
            mu,
            p,
            k: k + 1,
            b: c,
        };
    }
    let (k, min) = (
        family.k,
        Minimum {
            x: family.b,
            value: min.value,
        },
    );
    let law = family.law()?;
    let solved = fixpoint::solve_thinned(&law, p)?;
    if k >= k_max {
        warnings.push(SearchWarning::OptimumAtKMax(k));
    }
    Ok(OptimizationResult {
        best: Distribution::Degree(law),
        best_giant_fraction: solved.giant_fraction,
        parameter: min.x,
        k: Some(k),
        stationarity_residual: None,
        search_trace: trace,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeBudgetRegime {
    /// `c > 2`: a near-regular unthinned graph has no isolated mass.
    Dense,
    /// `c <= 2`: the giant fraction is bounded by `c / 2`, never attained.
    Sparse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBudgetReport {
    pub c: f64,
    pub epsilon: Option<f64>,
    pub regime: EdgeBudgetRegime,
    pub p: f64,
    pub distribution: DegreeDistribution,
    pub giant_fraction: f64,
    /// Supremum of the giant fraction over the class.
    pub bound: f64,
    pub bound_attained: bool,
    pub degeneracy: Option<Degeneracy>,
}

/// Analysis of the class of `(p, D)` with `p E[D] = c`.
///
/// For `c > 2` returns the unthinned law on `{floor(c), floor(c) + 1}` with
/// mean `c`. For `c <= 2` returns the near-optimal family with masses
/// `c/2 - 3 eps` at 2, `2 eps` at 3 and `1 - c/2 + eps` at 0.
pub fn edge_budget(c: f64, epsilon: f64) -> Result<EdgeBudgetReport> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain("edge budget", c));
    }
    if c > 2.0 {
        let floor = libm::floor(c);
        let frac = c - floor;
        let k = floor as usize;
        let mut pmf = vec![0.0; k + 2];
        pmf[k] = 1.0 - frac;
        pmf[k + 1] = frac;
        let distribution = DegreeDistribution::new(pmf)?;
        let solved = fixpoint::solve_thinned(&distribution, 1.0)?;
        return Ok(EdgeBudgetReport {
            c,
            epsilon: None,
            regime: EdgeBudgetRegime::Dense,
            p: 1.0,
            distribution,
            giant_fraction: solved.giant_fraction,
            bound: 1.0,
            bound_attained: true,
            degeneracy: solved.degeneracy,
        });
    }
    if !(epsilon >= 0.0 && epsilon < c / 6.0) {
        return Err(domain("epsilon", epsilon));
    }
    let half = c / 2.0;
    let distribution = DegreeDistribution::new(vec![
        1.0 - half + epsilon,
        0.0,
        half - 3.0 * epsilon,
        2.0 * epsilon,
    ])?;
    let solved = fixpoint::solve_thinned(&distribution, 1.0)?;
    Ok(EdgeBudgetReport {
        c,
        epsilon: Some(epsilon),
        regime: EdgeBudgetRegime::Sparse,
        p: 1.0,
        distribution,
        giant_fraction: solved.giant_fraction,
        bound: half,
        bound_attained: false,
        degeneracy: solved.degeneracy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingReport {
    pub lambda: f64,
    /// First `s*` in `(0, 1)` where the two functions meet, if any.
    pub crossing: Option<f64>,
    pub grid_points: usize,
    pub violations: usize,
    /// Largest `f_D(s) - exp(-lambda (1 - s))` seen on `[s*, 1]`.
    pub max_excess: f64,
}

impl CrossingReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn is_vacuous(&self) -> bool {
        self.crossing.is_none()
    }
}

/// Locates the first meeting point `s*` in `(0, 1)` of the mixed Poisson pgf
/// of `x` and the Poisson(`lambda`) pgf, then checks on a uniform grid of
/// `[s*, 1]` that the mixed Poisson pgf never exceeds the Poisson one by more
/// than `1e-12`.
pub fn verify_crossing(x: &WeightDistribution, lambda: f64, grid: usize) -> CrossingReport {
    let grid = grid.max(2);
    let f = x.pgf();
    let h = |s: f64| f.value(s) - libm::exp(-lambda * (1.0 - s));
    let mut crossing = None;
    let mut prev_s = 0.0;
    let mut prev = h(0.0);
    for i in 1..grid {
        let s = i as f64 / grid as f64;
        let v = h(s);
        if v == 0.0 {
            crossing = Some(s);
            break;
        }
        if prev != 0.0 && (prev > 0.0) != (v > 0.0) {
            crossing = Some(bisect_sign_change(&h, prev_s, s, prev > 0.0));
            break;
        }
        prev_s = s;
        prev = v;
    }
    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    if let Some(start) = crossing {
        for j in 0..grid {
            let s = if j + 1 == grid {
                1.0
            } else {
                start + (1.0 - start) * (j as f64 / (grid - 1) as f64)
            };
            let excess = h(s);
            max_excess = max_excess.max(excess);
            if excess > CROSSING_TOLERANCE {
                violations += 1;
            }
        }
    }
    CrossingReport {
        lambda,
        crossing,
        grid_points: grid,
        violations,
        max_excess: if crossing.is_some() { max_excess } else { 0.0 },
    }
}

fn bisect_sign_change<H: Fn(f64) -> f64>(
    h: &H,
    mut lo: f64,
    mut hi: f64,
    lo_positive: bool,
) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = h(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo > 0.0 {
        lo
    } else {
        hi
    }
}
