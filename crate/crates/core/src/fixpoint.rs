//! Extinction probability `z` (smallest fixed point of the forward-degree
//! generating function) and the non-giant fraction `q = f(z)`.

use core::fmt;

use crate::dist::{DegreeDistribution, Distribution, WeightDistribution};
use crate::pgf::Pgf;
use crate::{Error, Result};

/// Allowed deviation of a generating function from one at `s = 1`.
pub const PGF_UNIT_TOLERANCE: f64 = 1e-12;
/// Offspring means up to `1 + CRITICAL_SLACK` are treated as (sub)critical.
pub const CRITICAL_SLACK: f64 = 1e-12;
/// Upper end of the bisection bracket.
pub const BRACKET_TOP: f64 = 1.0 - 1e-9;
pub const MAX_BISECTIONS: u32 = 200;
pub const DEFAULT_MAX_ITERATIONS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    /// Resolved without searching: `f̄(0) = 0` gives `z = 0`, a
    /// (sub)critical offspring mean gives `z = 1`.
    Precheck,
    Bisection,
    /// Monotone iteration `s <- f̄(s)` from `s = 0`.
    Iteration,
}

impl RootMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RootMethod::Precheck => "precheck",
            RootMethod::Bisection => "bisection",
            RootMethod::Iteration => "iteration",
        }
    }
}

/// Models for which `1 - q` is not the limit of the largest-component
/// fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// No thinning and every degree is 0 or 2: the graph is a union of
    /// cycles and isolated vertices.
    ZeroTwoUnthinned,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::ZeroTwoUnthinned => f.write_str(
                "degenerate: largest component fraction does not converge to 1-q \
                 (p = 1 with all degrees in {0, 2}); limit unknown",
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub z: f64,
    pub method: RootMethod,
    pub iterations: u64,
    /// `|f̄(z) - z|`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointResult {
    pub z: f64,
    pub q: f64,
    pub giant_fraction: f64,
    /// Mean of the (thinned) forward degree, `f̄'(1)`.
    pub offspring_mean: f64,
    pub method: RootMethod,
    pub iterations: u64,
    pub residual: f64,
    pub degeneracy: Option<Degeneracy>,
}

impl FixedPointResult {
    /// The all-isolated case: zero mean, nothing to size-bias.
    fn empty() -> Self {
        FixedPointResult {
            z: 1.0,
            q: 1.0,
            giant_fraction: 0.0,
            offspring_mean: 0.0,
            method: RootMethod::Precheck,
            iterations: 0,
            residual: 0.0,
            degeneracy: None,
        }
    }

    pub fn is_supercritical(&self) -> bool {
        self.z < 1.0
    }
}

fn precheck(fbar: &Pgf) -> Result<Option<Root>> {
    let at_one = fbar.raw_value(1.0);
    if !((at_one - 1.0).abs() <= PGF_UNIT_TOLERANCE) {
        return Err(Error::NotAPgf(at_one));
    }
    let root = |z| Root {
        z,
        method: RootMethod::Precheck,
        iterations: 0,
        residual: (fbar.value(z) - z).abs(),
    };
    if fbar.value(0.0) == 0.0 {
        return Ok(Some(root(0.0)));
    }
    if fbar.derivative_at_one() <= 1.0 + CRITICAL_SLACK {
        return Ok(Some(root(1.0)));
    }
    Ok(None)
}

/// Smallest `s` in `[0, 1]` with `f̄(s) = s`, by bisection.
pub fn smallest_root(fbar: &Pgf) -> Result<f64> {
    find_root(fbar).map(|r| r.z)
}

/// [`smallest_root`] with diagnostics.
pub fn find_root(fbar: &Pgf) -> Result<Root> {
    if let Some(root) = precheck(fbar)? {
        return Ok(root);
    }
    Ok(bisect_fixed_point(|s| fbar.value(s)))
}

/// Bisection for the smallest fixed point of a convex, nondecreasing map
/// `fbar` on `[0, 1]` with `fbar(0) > 0`, `fbar(1) = 1` and `fbar'(1) > 1`.
///
/// `s - fbar(s)` is negative on `[0, z)` and positive on `(z, 1)`, so the
/// bracket `[0, 1 - 1e-9]` holds exactly one sign change.
pub fn bisect_fixed_point<F: Fn(f64) -> f64>(fbar: F) -> Root {
    let gap = |s: f64| s - fbar(s);
    let mut lo = 0.0;
    let mut hi = BRACKET_TOP;
    if gap(hi) <= 0.0 {
        // Barely supercritical: the root sits above the bracket top.
        hi = 1.0 - 1e-13;
        if gap(hi) <= 0.0 {
            return Root {
                z: 1.0,
                method: RootMethod::Bisection,
                iterations: 0,
                residual: 0.0,
            };
        }
    }
    let mut iterations = 0;
    while iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= f64::EPSILON * hi {
            break;
        }
        iterations += 1;
        if gap(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (rl, rh) = (gap(lo).abs(), gap(hi).abs());
    let (z, residual) = if rl <= rh { (lo, rl) } else { (hi, rh) };
    Root {
        z,
        method: RootMethod::Bisection,
        iterations: iterations as u64,
        residual,
    }
}

/// Smallest fixed point by monotone iteration from zero. Slow near
/// criticality; kept as an independent route to cross-check bisection.
pub fn find_root_by_iteration(fbar: &Pgf, max_iterations: u64) -> Result<Root> {
    if let Some(root) = precheck(fbar)? {
        return Ok(root);
    }
    let mut s = 0.0;
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        let next = fbar.value(s);
        let step = next - s;
        s = next;
        // Linear convergence with rate f̄'(s); stop once the remaining
        // geometric tail is below round-off.
        let rate = fbar.derivative_value(s);
        if step <= 1e-16 || (rate < 1.0 && step <= 1e-15 * (1.0 - rate)) {
            break;
        }
    }
    Ok(Root {
        z: s,
        method: RootMethod::Iteration,
        iterations,
        residual: (fbar.value(s) - s).abs(),
    })
}

fn assemble(f: &Pgf, fbar: &Pgf, root: Root) -> FixedPointResult {
    let q = f.value(root.z);
    FixedPointResult {
        z: root.z,
        q,
        giant_fraction: 1.0 - q,
        offspring_mean: fbar.derivative_at_one(),
        method: root.method,
        iterations: root.iterations,
        residual: root.residual,
        degeneracy: None,
    }
}

/// `z = smallest_root(fbar)`, `q = f(z)` for a consistent pair.
pub fn solve(f: &Pgf, fbar: &Pgf) -> Result<FixedPointResult> {
    Ok(assemble(f, fbar, find_root(fbar)?))
}

/// As [`solve`], locating `z` by monotone iteration.
pub fn solve_by_iteration(f: &Pgf, fbar: &Pgf, max_iterations: u64) -> Result<FixedPointResult> {
    Ok(assemble(
        f,
        fbar,
        find_root_by_iteration(fbar, max_iterations)?,
    ))
}

fn check_retention(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "retention probability",
            value: p,
        })
    }
}

/// Configuration model with ground degree law `d`, edges kept with
/// probability `p`.
///
/// The model with `p = 1` and all degrees in `{0, 2}` is computed (giving
/// `z = 0`, `q = P(D = 0)`) but flagged: its largest-component fraction has
/// no known limit.
pub fn solve_thinned(d: &DegreeDistribution, p: f64) -> Result<FixedPointResult> {
    check_retention(p)?;
    if d.mean() == 0.0 {
        return Ok(FixedPointResult::empty());
    }
    let f = d.pgf().thin(p)?;
    let fbar = d.size_biased_pgf()?.thin(p)?;
    let mut result = solve(&f, &fbar)?;
    if p == 1.0 && d.is_supported_on_zero_two() {
        result.degeneracy = Some(Degeneracy::ZeroTwoUnthinned);
    }
    Ok(result)
}

/// Poissonian random graph with weight law `w`, edges kept with probability
/// `p`; equivalently the unthinned graph on `p X`.
pub fn solve_weights(w: &WeightDistribution, p: f64) -> Result<FixedPointResult> {
    check_retention(p)?;
    if w.mean() == 0.0 {
        return Ok(FixedPointResult::empty());
    }
    let f = w.pgf().thin(p)?;
    let fbar = w.size_biased_pgf()?.thin(p)?;
    solve(&f, &fbar)
}

pub fn solve_distribution(dist: &Distribution, p: f64) -> Result<FixedPointResult> {
    match dist {
        Distribution::Weight(w) => solve_weights(w, p),
        Distribution::Degree(d) => solve_thinned(d, p),
    }
}
