//! One-dimensional minimization: uniform grid scan followed by
//! golden-section refinement around the best grid cell.

use alloc::vec::Vec;

use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search on `[a, b]`. Only interior points are evaluated.
/// Stops when the bracket is narrower than `tol` or after `max_iter` steps.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> Minimum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        Minimum { x: c, value: fc }
    } else {
        Minimum { x: d, value: fd }
    }
}

/// Minimizes `f` over `[a, b]` by scanning `points` equispaced nodes and
/// refining the best cell with golden section. Non-finite values mark
/// excluded points. Every evaluation is appended to `trace`.
///
/// Ties resolve toward smaller `x`.
pub fn grid_then_golden<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    points: usize,
    tol: f64,
    trace: &mut Vec<(f64, f64)>,
) -> Result<Minimum> {
    if !(a <= b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::EmptySearch);
    }
    let mut eval = |x: f64, trace: &mut Vec<(f64, f64)>| {
        let v = f(x);
        trace.push((x, v));
        v
    };
    if a == b || points < 2 {
        let v = eval(a, trace);
        return if v.is_finite() {
            Ok(Minimum { x: a, value: v })
        } else {
            Err(Error::EmptySearch)
        };
    }
    let last = points - 1;
    let node = |i: usize| {
        if i == last {
            b
        } else {
            a + (b - a) * (i as f64 / last as f64)
        }
    };
    let mut best: Option<(usize, f64)> = None;
    for i in 0..points {
        let v = eval(node(i), trace);
        if v.is_finite() && best.is_none_or(|(_, bv)| v < bv) {
            best = Some((i, v));
        }
    }
    let (i, grid_value) = best.ok_or(Error::EmptySearch)?;
    let lo = node(i.saturating_sub(1));
    let hi = node((i + 1).min(last));
    let refined = golden_section(|x| eval(x, trace), lo, hi, tol, 200);
    if refined.value.is_finite() && refined.value < grid_value {
        Ok(refined)
    } else {
        Ok(Minimum {
            x: node(i),
            value: grid_value,
        })
    }
}
