//! Probability generating functions on `[0, 1]`, evaluated exactly.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::dist::WeightDistribution;
use crate::{Error, Result};

/// A generating function on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Pgf {
    /// `s -> sum_k pmf[k] s^k`.
    Degree(Vec<f64>),
    /// `s -> E[exp(-(1 - s) X)]`, the mixed Poisson generating function.
    MixedPoisson(WeightDistribution),
    /// `s -> inner(1 - p + p s)`: the same law after independent
    /// retention of each unit with probability `p`.
    Thinned(Box<Pgf>, f64),
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

impl Pgf {
    /// Wraps `self` in a thinning by retention probability `p`. `p = 1` is
    /// the identity and returns `self` unchanged.
    pub fn thin(self, p: f64) -> Result<Pgf> {
        check_retention(p)?;
        if p == 1.0 {
            return Ok(self);
        }
        Ok(match self {
            // Nested thinning composes multiplicatively.
            Pgf::Thinned(inner, q) => Pgf::Thinned(inner, p * q),
            other => Pgf::Thinned(Box::new(other), p),
        })
    }

    /// Evaluates at `s`, which must lie in `[0, 1]`.
    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain {
                what: "pgf argument",
                value: s,
            });
        }
        Ok(self.value(s))
    }

    /// Evaluation without the domain check. Callers guarantee `s` in `[0, 1]`.
    pub(crate) fn value(&self, s: f64) -> f64 {
        self.raw_value(s).clamp(0.0, 1.0)
    }

    pub(crate) fn raw_value(&self, s: f64) -> f64 {
        match self {
            Pgf::Degree(pmf) => pmf.iter().rev().fold(0.0, |acc, &p| acc * s + p),
            Pgf::MixedPoisson(w) => w
                .atoms()
                .iter()
                .map(|&(x, p)| p * libm::exp(-(1.0 - s) * x))
                .sum(),
            Pgf::Thinned(inner, p) => inner.raw_value(1.0 - p * (1.0 - s)),
        }
    }

    /// Derivative at `s = 1`, i.e. the mean of the law, from the atoms.
    pub fn derivative_at_one(&self) -> f64 {
        match self {
            Pgf::Degree(pmf) => pmf.iter().enumerate().map(|(k, &p)| k as f64 * p).sum(),
            Pgf::MixedPoisson(w) => w.mean(),
            Pgf::Thinned(inner, p) => p * inner.derivative_at_one(),
        }
    }

    /// Derivative at an interior or boundary point, evaluated analytically.
    pub fn derivative(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain {
                what: "pgf argument",
                value: s,
            });
        }
        Ok(self.derivative_value(s))
    }

    pub(crate) fn derivative_value(&self, s: f64) -> f64 {
        match self {
            Pgf::Degree(pmf) => pmf
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &p)| acc * s + k as f64 * p),
            Pgf::MixedPoisson(w) => w
                .atoms()
                .iter()
                .map(|&(x, p)| p * x * libm::exp(-(1.0 - s) * x))
                .sum(),
            Pgf::Thinned(inner, p) => p * inner.derivative_value(1.0 - p * (1.0 - s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DegreeDistribution;
    use alloc::vec;

    #[test]
    fn degree_eval() {
        let f = DegreeDistribution::constant(3).unwrap().pgf();
        assert_eq!(f.eval(0.25).unwrap(), 0.015625);
        assert_eq!(f.eval(1.0).unwrap(), 1.0);
    }

    #[test]
    fn mixed_poisson_eval() {
        let f = WeightDistribution::point(2.0).unwrap().pgf();
        assert!((f.eval(0.0).unwrap() - libm::exp(-2.0)).abs() < 1e-16);
        assert!((f.eval(0.0).unwrap() - 0.135335).abs() < 1e-6);
    }

    #[test]
    fn thinned_eval() {
        let f = DegreeDistribution::constant(3).unwrap().pgf();
        let g = f.clone().thin(0.8).unwrap();
        assert!((g.eval(0.0625).unwrap() - 0.015625).abs() < 1e-16);
        let h = f.clone().thin(0.5).unwrap();
        assert_eq!(h.eval(0.0).unwrap(), 0.125);
        assert_eq!(f.clone().thin(1.0).unwrap(), f);
    }

    #[test]
    fn nested_thinning_composes() {
        let f = DegreeDistribution::constant(3).unwrap().pgf();
        let twice = f.clone().thin(0.5).unwrap().thin(0.5).unwrap();
        let once = f.thin(0.25).unwrap();
        for i in 0..=10 {
            let s = i as f64 / 10.0;
            assert!((twice.eval(s).unwrap() - once.eval(s).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        let f = DegreeDistribution::constant(1).unwrap().pgf();
        assert!(f.eval(1.5).is_err());
        assert!(f.eval(-0.1).is_err());
        assert!(f.eval(f64::NAN).is_err());
        assert!(f.clone().thin(0.0).is_err());
        assert!(f.thin(1.1).is_err());
    }

    #[test]
    fn size_biased_pgfs() {
        let d = DegreeDistribution::constant(3).unwrap();
        let fb = d.size_biased_pgf().unwrap();
        assert_eq!(fb.eval(0.5).unwrap(), 0.25);

        let d = DegreeDistribution::new(vec![0.26, 0.0, 0.72, 0.02]).unwrap();
        let fb = d.size_biased_pgf().unwrap();
        for i in 0..=8 {
            let s = i as f64 / 8.0;
            let expect = 0.96 * s + 0.04 * s * s;
            assert!((fb.eval(s).unwrap() - expect).abs() < 1e-15);
        }

        let w = WeightDistribution::two_point(1.2, 2.5).unwrap();
        let fb = w.size_biased_pgf().unwrap();
        for i in 0..=8 {
            let s = i as f64 / 8.0;
            assert!((fb.eval(s).unwrap() - libm::exp(-2.5 * (1.0 - s))).abs() < 1e-15);
        }
    }

    #[test]
    fn analytic_derivative_matches_mean() {
        let d = DegreeDistribution::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let f = d.pgf();
        assert!((f.derivative(1.0).unwrap() - d.mean()).abs() < 1e-15);
        assert!((f.derivative_at_one() - d.mean()).abs() < 1e-15);
        let g = f.thin(0.4).unwrap();
        assert!((g.derivative_at_one() - 0.4 * d.mean()).abs() < 1e-15);
    }
}
