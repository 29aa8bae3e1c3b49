//! Finite-atom weight laws and finite-support degree laws.

use alloc::vec::Vec;

use crate::pgf::Pgf;
use crate::{Error, Result};

/// Masses may miss one by at most this much; they are then renormalized.
pub const MASS_TOLERANCE: f64 = 1e-9;
pub const MAX_WEIGHT_ATOMS: usize = 64;
pub const DEFAULT_DEGREE_CAP: usize = 10_000;

fn normalize(masses: &mut [f64]) -> Result<()> {
    let sum: f64 = masses.iter().sum();
    if !((sum - 1.0).abs() <= MASS_TOLERANCE) {
        return Err(Error::NotNormalized(sum));
    }
    if sum != 1.0 {
        masses.iter_mut().for_each(|m| *m /= sum);
    }
    Ok(())
}

fn check_mass(p: f64) -> Result<()> {
    if p.is_nan() || p < 0.0 || p.is_infinite() {
        return Err(Error::NegativeMass(p));
    }
    Ok(())
}

/// Law of a nonnegative vertex weight `X` with finitely many atoms.
///
/// Atoms are distinct, sorted ascending and carry strictly positive mass.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightDistribution {
    atoms: Vec<(f64, f64)>,
}

impl WeightDistribution {
    /// Builds a law from `(x, mass)` pairs. Zero masses are dropped and
    /// repeated locations merged.
    pub fn new<I: IntoIterator<Item = (f64, f64)>>(atoms: I) -> Result<Self> {
        let mut raw: Vec<(f64, f64)> = Vec::new();
        for (x, p) in atoms {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::InvalidAtom(x));
            }
            check_mass(p)?;
            if p > 0.0 {
                raw.push((x, p));
            }
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (x, p) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += p,
                _ => merged.push((x, p)),
            }
        }
        if merged.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if merged.len() > MAX_WEIGHT_ATOMS {
            return Err(Error::TooManyAtoms {
                len: merged.len(),
                cap: MAX_WEIGHT_ATOMS,
            });
        }
        let mut masses: Vec<f64> = merged.iter().map(|a| a.1).collect();
        normalize(&mut masses)?;
        for (atom, m) in merged.iter_mut().zip(masses) {
            atom.1 = m;
        }
        Ok(WeightDistribution { atoms: merged })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new([(x, 1.0)])
    }

    /// `P(X = lambda) = mu / lambda`, remaining mass at zero.
    pub fn two_point(mu: f64, lambda: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain {
                what: "mean",
                value: mu,
            });
        }
        if !(lambda >= mu) || !lambda.is_finite() {
            return Err(Error::Domain {
                what: "atom location",
                value: lambda,
            });
        }
        let mass = mu / lambda;
        Self::new([(lambda, mass), (0.0, 1.0 - mass)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(x, p)| x * p).sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.atoms.iter().map(|&(x, p)| x * x * p).sum()
    }

    pub fn mass_at_zero(&self) -> f64 {
        self.atoms
            .first()
            .filter(|a| a.0 == 0.0)
            .map_or(0.0, |a| a.1)
    }

    /// Law of the size-biased weight: atom `x` gets mass `x p / mean`.
    pub fn size_biased(&self) -> Result<Self> {
        let mean = self.mean();
        if !(mean > 0.0) {
            return Err(Error::SizeBiasUndefined);
        }
        Self::new(self.atoms.iter().map(|&(x, p)| (x, x * p / mean)))
    }

    /// Law of `factor * X`. A graph built from `X` and then edge-thinned with
    /// retention `factor` has the same limit as one built from this law.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::Domain {
                what: "scale factor",
                value: factor,
            });
        }
        Self::new(self.atoms.iter().map(|&(x, p)| (factor * x, p)))
    }

    /// Generating function of the mixed Poisson degree, `E[exp(-(1-s) X)]`.
    pub fn pgf(&self) -> Pgf {
        Pgf::MixedPoisson(self.clone())
    }

    /// Generating function of the forward degree `D̄ - 1`, which is mixed
    /// Poisson on the size-biased weight.
    pub fn size_biased_pgf(&self) -> Result<Pgf> {
        Ok(Pgf::MixedPoisson(self.size_biased()?))
    }

    /// Mean of the forward degree. For mixed Poisson this is `E[X^2]/E[X]`.
    pub fn offspring_mean(&self) -> Result<f64> {
        let mean = self.mean();
        if !(mean > 0.0) {
            return Err(Error::SizeBiasUndefined);
        }
        Ok(self.second_moment() / mean)
    }
}

/// Law of an integer degree `D` with support in `0..=max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pmf: Vec<f64>,
}

impl DegreeDistribution {
    pub fn new(pmf: Vec<f64>) -> Result<Self> {
        Self::with_cap(pmf, DEFAULT_DEGREE_CAP)
    }

    /// As [`DegreeDistribution::new`] with an explicit bound on the support.
    pub fn with_cap(mut pmf: Vec<f64>, cap: usize) -> Result<Self> {
        for &p in &pmf {
            check_mass(p)?;
        }
        while pmf.len() > 1 && pmf.last() == Some(&0.0) {
            pmf.pop();
        }
        if pmf.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if pmf.len() - 1 > cap {
            return Err(Error::DegreeCapExceeded {
                max_degree: pmf.len() - 1,
                cap,
            });
        }
        normalize(&mut pmf)?;
        Ok(DegreeDistribution { pmf })
    }

    pub fn constant(k: usize) -> Result<Self> {
        let mut pmf = alloc::vec![0.0; k + 1];
        pmf[k] = 1.0;
        Self::new(pmf)
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn max_degree(&self) -> usize {
        self.pmf.len() - 1
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.pmf.get(k).copied().unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(k, &p)| k as f64 * p)
            .sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(k, &p)| (k * k) as f64 * p)
            .sum()
    }

    /// `E[D (D - 1)]`.
    pub fn factorial_moment2(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .skip(2)
            .map(|(k, &p)| (k * (k - 1)) as f64 * p)
            .sum()
    }

    /// Law of `D̄`, with `P(D̄ = k) = k P(D = k) / E[D]`.
    pub fn size_biased(&self) -> Result<Self> {
        let mean = self.mean();
        if !(mean > 0.0) {
            return Err(Error::SizeBiasUndefined);
        }
        let pmf = self
            .pmf
            .iter()
            .enumerate()
            .map(|(k, &p)| k as f64 * p / mean)
            .collect();
        Self::with_cap(pmf, self.max_degree().max(DEFAULT_DEGREE_CAP))
    }

    /// Law of the forward degree `D̄ - 1`.
    pub fn forward(&self) -> Result<Self> {
        let biased = self.size_biased()?;
        let pmf = biased.pmf[1..].to_vec();
        if pmf.is_empty() {
            return Err(Error::SizeBiasUndefined);
        }
        Ok(DegreeDistribution { pmf })
    }

    /// Mean of `D̄ - 1`, i.e. `E[D (D - 1)] / E[D]`, computed from the atoms.
    pub fn offspring_mean(&self) -> Result<f64> {
        let mean = self.mean();
        if !(mean > 0.0) {
            return Err(Error::SizeBiasUndefined);
        }
        Ok(self.factorial_moment2() / mean)
    }

    pub fn pgf(&self) -> Pgf {
        Pgf::Degree(self.pmf.clone())
    }

    /// Generating function of `D̄ - 1`.
    pub fn size_biased_pgf(&self) -> Result<Pgf> {
        Ok(Pgf::Degree(self.forward()?.pmf))
    }

    /// True when all mass sits on `{0, 2}` and degree two is charged. With no
    /// thinning this model has no convergent largest-component fraction.
    pub fn is_supported_on_zero_two(&self) -> bool {
        self.prob(2) > 0.0
            && self
                .pmf
                .iter()
                .enumerate()
                .all(|(k, &p)| k == 0 || k == 2 || p == 0.0)
    }
}

/// Either input law the models accept.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Weight(WeightDistribution),
    Degree(DegreeDistribution),
}

impl Distribution {
    pub fn mean(&self) -> f64 {
        match self {
            Distribution::Weight(w) => w.mean(),
            Distribution::Degree(d) => d.mean(),
        }
    }

    pub fn pgf(&self) -> Pgf {
        match self {
            Distribution::Weight(w) => w.pgf(),
            Distribution::Degree(d) => d.pgf(),
        }
    }

    pub fn size_biased_pgf(&self) -> Result<Pgf> {
        match self {
            Distribution::Weight(w) => w.size_biased_pgf(),
            Distribution::Degree(d) => d.size_biased_pgf(),
        }
    }

    pub fn offspring_mean(&self) -> Result<f64> {
        match self {
            Distribution::Weight(w) => w.offspring_mean(),
            Distribution::Degree(d) => d.offspring_mean(),
        }
    }
}

impl From<WeightDistribution> for Distribution {
    fn from(w: WeightDistribution) -> Self {
        Distribution::Weight(w)
    }
}

impl From<DegreeDistribution> for Distribution {
    fn from(d: DegreeDistribution) -> Self {
        Distribution::Degree(d)
    }
}
