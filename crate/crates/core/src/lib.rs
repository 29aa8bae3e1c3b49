//! Numerical kernels for the giant component of two random-graph families:
//! Poissonian (rank-1 inhomogeneous) random graphs driven by a finite-atom
//! weight law, and thinned configuration models driven by a finite degree
//! pmf.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * [`dist`]: finite-atom weight and degree laws, size biasing,
//! * [`pgf`]: exact probability generating functions and thinning,
//! * [`fixpoint`]: extinction probabilities `z` and non-giant fractions `q`,
//! * [`optimizer`]: the critical mean `mu_c`, optimal weight and degree laws,
//!   the edge-budget analysis and the crossing check,
//! * [`graph`] and [`components`]: seeded finite-n graph samplers and a
//!   disjoint-set component census.
//!
//! IO, file formats, Monte Carlo orchestration and the CLI live in the
//! `giantmax` crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod components;
pub mod dist;
mod error;
pub mod fixpoint;
pub mod graph;
pub mod optimizer;
pub mod pgf;
pub mod quad;
pub mod rng;
pub mod search;

pub use components::{ComponentCensus, DisjointSets};
pub use dist::{DegreeDistribution, Distribution, WeightDistribution};
pub use error::{Error, Result};
pub use fixpoint::{Degeneracy, FixedPointResult, RootMethod};
pub use graph::{GraphModel, GraphSample};
pub use pgf::Pgf;
