//! Giant-component analysis toolkit: distribution files, Monte Carlo
//! experiments against fixed-point theory, randomized verification suites
//! and the `giantmax` command line.
//!
//! The numerical kernels live in [`giantmax_core`] and are re-exported as
//! [`core`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub use giantmax_core as core;

pub mod cli;
mod error;
pub mod format;
pub mod montecarlo;
pub mod suites;

pub use error::{Error, Result};
