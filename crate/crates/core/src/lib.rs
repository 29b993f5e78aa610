//! Occupation times of Brownian motion outside `(-1, 1)`.
//!
//! The crate bundles closed-form eigen-series and asymptotics ([`analytic`]),
//! the complex Laplace layer ([`laplace`]), numerical inversion ([`inversion`]),
//! a reproducible Monte Carlo engine ([`montecarlo`]) and named verification
//! suites ([`experiments`], [`acceptance`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod analytic;
pub mod error;
pub mod experiments;
pub mod inversion;
pub mod laplace;
pub mod montecarlo;
pub mod quad;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
