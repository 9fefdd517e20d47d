//! mrlab: a desk-scale numerical laboratory for two-dimensional
//! Menshov-Rademacher maximal operators over families of lattice index sets.
//!
//! The crate provides exact lattice geometry for the triangle and rectangle
//! families, a finite-dimensional model of the maximal operator on weighted
//! discrete measure spaces, an alternating-maximization estimator producing
//! lower bounds for the operator norm, and certificate arithmetic for the
//! recursive upper bounds (quadratic-form eigenvalue, unrolled recursions,
//! divide-and-conquer exponents).

pub mod certificates;
pub mod cli;
pub mod error;
pub mod estimator;
pub mod geometry;
pub mod instance;
pub mod operator;
pub mod svg;

pub use error::{Error, Result};
