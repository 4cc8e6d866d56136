//! levikit: a desk-scale laboratory for the Levi operator in C^2.
//!
//! The crate provides:
//! - grids, implicit domains, and second-order jets with the real/complex
//!   coordinate bridge ([`grid`], [`domain`], [`jet`]);
//! - pointwise Levi-type operators and viscosity sub/supersolution spot
//!   tests ([`ops`], [`viscosity`]);
//! - vanishing-viscosity Dirichlet solvers, extremal solutions via hull
//!   sweeps, and curvature obstruction detection ([`solver`]);
//! - probe-based hull computation, uniqueness diagnostics, and Reinhardt
//!   completion machinery ([`hulls`], [`reinhardt`], [`probes`]);
//! - level-set extraction, local-maximum-property testing, continuity
//!   principle probing and connectivity counts ([`geometry`]).
//!
//! Data-parallel kernels run on rayon when the default `parallel` feature
//! is enabled and fall back to sequential loops otherwise; both paths
//! produce bit-identical results.

pub mod boundary;
pub mod domain;
pub mod error;
pub mod exec;
pub mod fields;
pub mod geometry;
pub mod grid;
pub mod hulls;
pub mod io;
pub mod jet;
pub mod ops;
pub mod probes;
pub mod reinhardt;
pub mod solver;
pub mod viscosity;

pub use boundary::{BoundaryData, InterpRule};
pub use domain::Domain;
pub use error::{Error, Result};
pub use grid::{NodeKind, ScalarGrid};
pub use jet::{fd_jet, real_to_complex_jet, ComplexJet2, Jet2};
pub use ops::{
    identity_residual, levi_complete, levi_full, levi_graph, Curvature, OperatorKind,
};
