//! Numerical laboratory for lower bounds on the weak (1,1) constant of the
//! centered cubic maximal operator in high dimension.
//!
//! The extremal object is the counting measure on the integer lattice: its
//! maximal function at a point of the unit cube is governed by the
//! statistical distribution of the coordinates, which connects the problem
//! to the empirical process of folded coordinates and, in the limit, to the
//! Brownian bridge. The crate provides:
//!
//! * [`lattice`] — exact evaluation of the lattice maximal function in
//!   log-space, with breakpoint sweeps, radius caps, and structured bounds;
//! * [`empirical`] — uniform sampling, the folded-coordinate empirical
//!   process, its exact normalized supremum, and excess-set volumes;
//! * [`bridge`] — Brownian bridge and discrete motion simulation, the
//!   iterated-logarithm experiment, and its analytic floor;
//! * [`bounds`] — the explicit bound chain, the minimal dimension ratio,
//!   the asymptotic constant pipeline with vacuity detection, and the
//!   sample-based estimators of the weak-type constant;
//! * [`experiments`] — the CLI experiment runners, deterministic
//!   worker-split Monte Carlo, and report persistence;
//! * [`oracle`] — brute-force reference evaluators for the test-suite.
//!
//! The upper-bound side of the theory (covering arguments) is out of scope;
//! this crate only measures and certifies lower bounds.

pub mod bounds;
pub mod bridge;
pub mod empirical;
pub mod error;
pub mod experiments;
pub mod lattice;
pub mod oracle;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
