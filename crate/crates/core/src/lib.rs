//! Pointwise algebra behind lower eigenvalue estimates for the Hodge-Laplacian
//! on submanifolds of arbitrary codimension.
//!
//! Everything here is a pure function on small dense data: forms on ℝⁿ in an
//! orthonormal frame, algebraic curvature tensors, second fundamental forms,
//! and the closed-form bounds and thresholds built from them. The crate is
//! `no_std` (it needs `alloc`); IO, randomized suites and the command line
//! live in the `hodgebound` crate.
//!
//! Frame indices are 0-based throughout: `e_0, …, e_{n-1}` and their duals.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bounds;
pub mod curvature;
mod error;
pub mod exterior;
pub mod linalg;
pub(crate) mod math;
pub mod models;
pub mod submanifold;

pub use error::{Error, Result};

/// Default absolute tolerance for floating-point identities on unit-scale data.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance used when validating symmetries of input data.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Largest frame dimension the bitmask basis can represent.
pub const MAX_DIM: usize = 30;

/// Default cap on the frame dimension for user-supplied data (`C(12,6) = 924`).
pub const DEFAULT_DIM_CAP: usize = 12;
