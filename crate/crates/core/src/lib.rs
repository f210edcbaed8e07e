//! Certificates and bounds for Nekrasov matrices.
//!
//! A Nekrasov matrix admits a positive diagonal scaling `S` turning it into a
//! strictly diagonally dominant matrix. This crate builds such scalings
//! ([`scaling`]), uses them to bound `||A^-1||_inf` and related quantities
//! ([`bounds`]) and to bound errors in linear complementarity problems
//! ([`lcp`]). Exact reference values come from [`oracle`].
//!
//! All row and column indices are zero-based.

// `!(x > 0.0)` is used on purpose so NaN fails the test
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod lcp;
pub mod matrix;
pub mod oracle;
pub mod profile;
pub mod random;
pub mod scaling;

pub use bounds::{BoundReport, Method};
pub use error::{Error, Result};
pub use lcp::{LcpBoundReport, LcpInstance};
pub use matrix::SquareMatrix;
pub use profile::{profile, NekrasovProfile};
pub use scaling::{EpsilonPlan, ScalingMatrix, Strategy};
