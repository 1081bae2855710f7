//! Metric approximations of groups: bi-invariant metric families, product and
//! wreath maps between them, approximations of actions, halo products, and the
//! constructive pipeline that approximates a semidirect product from
//! approximations of its pieces.
//!
//! Every quantitative claim is checked by a verifier returning a
//! [`report::CheckReport`]; exact rational arithmetic is used wherever the
//! metric is rational-valued.

pub mod actions;
pub mod amalgam;
pub mod approx;
pub mod compat;
pub mod error;
pub mod graph;
pub mod group;
pub mod halo;
pub mod metric;
pub mod perm;
pub mod rational;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use perm::Perm;
pub use rational::{Distance, Rational};
pub use report::{CheckReport, Status};
