//! Braid words, Markov traces, knot-group presentations and certificates of membership in
//! root-closed, conjugacy-closed submonoids, for closures of 1-bridge braids and their
//! satellites.

pub mod braid;
pub mod cli;
pub mod markov;
pub mod error;
pub mod invariants;
pub mod knotgroup;
pub mod ordercert;

pub use error::{Error, Result};
