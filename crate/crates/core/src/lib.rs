//! Monte Carlo laboratory for load-surge cascading failures on random graphs.
//!
//! Graphs come from the configuration model ([`graph`], [`generators`]). A
//! uniformly random edge-removal order is turned into a [`removal::RemovalTrace`]
//! that records the giant component at every step; the [`cascade`] engine runs
//! the load-surge dynamics on top of the trace, [`walk`] holds the random-walk
//! representation, [`theory`] the limit constants, and [`harness`] the
//! replicated experiments that compare the two.

pub mod cascade;
pub mod dsu;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod removal;
pub mod rng;
pub mod stats;
pub mod theory;
pub mod walk;

pub use error::{Error, Result};
