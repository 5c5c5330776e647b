//! Kissing configurations from the Leech lattice.
//!
//! The crate enumerates the minimal vectors of `Λ24`, searches for large
//! subsets with pairwise inner product at most 1, spreads such a subset into
//! a disjoint family with lattice automorphisms, computes the resulting
//! kissing-number lower bounds in dimensions 25 through 31, and verifies the
//! explicit higher-dimensional configurations in exact integer arithmetic.
//!
//! Coordinates are stored multiplied by `√8`, so inner products are integers
//! eight times the true value.

pub mod bounds;
pub mod certify;
pub mod config;
pub mod conway;
pub mod error;
pub mod family;
pub mod golay;
pub mod io;
pub mod kernel;
pub mod leech;
pub mod roots;
pub mod search;

pub use error::{Error, Result};
