//! Tools for comparing optimal and 2-optimal tours of Euclidean TSP instances.
//!
//! The crate covers the full path from a point set to a checked dual
//! arborescence: instance generation and exact solving, 2-Opt local search,
//! uncrossing an optimal/2-optimal tour pair, partitioning the 2-optimal
//! edges against the optimal polygon, building weighted arborescences and
//! checking the length inequalities they are expected to satisfy.

pub mod cli;
pub mod dual_arbor;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod harness;
pub mod partition;
pub mod tsp;
pub mod two_opt;
pub mod uncross;

pub use error::{Error, Result};
pub use geometry::Point;
pub use tsp::{tour_length, Instance, Tour};
