//! Randomized zero forcing on weighted directed graphs.
//!
//! A white vertex turns blue in a round with probability equal to the fraction of its
//! incoming weight that comes from blue vertices. This crate provides the graph model,
//! seeded simulation, exact expected propagation times by subset dynamic programming,
//! Monte Carlo estimation, family generators with closed-form oracles, and bound
//! calculators.

pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod estimator;
pub mod exact;
pub mod families;
pub mod graph;
pub mod process;
pub mod verify;

pub use error::{Result, RzfError};
pub use estimator::{mc_ept, McEstimate};
pub use exact::{exact_ept, hitting_table, min_ept, singleton_profile, EptValue, ExactSolver, HittingTable};
pub use graph::{BlueSet, VertexId, WeightedDigraph};
