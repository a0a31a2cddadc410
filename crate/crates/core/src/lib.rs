//! Decomposition of via layouts into lithography patterning steps.
//!
//! A via layout is a set of circular vias on one metal cut layer. Vias that
//! sit too close together cannot be printed in the same exposure, but short
//! chains of vias at directed-self-assembly (DSA) pitch can be merged into a
//! single guiding pattern and printed together. Minimizing the number of
//! exposures is then a generalized coloring problem: partition the vias into
//! color classes, where each class splits into small via groups (paths in the
//! DSA graph) that are pairwise free of conflicts.
//!
//! The pipeline is: [`layout`] (vias, distances, generation) -> [`conflict`]
//! (conflict/DSA graph construction and stats) -> [`groups`] (feasible group
//! catalogs) -> either [`solver`] (native exact branch and bound) or
//! [`formulations`] (integer-programming models exported as LP files).

pub mod conflict;
pub mod formulations;
pub mod groups;
pub mod layout;
pub mod solver;

pub use conflict::ConflictGraph;
pub use groups::{Group, GroupCatalog, GroupMode};
pub use layout::{Layout, Tech, TechRules, Via};
pub use solver::{ColoringSolution, SolveBudget};
