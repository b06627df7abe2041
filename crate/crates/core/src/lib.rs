//! Minimum dominator colorings of oriented trees.
//!
//! A dominator coloring of a digraph is a proper coloring in which every
//! vertex with an out-neighbor has some entire color class inside its
//! out-neighborhood. This crate computes the minimum number of colors
//! exactly (with independently checkable certificates), evaluates the known
//! closed forms for rooted trees, stars, generalized stars and caterpillars,
//! and runs exhaustive verification campaigns over small trees.

pub mod canon;
pub mod closed_forms;
pub mod coloring;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod solver;

pub use coloring::{Color, Coloring, DominatorCertificate, Rejection, Violation, Witness};
pub use error::{Error, Result};
pub use graph::{OrientedTree, RootClassification, RootedMode, Vertex};
pub use solver::{solve_exact, SolveOptions, SolveResult};
