//! A desk-scale laboratory for clique factors and tilings.
//!
//! The crate decides and constructs `K_r`-factors and maximum `K_r`-tilings,
//! computes `l`-independence numbers exactly or by bounds, generates the
//! extremal graph families the factor problem is calibrated against, and
//! verifies the absorption-style predicates (absorbers, reachable sets, index
//! censuses, transferrals) and weighted-reduced-graph conditions used to
//! reason about them. Exhaustive searches are exact within explicit budgets
//! and report `unknown` rather than guessing; every randomized procedure is
//! reproducible from a seed.
//!
//! Compiled with the default `parallel` feature, data-parallel inner loops
//! (enumeration, Monte Carlo trials, multi-restart searches) fan out over
//! rayon; disabling the feature yields a dependency-light sequential build
//! with identical outputs.

pub mod absorption;
pub mod bitset;
pub mod budget;
pub mod cliques;
pub mod constructions;
pub mod exec;
pub mod factor;
pub mod format;
pub mod graph;
pub mod independence;
pub mod weighted;

pub use budget::{Budget, SearchStats, Ternary};
pub use graph::{Graph, GraphError, VertexSet};
