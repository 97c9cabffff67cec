//! Geodesic-transitive digraphs: digraph primitives, permutation groups,
//! automorphism search, transitivity testers, constructions and checks.

pub mod construct;
pub mod digraph;
pub mod error;
pub mod group;
pub mod limits;
pub mod perm;
pub mod symmetry;
pub mod verify;

pub use digraph::{Digraph, SymmetryClass, Walk, WalkKind};
pub use error::{Error, Result};
pub use group::{BlockAction, GroupTable, NormalCandidates, Partition, PermGroup};
pub use limits::Limits;
pub use perm::Permutation;
