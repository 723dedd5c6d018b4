//! Nilpotent-orbit combinatorics for Sp(2n) and SO(N): symbols, the
//! generalized Springer correspondence, the max/min constituent algorithms
//! and the tempered dual orbit, with a Green-function oracle for checking
//! them at small rank.

pub mod az;
pub mod duality;
pub mod exceptional;
pub mod greens;
pub mod orbits;
pub mod partitions;
pub mod symbols;

pub use orbits::{Degenerate, GroupKind, MarkedPartition, Sign};
pub use partitions::{Partition, TailSeq};
pub use symbols::{Bipartition, FamilyKey, Symbol};
