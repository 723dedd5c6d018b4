//! A brute-force oracle for small ranks: Weyl-group character tables, the
//! fake-degree pairing, the Lusztig–Shoji solve for Green-function matrices,
//! and the Pieri induction rule.

use thiserror::Error;

use crate::orbits::OrbitError;
use crate::symbols::{SymbolError, WeylType};

pub mod chartable;
pub mod pieri;
pub mod poly;
pub mod solve;
pub mod verify;

pub use chartable::CharTable;
pub use pieri::pieri_induce;
pub use poly::{Poly, PolyMatrix};
pub use solve::{lusztig_shoji, mult, omega_matrix, solve_family, solve_type_a, Certificate, FamilySolution};
pub use verify::{verify_theorems, verify_type_a, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreensError {
    #[error("rank {rank} of type {weyl} is above the oracle bound {bound}")]
    RankBound { weyl: WeylType, rank: u32, bound: u32 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("orbits from different groups or sizes")]
    Mismatch,
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}
