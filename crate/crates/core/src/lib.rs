//! Set families with restricted intersection parities: checkers, explicit
//! constructions, linear-algebra structure tools and an exhaustive search oracle.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod family;
pub mod format;
pub mod gf;
pub mod graph;
pub mod hadamard;
pub mod search;
pub mod structure;

pub use bitset::BitSet;
pub use family::{FamilyError, GroundSet, SetFamily, Verdict, Violation};
pub use gf::{GfError, GfMatrix, GfVector, PrimeModulus, Subspace};
