//! Structural algorithms on set families: linear closure, atoms, strong-subfamily
//! extraction, and the defect-graph / Gram-matrix analyses.

use thiserror::Error;

use crate::family::{FamilyError, Violation};
use crate::gf::GfError;

pub mod atoms;
pub mod closure;
pub mod defect;
pub mod extraction;

pub use atoms::{atom_decomposition, AtomDecomposition};
pub use closure::{closure_dim, linear_closure};
pub use defect::{
    component_gram_analysis, defect_analytics, independence_certificate_1defect, pair_decomposition_1defect,
    Certificate, ComponentReport, DefectCase, DefectReport, GramReport, PairDecomposition,
};
pub use extraction::{extract_strong_subfamily, skew_oddtown_check, Extraction, RemovalRound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("NotKWise: the input is not k-wise ({0})")]
    NotKWise(Violation),
    #[error("LengthMismatch: {0} R-sets but {1} B-sets")]
    LengthMismatch(usize, usize),
    #[error("NotOneDefect: {0}")]
    NotOneDefect(Violation),
    #[error("NoDefectPairs: the family is an oddtown, so |A| ≤ n applies instead")]
    NoDefectPairs,
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Gf(#[from] GfError),
}
