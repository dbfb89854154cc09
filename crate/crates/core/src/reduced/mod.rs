//! Reduced products `Π M_i / 𝓘` over finite index sets, their quotient
//! Boolean algebras and support functions.

mod checks;
mod ideal;
mod product;
pub mod random;

pub use checks::{
    certify_for, defines_support_relation, largest_s_support, los_check, los_check_all, sentence_mod_ideal,
    support_identities, support_table, IdentityReport, LargestSupport, LosReport, ScanMode, SupportCounterexample,
    SupportRelationReport,
};
pub use ideal::{mask_to_vec, FiniteIdeal, QuotientBA, SupportValue, MAX_INDICES};
pub use product::{ReducedProduct, Restriction, PRODUCT_BOUND};

use thiserror::Error;

use crate::logic::LogicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReducedError {
    #[error("index set size {0} out of range (1..=10)")]
    IndexRange(usize),
    #[error("ideal is improper: its closure contains the whole index set")]
    Improper,
    #[error("product too large (bound {bound})")]
    TooLarge { bound: usize },
    #[error("restriction to the zero support")]
    ZeroSupport,
    #[error("certificate missing: {0}")]
    NotH(String),
    #[error("obligation {index} fails in factor {factor}: {formula}")]
    Obligation { index: usize, factor: usize, formula: String },
    #[error("formula is not satisfiable in the reduced product")]
    Unsatisfiable,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// Smallest ideal on `{0..k}` containing `generators`.
pub fn make_ideal(k: usize, generators: &[Vec<usize>]) -> Result<FiniteIdeal, ReducedError> {
    FiniteIdeal::new(k, generators)
}

pub fn quotient_algebra(ideal: &FiniteIdeal) -> QuotientBA {
    QuotientBA::new(ideal)
}

pub fn reduced_product(
    factors: Vec<crate::logic::FiniteStructure>,
    ideal: &FiniteIdeal,
) -> Result<ReducedProduct, ReducedError> {
    ReducedProduct::new(factors, ideal)
}
