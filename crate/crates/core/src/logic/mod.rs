//! Signatures, finite structures, formulas, evaluation and h-formulas.

mod eval;
mod formula;
mod hform;
mod parser;
pub mod random;
pub mod reference;
mod signature;
mod structure;

pub use eval::{
    definable_set, equivalent_in, equivalent_in_renamed, eval, valid_in, Assignment, Evaluator,
};
pub use formula::{alpha_eq, alpha_eq_with, Formula, Kind, Term};
pub use hform::{classify_h, Derivation, HCertificate, HRefusal};
pub use parser::parse_formula;
pub use signature::{Signature, Symbol, IDENTITY, INV, MUL};
pub use structure::{tuple_index, FiniteStructure, FunctionTable, Interp, RelationTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("lexical error at {pos}: {msg}")]
    Lex { pos: usize, msg: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("no value bound to variable `{0}`")]
    MissingBinding(String),
    #[error("symbol not interpreted in this structure: {0}")]
    SignatureMismatch(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}

/// `ψ_≠(x,y) := (∀z)(x = y → z = y)`, equivalent to `x ≠ y` once the
/// universe has two elements. `z` must be fresh for `x` and `y`.
pub fn psi_neq(x: &str, y: &str, z: &str) -> Formula {
    Formula::forall(
        z,
        Formula::implies(Formula::eq(Term::var(x), Term::var(y)), Formula::eq(Term::var(z), Term::var(y))),
    )
}
