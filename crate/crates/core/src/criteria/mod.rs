//! Recognizing-coordinates analysis of finite groups: sufficient criteria,
//! obstructions, and a class-level verdict combining them.

mod obstruct;
mod single;
mod star;
mod verdict;

pub use obstruct::{
    obstruction_center_hom, obstruction_decomposable, obstruction_nilpotent, Obstruction, ObstructionKind,
    ObstructionWitness,
};
pub use single::{
    crit_bounded_torsion, crit_conj_centralizer, crit_p, crit_perfect_dagger, relative_centralizer_equivalence,
    torsion_elements, transposition_set, uniform_formula_check,
};
pub use star::{perfect_star_equivalence, verify_perfect_star, PerfectStar, StarReport};
pub use verdict::{
    class_verdict, class_verdict_with, criteria_order, structure_verdict, verdict_for_names, Verdict, VerdictOptions,
    Witness,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogError;
use crate::groups::GroupError;
use crate::logic::LogicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Precondition(String),
}

/// A sufficient condition for recognizing coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Criterion {
    /// `C_G(a^G) = {e}` for every `a != e`.
    ConjCentralizer,
    /// Order-`p` elements exist and all have trivial class centralizer.
    Torsion { p: usize },
    /// Nontrivial `m`-torsion elements are separated by conjugates, and
    /// every element is a product of `n` of them.
    BoundedTorsion { m: usize, n: usize },
    /// Perfect, commutator width `<= m`, nonabelian normal subgroups have
    /// centralizer `Z(G)`.
    PerfectDagger { m: usize },
    /// The relative-centralizer formula over transpositions and `e`.
    UniformFormula,
    /// A formula for `x = t -> y = t` in h-form (structures, not groups).
    EqualityImplication,
}

impl Criterion {
    pub fn citation(&self) -> &'static str {
        match self {
            Criterion::ConjCentralizer => "groups with C_G(a^G) = {e} for all a != e recognize coordinates",
            Criterion::Torsion { .. } => {
                "groups with order-p elements, each with C_G(a^G) = {e}, recognize coordinates"
            }
            Criterion::BoundedTorsion { .. } => {
                "separated m-torsion generating in n steps gives recognition of coordinates"
            }
            Criterion::PerfectDagger { .. } => {
                "perfect groups of bounded commutator width whose nonabelian normal subgroups have centralizer Z(G) recognize coordinates"
            }
            Criterion::UniformFormula => "symmetric groups S_n, n >= 3, recognize coordinates",
            Criterion::EqualityImplication => "x = t -> y = t has an h-form, so supports are interpretable",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::ConjCentralizer => write!(f, "conj_centralizer"),
            Criterion::Torsion { p } => write!(f, "torsion(p={p})"),
            Criterion::BoundedTorsion { m, n } => write!(f, "bounded_torsion(m={m},n={n})"),
            Criterion::PerfectDagger { m } => write!(f, "perfect_dagger(m={m})"),
            Criterion::UniformFormula => write!(f, "uniform_formula"),
            Criterion::EqualityImplication => write!(f, "equality_implication"),
        }
    }
}

/// Evidence that a criterion holds for one group.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub criterion: Criterion,
    pub group: String,
    pub detail: String,
    /// Labels of the elements the criterion is about (class representatives
    /// for class-based criteria).
    pub elements: Vec<String>,
    /// A formula for `x = e -> y = e` (or its analogue) the criterion supplies.
    pub formula: String,
}

/// Why a criterion does not hold.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub criterion: Criterion,
    pub group: String,
    pub reason: String,
    /// Label of a failing element or a description of a failing pair.
    pub witness: Option<String>,
    #[serde(skip)]
    pub elements: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CriterionOutcome {
    Pass(Certificate),
    Fail(Failure),
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CriterionOutcome::Pass(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CriterionOutcome::Pass(c) => Some(c),
            CriterionOutcome::Fail(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            CriterionOutcome::Pass(_) => None,
            CriterionOutcome::Fail(f) => Some(f),
        }
    }
}
