//! Registry of named, runnable verifications of concrete formulas and
//! criteria on finite instances. Each check returns PASS or FAIL with the
//! instances it covered, replayable counterexamples and notes.

mod groups;
mod structures;
mod sym;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogError;
use crate::criteria::CriteriaError;
use crate::groups::GroupError;
use crate::logic::LogicError;
use crate::reduced::ReducedError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    Unknown(String),
    #[error("unknown scale `{0}` (expected ci or full)")]
    Scale(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Reduced(#[from] ReducedError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

/// Instance profile. `Full` adds `S7` (and longer chains) everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Ci,
    Full,
}

impl FromStr for Scale {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ci" => Ok(Scale::Ci),
            "full" => Ok(Scale::Full),
            _ => Err(VerifyError::Scale(s.into())),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Ci => "ci",
            Scale::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceResult {
    pub instance: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub citation: String,
    pub scale: Scale,
    pub instances: Vec<InstanceResult>,
    pub counterexamples: Vec<String>,
    /// Readings taken and known deviations of the literal statement.
    pub notes: Vec<String>,
    pub millis: u64,
}

/// Collects instance outcomes while a check runs.
#[derive(Default)]
pub(crate) struct Report {
    instances: Vec<InstanceResult>,
    counterexamples: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    pub(crate) fn instance(&mut self, instance: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.instances.push(InstanceResult { instance: instance.into(), ok, detail: detail.into() });
    }

    pub(crate) fn counterexample(&mut self, text: impl Into<String>) {
        self.counterexamples.push(text.into());
    }

    /// Records `ok` as an instance, with `counterexample` when it fails.
    pub(crate) fn expect(&mut self, instance: impl Into<String>, ok: bool, detail: impl Into<String>, counterexample: impl FnOnce() -> String) {
        let instance = instance.into();
        if !ok {
            self.counterexamples.push(format!("{instance}: {}", counterexample()));
        }
        self.instance(instance, ok, detail);
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

type Runner = fn(Scale, &mut Report) -> Result<(), VerifyError>;

/// A registered check.
pub struct Check {
    pub name: &'static str,
    pub citation: &'static str,
    run: Runner,
}

const REGISTRY: &[Check] = &[
    Check {
        name: "sym.two_cycles",
        citation: "a positive formula defines the transpositions together with e in every S_n, n != 2, 6",
        run: sym::two_cycles,
    },
    Check {
        name: "sym.k_cycles",
        citation: "k-cycles are the products of k-1 distinct transpositions with path-shaped non-commutation",
        run: sym::k_cycles,
    },
    Check {
        name: "sym.identifying_pairs",
        citation: "identifying pairs and the relation `identify the same point` are positively definable",
        run: sym::identifying_pairs,
    },
    Check {
        name: "sym.transposition_assignment",
        citation: "the transposition carrying one base point to another is definable through identifying pairs",
        run: sym::transposition_assignment,
    },
    Check {
        name: "sym.type_isolation",
        citation: "the type of a tuple in S_n, n >= 4, n != 6, is isolated by a formula over base points",
        run: sym::type_isolation,
    },
    Check {
        name: "sym.s3_patching_supports",
        citation: "reduced powers of S3: support splits into 2- and 3-torsion parts; patching along disjoint sets",
        run: sym::s3_patching_supports,
    },
    Check {
        name: "logic.zsupp_formula",
        citation: "in pure sets with at least three elements, x = z -> y = w is equivalent to a positive formula",
        run: structures::zsupp_formula,
    },
    Check {
        name: "rps.formulas",
        citation: "rock-paper-scissors magma: the loser map and x = t -> y = t are positively definable",
        run: structures::rps_formulas,
    },
    Check {
        name: "order.formula",
        citation: "linear orders without maximum: an implication between equalities is equivalent to an h-formula",
        run: structures::order_formula,
    },
    Check {
        name: "group.q8_boolean",
        citation: "class centralizers equal to the center interpret the support Boolean algebra; Q8 still fails",
        run: groups::q8_boolean,
    },
    Check {
        name: "criteria.catalog_verdicts",
        citation: "recognizing-coordinates verdicts for the small catalog",
        run: groups::catalog_verdicts,
    },
];

pub fn checks() -> &'static [Check] {
    REGISTRY
}

pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).collect()
}

pub fn find(name: &str) -> Result<&'static Check, VerifyError> {
    REGISTRY.iter().find(|c| c.name == name).ok_or_else(|| VerifyError::Unknown(name.into()))
}

impl Check {
    pub fn run(&self, scale: Scale) -> Result<CheckResult, VerifyError> {
        let start = Instant::now();
        let mut report = Report::default();
        (self.run)(scale, &mut report)?;
        let ok = report.counterexamples.is_empty() && report.instances.iter().all(|i| i.ok);
        Ok(CheckResult {
            name: self.name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            citation: self.citation.into(),
            scale,
            instances: report.instances,
            counterexamples: report.counterexamples,
            notes: report.notes,
            millis: start.elapsed().as_millis() as u64,
        })
    }
}

pub fn run(name: &str, scale: Scale) -> Result<CheckResult, VerifyError> {
    find(name)?.run(scale)
}

/// Every registered check, in parallel; results in registry order.
pub fn run_all(scale: Scale) -> Result<Vec<CheckResult>, VerifyError> {
    REGISTRY.par_iter().map(|c| c.run(scale)).collect()
}
