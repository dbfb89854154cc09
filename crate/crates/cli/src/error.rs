use std::path::PathBuf;

use coordlens_core::catalog::CatalogError;
use coordlens_core::criteria::CriteriaError;
use coordlens_core::graphprod::GraphError;
use coordlens_core::groups::GroupError;
use coordlens_core::logic::LogicError;
use coordlens_core::reduced::ReducedError;
use coordlens_core::verify::VerifyError;
use thiserror::Error;

/// Input and usage errors; all of them exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("cannot read {}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scale bound exceeded: {0}")]
    Bound(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl From<LogicError> for CliError {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::Lex { .. } | LogicError::Parse { .. } | LogicError::UnknownSymbol { .. } | LogicError::Arity { .. } => {
                CliError::Parse(e.to_string().trim_start_matches("parse error ").to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Group(g) => g.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ReducedError> for CliError {
    fn from(e: ReducedError) -> Self {
        match e {
            ReducedError::Logic(l) => l.into(),
            ReducedError::TooLarge { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::Group(g) => g.into(),
            CriteriaError::Logic(l) => l.into(),
            CriteriaError::Catalog(c) => c.into(),
            CriteriaError::Precondition(_) => CliError::Input(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Json(_) | GraphError::Syllable(..) => CliError::Parse(e.to_string()),
            GraphError::Catalog(c) => c.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Catalog(c) => c.into(),
            VerifyError::Group(g) => g.into(),
            VerifyError::Logic(l) => l.into(),
            VerifyError::Reduced(r) => r.into(),
            VerifyError::Criteria(c) => c.into(),
            VerifyError::Unknown(_) | VerifyError::Scale(_) => CliError::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
