use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::LogicError;

/// A named symbol with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: &str, arity: usize) -> Self {
        Symbol { name: name.to_string(), arity }
    }
}

/// Relation, function and constant symbols of a first-order language.
///
/// The binary function named [`MUL`] is the one written infix as `*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct Signature {
    #[serde(default)]
    pub relations: Vec<Symbol>,
    #[serde(default)]
    pub functions: Vec<Symbol>,
    #[serde(default)]
    pub constants: Vec<String>,
}

/// Name of the function symbol written as infix `*`.
pub const MUL: &str = "mul";
/// Name of the group inverse.
pub const INV: &str = "inv";
/// Name of the group identity.
pub const IDENTITY: &str = "e";

impl Signature {
    pub fn new(
        relations: Vec<Symbol>,
        functions: Vec<Symbol>,
        constants: Vec<String>,
    ) -> Result<Self, LogicError> {
        let sig = Signature { relations, functions, constants };
        sig.validate()?;
        Ok(sig)
    }

    pub fn validate(&self) -> Result<(), LogicError> {
        let mut seen = BTreeSet::new();
        let names = self
            .relations
            .iter()
            .map(|s| &s.name)
            .chain(self.functions.iter().map(|s| &s.name))
            .chain(self.constants.iter());
        for name in names {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(LogicError::Invalid(format!("bad symbol name `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(LogicError::Invalid(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(())
    }

    /// `{·, inv, e}`.
    pub fn group() -> Self {
        Signature {
            relations: vec![],
            functions: vec![Symbol::new(MUL, 2), Symbol::new(INV, 1)],
            constants: vec![IDENTITY.to_string()],
        }
    }

    /// The empty language (pure sets).
    pub fn pure() -> Self {
        Signature::default()
    }

    /// A single binary operation written `*`.
    pub fn magma() -> Self {
        Signature { relations: vec![], functions: vec![Symbol::new(MUL, 2)], constants: vec![] }
    }

    /// A single binary relation `Le`.
    pub fn order() -> Self {
        Signature { relations: vec![Symbol::new("Le", 2)], functions: vec![], constants: vec![] }
    }

    pub fn relation(&self, name: &str) -> Option<(usize, usize)> {
        self.relations.iter().position(|s| s.name == name).map(|i| (i, self.relations[i].arity))
    }

    pub fn function(&self, name: &str) -> Option<(usize, usize)> {
        self.functions.iter().position(|s| s.name == name).map(|i| (i, self.functions[i].arity))
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    pub fn is_functional(&self) -> bool {
        self.relations.is_empty()
    }
}
