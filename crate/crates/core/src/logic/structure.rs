use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

use super::{LogicError, Signature};

/// Read access to an interpreted finite universe `0..size`.
///
/// Implemented by [`FiniteStructure`] (tables) and by reduced products
/// (coordinatewise, without materialising tables).
pub trait Interp: Sync {
    fn size(&self) -> usize;
    fn signature(&self) -> &Signature;
    fn apply(&self, f: usize, args: &[u32]) -> u32;
    fn holds(&self, r: usize, args: &[u32]) -> bool;
    fn constant(&self, c: usize) -> u32;
    fn label(&self, a: u32) -> String {
        a.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    pub arity: usize,
    pub table: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    pub arity: usize,
    pub table: Vec<u32>,
}

/// Row-major position of a tuple in an `n^k` table.
#[inline]
pub fn tuple_index(n: usize, args: &[u32]) -> usize {
    args.iter().fold(0usize, |acc, &a| acc * n + a as usize)
}

/// A finite first-order structure given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    sig: Signature,
    labels: Vec<String>,
    relations: Vec<RelationTable>,
    functions: Vec<FunctionTable>,
    constants: Vec<u32>,
}

impl FiniteStructure {
    /// Tables are row-major over `n^arity`; one per symbol, in signature order.
    pub fn new(
        sig: Signature,
        labels: Vec<String>,
        relations: Vec<Vec<bool>>,
        functions: Vec<Vec<u32>>,
        constants: Vec<u32>,
    ) -> Result<Self, LogicError> {
        sig.validate()?;
        let n = labels.len();
        if n == 0 {
            return Err(LogicError::Invalid("universe must be nonempty".into()));
        }
        if relations.len() != sig.relations.len()
            || functions.len() != sig.functions.len()
            || constants.len() != sig.constants.len()
        {
            return Err(LogicError::Invalid("table count does not match signature".into()));
        }
        let relations = sig
            .relations
            .iter()
            .zip(relations)
            .map(|(s, t)| {
                if t.len() != n.pow(s.arity as u32) {
                    return Err(LogicError::Invalid(format!("relation `{}` has wrong table size", s.name)));
                }
                Ok(RelationTable { arity: s.arity, table: t })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let functions = sig
            .functions
            .iter()
            .zip(functions)
            .map(|(s, t)| {
                if t.len() != n.pow(s.arity as u32) {
                    return Err(LogicError::Invalid(format!("function `{}` is not total", s.name)));
                }
                if t.iter().any(|&v| v as usize >= n) {
                    return Err(LogicError::Invalid(format!("function `{}` leaves the universe", s.name)));
                }
                Ok(FunctionTable { arity: s.arity, table: t })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if constants.iter().any(|&c| c as usize >= n) {
            return Err(LogicError::Invalid("constant outside the universe".into()));
        }
        Ok(FiniteStructure { sig, labels, relations, functions, constants })
    }

    /// A pure set with `n` elements labelled `0..n`.
    pub fn pure_set(n: usize) -> Result<Self, LogicError> {
        Self::new(Signature::pure(), (0..n).map(|i| i.to_string()).collect(), vec![], vec![], vec![])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn relation_table(&self, r: usize) -> &RelationTable {
        &self.relations[r]
    }

    pub fn function_table(&self, f: usize) -> &FunctionTable {
        &self.functions[f]
    }

    pub fn constants(&self) -> &[u32] {
        &self.constants
    }

    /// Every relation nonempty and at least three elements.
    pub fn is_full(&self) -> bool {
        self.len() >= 3 && self.relations.iter().all(|r| r.table.iter().any(|&b| b))
    }

    pub fn to_json(&self) -> Value {
        let n = self.len();
        let mut rels = serde_json::Map::new();
        for (s, t) in self.sig.relations.iter().zip(&self.relations) {
            let tuples: Vec<Vec<u32>> = t
                .table
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| decode_tuple(n, s.arity, i))
                .collect();
            rels.insert(s.name.clone(), serde_json::to_value(tuples).unwrap());
        }
        let mut funs = serde_json::Map::new();
        for (s, t) in self.sig.functions.iter().zip(&self.functions) {
            funs.insert(s.name.clone(), serde_json::to_value(&t.table).unwrap());
        }
        let consts: BTreeMap<&str, u32> =
            self.sig.constants.iter().map(|c| c.as_str()).zip(self.constants.iter().copied()).collect();
        serde_json::json!({
            "signature": self.sig,
            "universe": self.labels,
            "relations": rels,
            "functions": funs,
            "constants": consts,
        })
    }

    /// Functions may be given flat (row-major) or, for arity 2, as a matrix.
    pub fn from_json(v: &Value) -> Result<Self, LogicError> {
        #[derive(Deserialize, Serialize)]
        struct Raw {
            signature: Signature,
            universe: Vec<String>,
            #[serde(default)]
            relations: BTreeMap<String, Vec<Vec<u32>>>,
            #[serde(default)]
            functions: BTreeMap<String, Value>,
            #[serde(default)]
            constants: BTreeMap<String, u32>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| LogicError::Invalid(e.to_string()))?;
        let n = raw.universe.len();
        let mut relations = Vec::new();
        for s in &raw.signature.relations {
            let mut t = vec![false; n.pow(s.arity as u32)];
            for tup in raw.relations.get(&s.name).map(|v| v.as_slice()).unwrap_or(&[]) {
                if tup.len() != s.arity || tup.iter().any(|&a| a as usize >= n) {
                    return Err(LogicError::Invalid(format!("bad tuple for relation `{}`", s.name)));
                }
                t[tuple_index(n, tup)] = true;
            }
            relations.push(t);
        }
        let mut functions = Vec::new();
        for s in &raw.signature.functions {
            let v = raw
                .functions
                .get(&s.name)
                .ok_or_else(|| LogicError::Invalid(format!("missing table for function `{}`", s.name)))?;
            let flat: Vec<u32> = match serde_json::from_value::<Vec<u32>>(v.clone()) {
                Ok(f) => f,
                Err(_) => serde_json::from_value::<Vec<Vec<u32>>>(v.clone())
                    .map_err(|e| LogicError::Invalid(e.to_string()))?
                    .concat(),
            };
            functions.push(flat);
        }
        let mut constants = Vec::new();
        for c in &raw.signature.constants {
            constants.push(
                *raw.constants
                    .get(c)
                    .ok_or_else(|| LogicError::Invalid(format!("missing value for constant `{c}`")))?,
            );
        }
        Self::new(raw.signature, raw.universe, relations, functions, constants)
    }
}

pub(crate) fn decode_tuple(n: usize, arity: usize, mut i: usize) -> Vec<u32> {
    let mut out = vec![0u32; arity];
    for k in (0..arity).rev() {
        out[k] = (i % n) as u32;
        i /= n;
    }
    out
}

impl Interp for FiniteStructure {
    fn size(&self) -> usize {
        self.labels.len()
    }

    fn signature(&self) -> &Signature {
        &self.sig
    }

    #[inline]
    fn apply(&self, f: usize, args: &[u32]) -> u32 {
        let t = &self.functions[f];
        t.table[tuple_index(self.labels.len(), args)]
    }

    #[inline]
    fn holds(&self, r: usize, args: &[u32]) -> bool {
        self.relations[r].table[tuple_index(self.labels.len(), args)]
    }

    fn constant(&self, c: usize) -> u32 {
        self.constants[c]
    }

    fn label(&self, a: u32) -> String {
        self.labels[a as usize].clone()
    }
}
