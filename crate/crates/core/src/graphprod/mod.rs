//! Graph products of finite groups at the level of words: normal forms,
//! heads and tails, conjugating a word onto one vertex, and the
//! complement-connectivity classification.
//!
//! Vertices are `0..n`; a syllable is a vertex with a nontrivial element of
//! its vertex group. Syllables at adjacent vertices commute.

mod classify;
mod conjugate;
mod words;

pub use classify::{rc_classify, RcClass};
pub use conjugate::{conjugate_to_vertex, CONJUGATOR_BUDGET};
pub use words::{HeadTail, Strategy};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogError};
use crate::groups::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("vertex group of `{0}` must have at least two elements")]
    TrivialVertexGroup(String),
    #[error("bad syllable `{0}`: {1}")]
    Syllable(String, String),
    #[error("word is not in normal form")]
    NotNormal,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no conjugator found within the search budget")]
    NotFound,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid graph file: {0}")]
    Json(String),
}

/// A finite simple undirected graph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = names.len();
        if n == 0 {
            return Err(GraphError::Graph("no vertices".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if !names.iter().all(|v| seen.insert(v)) {
            return Err(GraphError::Graph("duplicate vertex name".into()));
        }
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::Graph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(GraphError::Graph(format!("loop at {a}")));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Ok(Graph { names, adj })
    }

    /// Vertices named `0..n` by index.
    pub fn indexed(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::indexed(n, &edges).expect("valid")
    }

    pub fn null(n: usize) -> Self {
        Self::indexed(n, &[]).expect("valid")
    }

    /// Each edge present independently with probability `p`.
    pub fn random<R: rand::Rng>(rng: &mut R, n: usize, p: f64) -> Self {
        let edges: Vec<_> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
        Self::indexed(n, &edges).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| (a + 1..self.len()).map(move |b| (a, b))).filter(|&(a, b)| self.adj[a][b]).collect()
    }

    /// Connected components of the complement graph, each sorted, ordered by
    /// least vertex.
    pub fn complement_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(a) = stack.pop() {
                members.push(a);
                for b in 0..n {
                    if b != a && !self.adj[a][b] && comp[b] == usize::MAX {
                        comp[b] = id;
                        stack.push(b);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn complement_connected(&self) -> bool {
        self.complement_components().len() == 1
    }
}

/// A graph with a finite group at every vertex.
#[derive(Clone, Debug)]
pub struct ProductSpec {
    graph: Graph,
    groups: Vec<FiniteGroup>,
}

/// One syllable: a vertex and a nontrivial element of its group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Syllable {
    pub vertex: usize,
    pub element: u32,
}

/// A word in the syllables of a [`ProductSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(pub Vec<Syllable>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Syllable length `λ`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    groups: BTreeMap<String, String>,
}

impl ProductSpec {
    pub fn new(graph: Graph, groups: Vec<FiniteGroup>) -> Result<Self, GraphError> {
        if groups.len() != graph.len() {
            return Err(GraphError::Graph(format!("{} vertices but {} groups", graph.len(), groups.len())));
        }
        for (v, g) in groups.iter().enumerate() {
            if g.order() < 2 {
                return Err(GraphError::TrivialVertexGroup(graph.name(v).into()));
            }
        }
        Ok(ProductSpec { graph, groups })
    }

    /// Vertex groups by catalog name.
    pub fn from_names(graph: Graph, names: &[&str]) -> Result<Self, GraphError> {
        let groups = names
            .iter()
            .map(|n| catalog::lookup(n)?.group().cloned().ok_or_else(|| GraphError::Graph(format!("`{n}` is not a group"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(graph, groups)
    }

    /// `{ "vertices": [...], "edges": [[i,j],...], "groups": {vertex: catalog-name} }`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, GraphError> {
        let f: GraphFile = serde_json::from_value(v.clone()).map_err(|e| GraphError::Json(e.to_string()))?;
        let graph = Graph::new(f.vertices.clone(), &f.edges)?;
        let names: Vec<&str> = f
            .vertices
            .iter()
            .map(|v| f.groups.get(v).map(String::as_str).ok_or_else(|| GraphError::Json(format!("no group for vertex `{v}`"))))
            .collect::<Result<_, _>>()?;
        Self::from_names(graph, &names)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self, v: usize) -> &FiniteGroup {
        &self.groups[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.order()).collect()
    }

    pub fn commute(&self, a: &Syllable, b: &Syllable) -> bool {
        self.graph.adjacent(a.vertex, b.vertex)
    }

    /// Parses `v:label` syllables separated by whitespace; `e` or an empty
    /// string is the empty word. Identity syllables are dropped.
    pub fn parse_word(&self, text: &str) -> Result<Word, GraphError> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            let (v, label) =
                tok.split_once(':').ok_or_else(|| GraphError::Syllable(tok.into(), "expected vertex:label".into()))?;
            let vertex = self.graph.vertex(v).ok_or_else(|| GraphError::Syllable(tok.into(), format!("unknown vertex `{v}`")))?;
            let g = &self.groups[vertex];
            let element = g
                .index_of(label)
                .ok_or_else(|| GraphError::Syllable(tok.into(), format!("`{label}` is not an element of {}", g.name())))?;
            if element != g.identity() {
                out.push(Syllable { vertex, element });
            }
        }
        Ok(Word(out))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".into();
        }
        w.0.iter()
            .map(|s| format!("{}:{}", self.graph.name(s.vertex), self.groups[s.vertex].label(s.element)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let groups: BTreeMap<&str, &str> =
            (0..self.graph.len()).map(|v| (self.graph.name(v), self.groups[v].name())).collect();
        serde_json::json!({
            "vertices": self.graph.names,
            "edges": self.graph.edges(),
            "groups": groups,
        })
    }
}
