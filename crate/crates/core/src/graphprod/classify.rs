use serde::Serialize;

use super::{Graph, GraphError};

/// Recognizing-coordinates classification of a graph product from the graph
/// and the vertex-group orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RcClass {
    /// Complement connected and some vertex group has at least three
    /// elements, or the product is `Z/2 * Z/2`.
    Recognizes { reason: String },
    /// Complement disconnected: the product splits as `Γ_X 𝒢 × Γ_Y 𝒢`.
    /// `x` is a smallest complement component, `y` the other vertices.
    Decomposable { x: Vec<usize>, y: Vec<usize> },
    /// Complement connected and every vertex group of order two: a
    /// right-angled Coxeter group, left undecided.
    OpenRacg,
}

pub fn rc_classify(graph: &Graph, sizes: &[usize]) -> Result<RcClass, GraphError> {
    if sizes.len() != graph.len() {
        return Err(GraphError::Graph(format!("{} vertices but {} sizes", graph.len(), sizes.len())));
    }
    if let Some(v) = sizes.iter().position(|&s| s < 2) {
        return Err(GraphError::TrivialVertexGroup(graph.name(v).into()));
    }
    if graph.len() < 2 {
        return Err(GraphError::Hypothesis("a graph product needs at least two vertices".into()));
    }
    let comps = graph.complement_components();
    if comps.len() > 1 {
        let x = comps.iter().min_by_key(|c| (c.len(), c[0])).unwrap().clone();
        let y = (0..graph.len()).filter(|v| !x.contains(v)).collect();
        return Ok(RcClass::Decomposable { x, y });
    }
    if let Some(v) = sizes.iter().position(|&s| s >= 3) {
        return Ok(RcClass::Recognizes {
            reason: format!("complement connected and the group at `{}` has {} elements", graph.name(v), sizes[v]),
        });
    }
    if graph.len() == 2 {
        return Ok(RcClass::Recognizes { reason: "Z/2 * Z/2 (infinite dihedral group)".into() });
    }
    Ok(RcClass::OpenRacg)
}
