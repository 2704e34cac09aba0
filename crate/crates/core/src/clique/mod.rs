//! Conflict graphs over subspaces and an exact maximum clique search.
//!
//! Cliques in the graphs built here are exactly the codes with the requested
//! minimum distance, so the clique number is the maximum code size.

mod graph;
mod greedy;
mod search;

use thiserror::Error;

pub use graph::ConflictGraph;
pub use greedy::greedy_clique;
pub use search::{max_clique, CliqueResult, SearchConfig, SearchStatus};

use crate::codes::{verify, CodeClaim, CodeError, SubspaceCode};
use crate::gf::{packed_rank, FieldSpec};
use crate::grassmann::{Grassmannian, GrassmannError, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("graph: {0}")]
    Graph(String),
    #[error("search: {0}")]
    Search(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Subspaces as vertices of a conflict graph; vertex `i` is `vertices[i]`.
#[derive(Debug, Clone)]
pub struct SubspaceGraph {
    pub graph: ConflictGraph,
    pub vertices: Vec<Subspace>,
}

impl SubspaceGraph {
    /// The subspaces of a vertex set.
    pub fn subspaces(&self, vs: &[usize]) -> Vec<Subspace> {
        vs.iter().map(|&i| self.vertices[i].clone()).collect()
    }
}

fn distance(a: &Subspace, b: &Subspace) -> usize {
    match (a.packed(), b.packed()) {
        (Some(x), Some(y)) => 2 * packed_rank(x.iter().chain(y).copied()) - x.len() - y.len(),
        _ => a.distance_unchecked(b),
    }
}

/// Joins every pair of vertices at subspace distance at least `d`.
/// Labels are taken from `labels`, which must be distinct.
pub fn compatibility_graph(vertices: &[Subspace], labels: Vec<u64>, d: usize) -> Result<ConflictGraph, CliqueError> {
    if labels.len() != vertices.len() {
        return Err(CliqueError::Graph("one label per vertex required".into()));
    }
    let mut g = ConflictGraph::with_labels(labels)?;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if distance(&vertices[i], &vertices[j]) >= d {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// All `k`-subspaces of `F_q^v`, adjacent iff at distance at least `d`.
/// Labels are enumeration indices.
pub fn build_distance_graph(q: u32, v: usize, k: usize, d: usize) -> Result<SubspaceGraph, CliqueError> {
    let field = FieldSpec::new(q).map_err(GrassmannError::from)?;
    let gr = Grassmannian::new(field, v, k)?;
    let vertices = gr.materialize()?;
    let graph = compatibility_graph(&vertices, (0..vertices.len() as u64).collect(), d)?;
    Ok(SubspaceGraph { graph, vertices })
}

/// The `k`-subspaces at distance at least `d` from every codeword of `c`,
/// with their enumeration indices.
pub fn candidate_set(c: &SubspaceCode, k: usize, d: usize) -> Result<Vec<(u64, Subspace)>, CliqueError> {
    let gr = Grassmannian::new(c.field(), c.ambient(), k)?;
    gr.check_materializable()?;
    Ok(gr.iter().indexed().filter(|(_, w)| c.iter().all(|u| distance(u, w) >= d)).collect())
}

/// Candidates compatible with `c` at distance `d_cross`, adjacent iff at
/// distance at least `d_within`.
pub fn extension_graph(c: &SubspaceCode, k: usize, d_cross: usize, d_within: usize) -> Result<SubspaceGraph, CliqueError> {
    let (labels, vertices): (Vec<u64>, Vec<Subspace>) = candidate_set(c, k, d_cross)?.into_iter().unzip();
    let graph = compatibility_graph(&vertices, labels, d_within)?;
    Ok(SubspaceGraph { graph, vertices })
}

/// Solids of `F_2^7` that can join the plane code `c` at distance 5, adjacent
/// iff at distance 6. A 16-clique extends `c` to a `(7,33,5;{3,4})_2` code.
pub fn build_extension_graph(c: &SubspaceCode) -> Result<SubspaceGraph, CliqueError> {
    let report = verify(c, Some(&CodeClaim::new(2, 7, 17, 6, [3])))?;
    if !report.confirmed() {
        return Err(CliqueError::Precondition(format!("expected a (7,17,6;3)_2 code, got {}", report.params())));
    }
    extension_graph(c, 4, 5, 6)
}
