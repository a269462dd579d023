//! Example graphs and test corpora.
//!
//! Every family is deterministic: the same [`GeneratorRequest`] always yields
//! the same [`PlaneGraph`], including vertex ids and rotations.

mod exhaustive;
mod families;
#[cfg(feature = "jones")]
mod jones;
mod random;

pub use exhaustive::{are_isomorphic, embed_by_rotations, trifree_planar_corpus};
pub use families::{
    cycle, dodecahedron, fullerene_like, glue_pentagon_patch, kneser_graph, path,
    pentagon_patch, pentagon_strip, petersen, wheel_subdivided, KneserGraph,
};
#[cfg(feature = "jones")]
pub use jones::jones_like;
pub use random::random_trifree_planar;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane_graph::{components, Graph, GraphError, PlaneGraph, SimpleGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unsupported parameter for {family}: {reason}")]
    Parameter { family: &'static str, reason: String },
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("edge list is neither a tree nor a cycle; no embedder is available")]
    NotEmbeddable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    Path,
    WheelSubdivided,
    Dodecahedron,
    FullereneLike,
    PentagonStrip,
    PentagonPatch,
    RandomTrifree,
    Jones,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Cycle,
        Family::Path,
        Family::WheelSubdivided,
        Family::Dodecahedron,
        Family::FullereneLike,
        Family::PentagonStrip,
        Family::PentagonPatch,
        Family::RandomTrifree,
        Family::Jones,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::WheelSubdivided => "wheel-subdivided",
            Family::Dodecahedron => "dodecahedron",
            Family::FullereneLike => "fullerene-like",
            Family::PentagonStrip => "pentagon-strip",
            Family::PentagonPatch => "pentagon-patch",
            Family::RandomTrifree => "random-trifree",
            Family::Jones => "jones",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// A family tag with its size parameter and seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRequest {
    pub family: Family,
    /// Vertex count for cycles, paths, random graphs and Jones graphs; spoke
    /// count for wheels; number of glued caps or strip pentagons otherwise.
    pub n: usize,
    pub seed: u64,
}

impl GeneratorRequest {
    pub fn generate(&self) -> Result<PlaneGraph, GeneratorError> {
        let n = self.n;
        let param = |reason: &str| GeneratorError::Parameter {
            family: self.family.name(),
            reason: reason.to_string(),
        };
        match self.family {
            Family::Cycle if n >= 3 => Ok(cycle(n as VertexId)),
            Family::Cycle => Err(param("a cycle needs at least 3 vertices")),
            Family::Path if n >= 1 => Ok(path(n as VertexId)),
            Family::Path => Err(param("a path needs at least 1 vertex")),
            Family::WheelSubdivided if n >= 3 => Ok(wheel_subdivided(n)),
            Family::WheelSubdivided => Err(param("a wheel needs at least 3 spokes")),
            Family::Dodecahedron => Ok(dodecahedron()),
            Family::FullereneLike if n >= 1 => Ok(fullerene_like(n)),
            Family::FullereneLike => Err(param("at least one cap is needed")),
            Family::PentagonStrip if n >= 1 => Ok(pentagon_strip(n)),
            Family::PentagonStrip => Err(param("at least one pentagon is needed")),
            Family::PentagonPatch => Ok(pentagon_patch()),
            Family::RandomTrifree if n >= 3 => Ok(random_trifree_planar(n, self.seed)),
            Family::RandomTrifree => Err(param("at least 3 vertices are needed")),
            #[cfg(feature = "jones")]
            Family::Jones => jones_like(n),
            #[cfg(not(feature = "jones"))]
            Family::Jones => Err(param("built without the `jones` feature")),
        }
    }
}

/// Reads an edge list (`u v` per line, `#` comments) and embeds it. Only
/// trees and single cycles are accepted, since those have an obvious
/// embedding.
pub fn from_edge_list(text: &str) -> Result<PlaneGraph, GeneratorError> {
    let mut g = SimpleGraph::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: &str| GeneratorError::EdgeList { line: i + 1, reason: reason.into() };
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected two vertex ids"));
        };
        let a: VertexId = a.parse().map_err(|_| bad("vertex id is not an integer"))?;
        let b: VertexId = b.parse().map_err(|_| bad("vertex id is not an integer"))?;
        if a == b {
            return Err(bad("loops are not allowed"));
        }
        g.add_edge(a, b);
    }
    let n = g.num_vertices();
    let e = g.num_edges();
    let connected = components(&g).len() == 1;
    let is_tree = connected && e + 1 == n;
    let is_cycle = connected && n >= 3 && g.vertex_ids().iter().all(|&v| g.degree(v) == 2);
    if !(is_tree || is_cycle) {
        return Err(GeneratorError::NotEmbeddable);
    }
    let rotation: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertex_ids().into_iter().map(|v| (v, g.neighbors(v).to_vec())).collect();
    Ok(PlaneGraph::from_rotations(rotation)?)
}
