//! JSON representation of plane graphs.
//!
//! ```json
//! {"vertices": [0, 1, 2, 3],
//!  "rotations": {"0": [1, 3], "1": [2, 0], "2": [3, 1], "3": [0, 2]},
//!  "outer_face": [0, 3, 2, 1],
//!  "x": 0}
//! ```
//! `outer_face` and `x` are optional; `x` may be a single id or a list.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GraphError, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Marks {
    One(VertexId),
    Many(Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexId>,
    pub rotations: BTreeMap<VertexId, Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Marks>,
}

impl GraphFile {
    pub fn from_graph(g: &PlaneGraph) -> GraphFile {
        let marked: Vec<VertexId> = g.marked().iter().copied().collect();
        let x = match marked.len() {
            0 => None,
            1 => Some(Marks::One(marked[0])),
            _ => Some(Marks::Many(marked)),
        };
        GraphFile {
            vertices: g.rotations().keys().copied().collect(),
            rotations: g.rotations().clone(),
            outer_face: g.outer_walk(),
            x,
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph, GraphError> {
        let mut rotation = self.rotations.clone();
        for &v in &self.vertices {
            rotation.entry(v).or_default();
        }
        if rotation.len() != self.vertices.len() {
            let extra = rotation.keys().find(|v| !self.vertices.contains(v)).copied();
            return Err(GraphError::UnknownVertex(extra.unwrap_or_default()));
        }
        let mut g = PlaneGraph::from_rotations(rotation)?;
        if let Some(walk) = &self.outer_face {
            g.set_outer_walk(walk)?;
        }
        let marked = match &self.x {
            None => Vec::new(),
            Some(Marks::One(v)) => vec![*v],
            Some(Marks::Many(vs)) => vs.clone(),
        };
        if let Some(v) = marked.iter().find(|v| !self.vertices.contains(v)) {
            return Err(GraphError::UnknownVertex(*v));
        }
        g.set_marked(marked);
        Ok(g)
    }
}

impl PlaneGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from_graph(self)).expect("serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile::from_graph(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<PlaneGraph, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
        file.to_graph()
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<PlaneGraph, GraphError> {
        let file: GraphFile =
            serde_json::from_value(value.clone()).map_err(|e| GraphError::Format(e.to_string()))?;
        file.to_graph()
    }

    /// Graphviz rendering; marked vertices are boxed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.rotations().keys() {
            let shape = if self.marked().contains(v) { "box" } else { "circle" };
            out.push_str(&format!("  {v} [shape={shape}];\n"));
        }
        for (&u, nbrs) in self.rotations() {
            for &v in nbrs {
                if u < v {
                    out.push_str(&format!("  {u} -- {v};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
