use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, VertexId};

/// Undirected simple graph without an embedding. Neighbor lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Graph for SimpleGraph {
    fn vertex_ids(&self) -> Vec<VertexId> {
        self.adj.keys().copied().collect()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.binary_search(&v).is_ok())
    }
}

impl SimpleGraph {
    pub fn new() -> SimpleGraph {
        SimpleGraph::default()
    }

    /// Symmetrizes and deduplicates the given adjacency; loops are dropped.
    pub fn from_adjacency(adj: BTreeMap<VertexId, Vec<VertexId>>) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for (&v, nbrs) in &adj {
            g.add_vertex(v);
            for &w in nbrs {
                g.add_edge(v, w);
            }
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = VertexId>>(
        vertices: I,
        edges: &[(VertexId, VertexId)],
    ) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        if u == v {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = self.adj.entry(a).or_default();
            if let Err(i) = list.binary_search(&b) {
                list.insert(i, b);
            }
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for w in nbrs {
                if let Some(list) = self.adj.get_mut(&w) {
                    list.retain(|&x| x != v);
                }
            }
        }
    }

    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> SimpleGraph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nbrs)| (v, nbrs.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        SimpleGraph { adj }
    }

    /// Renumbers vertices to `0..n` in increasing order of their ids.
    pub fn compacted(&self) -> (SimpleGraph, Vec<VertexId>) {
        let ids = self.vertex_ids();
        let index: BTreeMap<VertexId, VertexId> =
            ids.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        let adj = self
            .adj
            .iter()
            .map(|(v, nbrs)| (index[v], nbrs.iter().map(|w| index[w]).collect()))
            .collect();
        (SimpleGraph { adj }, ids)
    }
}
