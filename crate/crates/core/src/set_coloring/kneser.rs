//! `(a:b)`-colorings as homomorphisms into the Kneser graph `KG(a, b)`.
//!
//! A homomorphism sends each vertex to a `b`-subset and each edge to a pair
//! of disjoint subsets, which is exactly an `(a:b)`-coloring. The search here
//! is deliberately independent of the set-coloring solver so the two can
//! cross-check each other.

use super::{ColorSet, SetColoring};
use crate::generators::{kneser_graph, KneserGraph};
use crate::plane_graph::{components, Graph, SimpleGraph, VertexId};

#[derive(Debug, Clone)]
pub struct KneserInstance {
    pub source: SimpleGraph,
    pub target: KneserGraph,
    pub a: u32,
    pub b: u32,
}

pub fn to_kneser_instance<G: Graph>(g: &G, a: u32, b: u32) -> KneserInstance {
    let source = SimpleGraph::from_adjacency(
        g.vertex_ids().into_iter().map(|v| (v, g.neighbors(v).to_vec())).collect(),
    );
    KneserInstance { source, target: kneser_graph(a, b), a, b }
}

/// A homomorphism from the source into the target, read back as a coloring.
pub fn find_homomorphism(inst: &KneserInstance) -> Option<SetColoring> {
    let src = &inst.source;
    let tgt = &inst.target.graph;
    if tgt.num_vertices() == 0 {
        return if src.num_vertices() == 0 { Some(SetColoring::new(inst.a)) } else { None };
    }
    // Breadth-first order per component; the Kneser graph is vertex
    // transitive, so each component root may be sent to subset 0.
    let mut order = Vec::new();
    let mut roots = Vec::new();
    for comp in components(src) {
        let start = comp[0];
        roots.push(start);
        let mut seen = vec![start];
        let mut i = 0;
        while i < seen.len() {
            for &w in src.neighbors(seen[i]) {
                if !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        order.extend(seen);
    }
    let mut image: std::collections::BTreeMap<VertexId, VertexId> = Default::default();
    fn rec(
        i: usize,
        order: &[VertexId],
        roots: &[VertexId],
        src: &SimpleGraph,
        tgt: &SimpleGraph,
        image: &mut std::collections::BTreeMap<VertexId, VertexId>,
    ) -> bool {
        let Some(&v) = order.get(i) else { return true };
        let candidates: Vec<VertexId> = if roots.contains(&v) {
            vec![0]
        } else {
            let placed: Vec<VertexId> = src.neighbors(v).iter().filter_map(|w| image.get(w).copied()).collect();
            match placed.split_first() {
                None => tgt.vertex_ids(),
                Some((&p, rest)) => tgt
                    .neighbors(p)
                    .iter()
                    .copied()
                    .filter(|&t| rest.iter().all(|&q| tgt.has_edge(t, q)))
                    .collect(),
            }
        };
        for t in candidates {
            image.insert(v, t);
            if rec(i + 1, order, roots, src, tgt, image) {
                return true;
            }
        }
        image.remove(&v);
        false
    }
    if !rec(0, &order, &roots, src, tgt, &mut image) {
        return None;
    }
    let sets = image
        .into_iter()
        .map(|(v, t)| (v, inst.target.subsets[t as usize].iter().copied().collect::<ColorSet>()))
        .collect();
    Some(SetColoring { palette: inst.a, sets })
}
