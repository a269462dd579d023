//! Exhaustive corpus of small connected triangle-free planar graphs.
//!
//! Graphs are grown one vertex at a time: the new vertex is joined to a
//! nonempty independent set of an existing graph, which reaches every
//! connected triangle-free graph (delete a non-cut vertex to go back).
//! Duplicates are removed by an isomorphism test and planarity is decided by
//! trying every rotation system.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use crate::plane_graph::{components, Graph, PlaneGraph, SimpleGraph, VertexId};

/// Refined vertex colors (Weisfeiler-Leman), comparable across graphs.
fn refined_colors(g: &SimpleGraph) -> BTreeMap<VertexId, u64> {
    let mut colors: BTreeMap<VertexId, u64> =
        g.vertex_ids().into_iter().map(|v| (v, g.degree(v) as u64)).collect();
    for _ in 0..g.num_vertices().min(6) {
        colors = colors
            .keys()
            .map(|&v| {
                let mut nbr: Vec<u64> = g.neighbors(v).iter().map(|w| colors[w]).collect();
                nbr.sort_unstable();
                let mut h = DefaultHasher::new();
                (colors[&v], nbr).hash(&mut h);
                (v, h.finish())
            })
            .collect();
    }
    colors
}

fn invariant(g: &SimpleGraph) -> u64 {
    let mut cs: Vec<u64> = refined_colors(g).into_values().collect();
    cs.sort_unstable();
    let mut h = DefaultHasher::new();
    (g.num_vertices(), g.num_edges(), cs).hash(&mut h);
    h.finish()
}

/// Exact isomorphism test by color-guided backtracking.
pub fn are_isomorphic<A: Graph, B: Graph>(a: &A, b: &B) -> bool {
    let sa = SimpleGraph::from_adjacency(
        a.vertex_ids().into_iter().map(|v| (v, a.neighbors(v).to_vec())).collect(),
    );
    let sb = SimpleGraph::from_adjacency(
        b.vertex_ids().into_iter().map(|v| (v, b.neighbors(v).to_vec())).collect(),
    );
    if sa.num_vertices() != sb.num_vertices() || sa.num_edges() != sb.num_edges() {
        return false;
    }
    let ca = refined_colors(&sa);
    let cb = refined_colors(&sb);
    let mut ma: Vec<u64> = ca.values().copied().collect();
    let mut mb: Vec<u64> = cb.values().copied().collect();
    ma.sort_unstable();
    mb.sort_unstable();
    if ma != mb {
        return false;
    }
    // Order the vertices of `a` so that each one (after the first of its
    // component) has an already placed neighbor.
    let mut order: Vec<VertexId> = Vec::new();
    for comp in components(&sa) {
        let start = *comp.iter().min_by_key(|v| (ma.iter().filter(|&&c| c == ca[v]).count(), **v)).unwrap();
        let mut seen = vec![start];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            for &w in sa.neighbors(v) {
                if !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        order.extend(seen);
    }
    let mut map: HashMap<VertexId, VertexId> = HashMap::new();
    let mut used: HashMap<VertexId, bool> = HashMap::new();
    fn rec(
        i: usize,
        order: &[VertexId],
        sa: &SimpleGraph,
        sb: &SimpleGraph,
        ca: &BTreeMap<VertexId, u64>,
        cb: &BTreeMap<VertexId, u64>,
        map: &mut HashMap<VertexId, VertexId>,
        used: &mut HashMap<VertexId, bool>,
    ) -> bool {
        let Some(&v) = order.get(i) else { return true };
        let candidates: Vec<VertexId> = match sa.neighbors(v).iter().find_map(|w| map.get(w)) {
            Some(&anchor) => sb.neighbors(anchor).to_vec(),
            None => sb.vertex_ids(),
        };
        for t in candidates {
            if used.get(&t).copied().unwrap_or(false) || cb[&t] != ca[&v] {
                continue;
            }
            let consistent = map.iter().all(|(&x, &y)| sa.has_edge(v, x) == sb.has_edge(t, y));
            if !consistent {
                continue;
            }
            map.insert(v, t);
            used.insert(t, true);
            if rec(i + 1, order, sa, sb, ca, cb, map, used) {
                return true;
            }
            map.remove(&v);
            used.insert(t, false);
        }
        false
    }
    rec(0, &order, &sa, &sb, &ca, &cb, &mut map, &mut used)
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Finds a planar rotation system by exhaustive search, or `None` when the
/// graph is not planar. Tries rotations in a fixed order, so the result is
/// deterministic.
pub fn embed_by_rotations(g: &SimpleGraph) -> Option<PlaneGraph> {
    let verts = g.vertex_ids();
    let n = verts.len();
    let e = g.num_edges();
    let c = components(g).len();
    if n >= 3 && e > 3 * n - 6 {
        return None;
    }
    let target_faces = e + 2 * c - n;
    // Rotation choices: the smallest neighbor first, the rest permuted.
    let choices: Vec<Vec<Vec<VertexId>>> = verts
        .iter()
        .map(|&v| {
            let nb = g.neighbors(v);
            match nb.split_first() {
                None => vec![Vec::new()],
                Some((&first, rest)) => permutations(rest)
                    .into_iter()
                    .map(|mut p| {
                        p.insert(0, first);
                        p
                    })
                    .collect(),
            }
        })
        .collect();
    let index: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Dart ids: offset[v] + position of the head in the sorted neighbor list.
    let mut offset = vec![0usize; n + 1];
    for (i, &v) in verts.iter().enumerate() {
        offset[i + 1] = offset[i] + g.degree(v);
    }
    let dart = |u: usize, v: VertexId| offset[u] + g.neighbors(verts[u]).binary_search(&v).unwrap();
    let total = offset[n];
    let mut pick = vec![0usize; n];
    let mut next = vec![0usize; total];
    let mut seen = vec![false; total];
    loop {
        // next(u -> v) = v -> succ_v(u)
        for (vi, &v) in verts.iter().enumerate() {
            let rot = &choices[vi][pick[vi]];
            let d = rot.len();
            for k in 0..d {
                let u = rot[k];
                let w = rot[(k + 1) % d];
                next[dart(index[&u], v)] = dart(vi, w);
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut faces = verts.iter().filter(|&&v| g.degree(v) == 0).count();
        for s in 0..total {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                cur = next[cur];
            }
        }
        if faces == target_faces {
            let rotation = verts
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, choices[i][pick[i]].clone()))
                .collect();
            return Some(PlaneGraph::from_rotations(rotation).expect("Euler holds"));
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// All connected triangle-free planar graphs on `1..=max_n` vertices, one
/// per isomorphism class, embedded, with vertex ids `0..n`. Ordered by vertex
/// count, then by generation order.
pub fn trifree_planar_corpus(max_n: usize) -> Vec<PlaneGraph> {
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let mut level: Vec<SimpleGraph> = vec![SimpleGraph::from_edges([0], &[])];
    out.push(embed_by_rotations(&level[0]).unwrap());
    for n in 2..=max_n {
        let new_v = (n - 1) as VertexId;
        let max_edges = if n >= 3 { 2 * n - 4 } else { 1 };
        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut found: Vec<SimpleGraph> = Vec::new();
        for parent in &level {
            let m = parent.num_edges();
            for mask in 1u32..(1 << (n - 1)) {
                let set: Vec<VertexId> = (0..new_v).filter(|i| mask >> i & 1 == 1).collect();
                if m + set.len() > max_edges {
                    continue;
                }
                let independent =
                    set.iter().all(|&a| set.iter().all(|&b| a >= b || !parent.has_edge(a, b)));
                if !independent {
                    continue;
                }
                let mut child = parent.clone();
                child.add_vertex(new_v);
                for &s in &set {
                    child.add_edge(new_v, s);
                }
                let key = invariant(&child);
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|&j| are_isomorphic(&found[j], &child)) {
                    continue;
                }
                bucket.push(found.len());
                found.push(child);
            }
        }
        let mut next_level = Vec::new();
        for g in found {
            if let Some(emb) = embed_by_rotations(&g) {
                out.push(emb);
                next_level.push(g);
            }
        }
        level = next_level;
    }
    out
}
