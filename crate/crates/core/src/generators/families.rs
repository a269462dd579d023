use std::collections::{BTreeMap, BTreeSet};

use crate::plane_graph::{FacialWalk, PlaneGraph, SimpleGraph, VertexId};

pub fn cycle(n: VertexId) -> PlaneGraph {
    assert!(n >= 3, "cycle length at least 3");
    let rotation = (0..n).map(|i| (i, vec![(i + 1) % n, (i + n - 1) % n])).collect();
    PlaneGraph::from_rotations(rotation).expect("cycle is plane")
}

pub fn path(n: VertexId) -> PlaneGraph {
    assert!(n >= 1, "path needs a vertex");
    let rotation = (0..n)
        .map(|i| {
            let mut nbrs = Vec::new();
            if i > 0 {
                nbrs.push(i - 1);
            }
            if i + 1 < n {
                nbrs.push(i + 1);
            }
            (i, nbrs)
        })
        .collect();
    PlaneGraph::from_rotations(rotation).expect("path is plane")
}

/// Wheel with `k` spokes, each subdivided once. Hub `0`, rim `1..=k`,
/// subdivision vertices `k+1..=2k` (vertex `k+i` lies on the spoke to `i`).
/// The rim bounds the outer face.
pub fn wheel_subdivided(k: usize) -> PlaneGraph {
    assert!(k >= 3, "wheel needs three spokes");
    let k32 = k as VertexId;
    let mut coords = BTreeMap::from([(0, (0.0, 0.0))]);
    let mut edges = Vec::new();
    for i in 1..=k32 {
        let a = std::f64::consts::TAU * f64::from(i - 1) / k as f64;
        coords.insert(i, (2.0 * a.cos(), 2.0 * a.sin()));
        coords.insert(k32 + i, (a.cos(), a.sin()));
        edges.push((i, i % k32 + 1));
        edges.push((0, k32 + i));
        edges.push((k32 + i, i));
    }
    let mut g = PlaneGraph::from_straight_line(&coords, &edges).expect("wheel is plane");
    g.set_outer_dart(Some((1, 2))).expect("rim edge");
    g
}

/// Face of `g` containing both `u` and `v`; the longest one if several.
fn face_with(g: &PlaneGraph, u: VertexId, v: VertexId) -> FacialWalk {
    g.trace_faces()
        .into_iter()
        .filter(|f| f.contains(u) && f.contains(v))
        .max_by_key(|f| (f.len(), std::cmp::Reverse(f.id)))
        .expect("vertices share a face")
}

/// Glues the interior of a dodecahedron into the pentagonal face `face`:
/// a ring of ten new vertices, and, with `inner`, a new inner pentagon.
/// Returns the graph, the ring (the `i`-th even ring vertex is attached to
/// the `i`-th face vertex) and the inner pentagon.
pub fn glue_pentagon_patch(
    g: &PlaneGraph,
    face: &FacialWalk,
    inner: bool,
) -> (PlaneGraph, Vec<VertexId>, Vec<VertexId>) {
    assert!(face.len() == 5 && face.is_cycle(), "patch needs a pentagonal face");
    let a = face.vertices.clone();
    let (mut g, first) = g.add_path_in_face(a[0], a[1], 3, face).expect("face corner");
    let mut ring = first;
    for i in 1..4 {
        let from = *ring.last().unwrap();
        let f = face_with(&g, from, a[i + 1]);
        let (h, new) = g.add_path_in_face(from, a[i + 1], 2, &f).expect("work face");
        g = h;
        ring.extend(new);
    }
    let from = *ring.last().unwrap();
    let f = face_with(&g, from, ring[0]);
    let (h, last) = g.add_path_in_face(from, ring[0], 1, &f).expect("work face");
    g = h;
    ring.extend(last);
    if !inner {
        return (g, ring, Vec::new());
    }
    let f = face_with(&g, ring[1], ring[3]);
    let (h, mut pent) = g.add_path_in_face(ring[1], ring[3], 2, &f).expect("ring face");
    g = h;
    for i in 2..5 {
        let from = *pent.last().unwrap();
        let to = ring[2 * i + 1];
        let f = face_with(&g, from, to);
        let (h, new) = g.add_path_in_face(from, to, 1, &f).expect("work face");
        g = h;
        pent.extend(new);
    }
    let f = face_with(&g, pent[4], pent[0]);
    g = g.add_edge_in_face(pent[4], pent[0], &f).expect("last edge");
    (g, ring, pent)
}

/// Dodecahedron: outer pentagon `0..5`, ring `5..15`, inner pentagon `15..20`.
pub fn dodecahedron() -> PlaneGraph {
    fullerene_like(1)
}

/// Nested pentagulation: a pentagon with `caps` dodecahedral caps glued one
/// inside the other. Every face is a 5-face; `caps = 1` is the dodecahedron.
/// Has `5 + 15 caps` vertices.
pub fn fullerene_like(caps: usize) -> PlaneGraph {
    assert!(caps >= 1, "at least one cap");
    let mut g = cycle(5);
    g.set_outer_dart(Some((1, 0))).expect("edge");
    let mut target = g.face_of_dart((0, 1));
    for _ in 0..caps {
        let (h, _, pent) = glue_pentagon_patch(&g, &target, true);
        g = h;
        let set: BTreeSet<VertexId> = pent.iter().copied().collect();
        target = g.trace_faces().into_iter().find(|f| f.vertex_set() == set).expect("inner face");
    }
    g
}

/// The 15-vertex patch: an outer pentagon `0..5` with a ring of ten vertices
/// `5..15`, giving five inner 5-faces and one 10-face.
pub fn pentagon_patch() -> PlaneGraph {
    let mut g = cycle(5);
    g.set_outer_dart(Some((1, 0))).expect("edge");
    let target = g.face_of_dart((0, 1));
    glue_pentagon_patch(&g, &target, false).0
}

/// Chain of `m` pentagons, consecutive ones sharing an edge; `3m + 2`
/// vertices. Every face other than the outer one is a 5-face.
pub fn pentagon_strip(m: usize) -> PlaneGraph {
    assert!(m >= 1, "at least one pentagon");
    let mut g = cycle(5);
    g.set_outer_dart(Some((1, 0))).expect("edge");
    let (mut u, mut v) = (2, 3);
    for _ in 1..m {
        let outer = g.outer_face().expect("outer face");
        let (h, new) = g.add_path_in_face(u, v, 3, &outer).expect("outer edge");
        g = h;
        (u, v) = (new[1], new[2]);
    }
    g
}

/// Kneser graph with its vertex labels: vertex `i` is `subsets[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneserGraph {
    pub graph: SimpleGraph,
    pub subsets: Vec<Vec<u32>>,
}

fn combinations(a: u32, b: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, a: u32, b: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == b as usize {
            out.push(cur.clone());
            return;
        }
        for c in start..=a {
            cur.push(c);
            rec(c + 1, a, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, a, b, &mut Vec::new(), &mut out);
    out
}

/// `KG(a, b)`: the `b`-subsets of `{1..a}` in lexicographic order, adjacent
/// when disjoint.
pub fn kneser_graph(a: u32, b: u32) -> KneserGraph {
    if a < 2 * b {
        log::warn!("kneser graph KG({a},{b}) has no edges");
    }
    let subsets = combinations(a, b);
    let mut graph = SimpleGraph::new();
    for i in 0..subsets.len() {
        graph.add_vertex(i as VertexId);
        for j in 0..i {
            if subsets[i].iter().all(|c| !subsets[j].contains(c)) {
                graph.add_edge(i as VertexId, j as VertexId);
            }
        }
    }
    KneserGraph { graph, subsets }
}

pub fn petersen() -> SimpleGraph {
    kneser_graph(5, 2).graph
}
