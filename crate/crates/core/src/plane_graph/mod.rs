//! Plane graphs given by rotation systems.
//!
//! A [`PlaneGraph`] stores, for every vertex, the cyclic order of its
//! neighbors. Rotations are read counterclockwise: for a dart `u -> v` the
//! next dart of the same face is `v -> w`, where `w` follows `u` in the
//! rotation of `v`. The face traced from a dart lies to its right, so in a
//! straight-line drawing bounded faces are traversed clockwise and the
//! unbounded face counterclockwise.
//!
//! Planarity is never tested; instead each embedding is certified by the
//! Euler identity `V - E + F = 2` of every connected component.

mod io;
mod rewrite;
mod simple;

pub use io::GraphFile;
pub use simple::SimpleGraph;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub type VertexId = u32;

/// Directed copy of an edge; `(u, v)` leaves `u`.
pub type Dart = (VertexId, VertexId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} appears in a rotation but is not a vertex")]
    UnknownVertex(VertexId),
    #[error("dart {0}->{1} has no partner {1}->{0}")]
    MissingPartner(VertexId, VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("parallel edges between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("outer face walk {0:?} is not a face of the embedding")]
    BadOuterFace(Vec<VertexId>),
    #[error("component containing {vertex} violates Euler's formula: V={v} E={e} F={f}")]
    NotSpherical { vertex: VertexId, v: usize, e: usize, f: usize },
    #[error("malformed graph file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("vertices {0} and {1} are adjacent")]
    Adjacent(VertexId, VertexId),
    #[error("vertex {0} is not on the given face")]
    NotOnFace(VertexId),
    #[error("the given walk is not a face of this graph")]
    StaleFace,
    #[error("cannot rewrite a vertex with itself ({0})")]
    SameVertex(VertexId),
    #[error("vertex {vertex} has degree {degree}; splitting needs degree at least two")]
    UnsupportedDegree { vertex: VertexId, degree: usize },
    #[error("rewrite would destroy the outer face")]
    OuterFaceDestroyed,
    #[error("{0} and {1} are in the same component")]
    SameComponent(VertexId, VertexId),
}

/// A closed walk bounding one face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialWalk {
    pub id: usize,
    /// Darts in walk order. Empty only for the face around an isolated vertex.
    pub darts: Vec<Dart>,
    /// Tail of every dart, in order; `[v]` for an isolated vertex `v`.
    pub vertices: Vec<VertexId>,
}

impl FacialWalk {
    /// Number of edges on the walk, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.darts.contains(&d)
    }

    /// `true` when the walk visits each of its vertices once.
    pub fn is_cycle(&self) -> bool {
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        !self.darts.is_empty() && distinct.len() == self.vertices.len()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    /// Corner of the walk at `v`: the darts `p -> v` and `v -> q` around its
    /// first visit. Returns `(p, q)`.
    pub fn corner(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        let n = self.darts.len();
        (0..n)
            .find(|&i| self.darts[i].1 == v)
            .map(|i| (self.darts[i].0, self.darts[(i + 1) % n].1))
    }
}

/// Abstract undirected graph view shared by plane and abstract graphs.
pub trait Graph {
    /// Vertex ids in increasing order.
    fn vertex_ids(&self) -> Vec<VertexId>;
    fn neighbors(&self, v: VertexId) -> &[VertexId];
    fn contains_vertex(&self, v: VertexId) -> bool;

    fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    fn num_vertices(&self) -> usize {
        self.vertex_ids().len()
    }

    fn num_edges(&self) -> usize {
        self.vertex_ids().iter().map(|&v| self.degree(v)).sum::<usize>() / 2
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains_vertex(u) && self.neighbors(u).contains(&v)
    }

    fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in self.vertex_ids() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn max_degree(&self) -> usize {
        self.vertex_ids().iter().map(|&v| self.degree(v)).max().unwrap_or(0)
    }
}

/// Breadth-first distances from `source`; unreachable vertices are absent.
pub fn bfs_distances<G: Graph + ?Sized>(g: &G, source: VertexId) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::new();
    dist.insert(source, 0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &w in g.neighbors(u) {
            if !dist.contains_key(&w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Connected components, each sorted, ordered by their smallest vertex.
pub fn components<G: Graph + ?Sized>(g: &G) -> Vec<Vec<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in g.vertex_ids() {
        if seen.contains(&v) {
            continue;
        }
        let comp: Vec<VertexId> = bfs_distances(g, v).into_keys().collect();
        seen.extend(comp.iter().copied());
        out.push(comp);
    }
    out
}

/// Length of a shortest cycle, or `None` for forests.
pub fn girth<G: Graph + ?Sized>(g: &G) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in g.vertex_ids() {
        let mut dist: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        dist.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            if best.is_some_and(|b| 2 * du + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                match dist.get(&w) {
                    None => {
                        dist.insert(w, du + 1);
                        parent.insert(w, u);
                        queue.push_back(w);
                    }
                    Some(&dw) if parent.get(&u) != Some(&w) => {
                        let len = du + dw + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                    _ => {}
                }
            }
        }
    }
    best
}

pub fn is_triangle_free<G: Graph + ?Sized>(g: &G) -> bool {
    g.vertex_ids().into_iter().all(|u| {
        let nbrs = g.neighbors(u);
        nbrs.iter().all(|&v| {
            v < u || g.neighbors(v).iter().all(|w| !nbrs.contains(w))
        })
    })
}

pub fn is_connected<G: Graph + ?Sized>(g: &G) -> bool {
    components(g).len() <= 1
}

/// Graph with a rotation system, an optional outer face and an optional
/// marked vertex set `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    /// A dart of the outer face.
    outer: Option<Dart>,
    marked: BTreeSet<VertexId>,
}

impl Graph for PlaneGraph {
    fn vertex_ids(&self) -> Vec<VertexId> {
        self.rotation.keys().copied().collect()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    fn contains_vertex(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    fn num_vertices(&self) -> usize {
        self.rotation.len()
    }
}

impl PlaneGraph {
    /// Builds a plane graph from counterclockwise rotations, validating
    /// symmetry, simplicity and the Euler identity of every component.
    pub fn from_rotations(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
    ) -> Result<PlaneGraph, GraphError> {
        validate_rotation(&rotation)?;
        let g = PlaneGraph { rotation, outer: None, marked: BTreeSet::new() };
        g.check_euler()?;
        Ok(g)
    }

    /// Builds the embedding induced by a straight-line drawing. The drawing
    /// must be crossing-free; this is certified through the Euler identity.
    pub fn from_straight_line(
        coords: &BTreeMap<VertexId, (f64, f64)>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<PlaneGraph, GraphError> {
        let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
            coords.keys().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                rotation.get_mut(&a).ok_or(GraphError::UnknownVertex(a))?.push(b);
            }
        }
        for (v, nbrs) in rotation.iter_mut() {
            let (x0, y0) = coords[v];
            let mut keyed: Vec<(f64, VertexId)> = Vec::with_capacity(nbrs.len());
            for &w in nbrs.iter() {
                let (x1, y1) = *coords.get(&w).ok_or(GraphError::UnknownVertex(w))?;
                keyed.push(((y1 - y0).atan2(x1 - x0), w));
            }
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
            *nbrs = keyed.into_iter().map(|(_, w)| w).collect();
        }
        PlaneGraph::from_rotations(rotation)
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn marked(&self) -> &BTreeSet<VertexId> {
        &self.marked
    }

    pub fn set_marked<I: IntoIterator<Item = VertexId>>(&mut self, marked: I) {
        self.marked = marked.into_iter().collect();
    }

    pub fn with_marked<I: IntoIterator<Item = VertexId>>(mut self, marked: I) -> Self {
        self.set_marked(marked);
        self
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    /// Marks the face containing dart `d` as the outer face.
    pub fn set_outer_dart(&mut self, d: Option<Dart>) -> Result<(), GraphError> {
        if let Some((u, v)) = d {
            if !self.has_edge(u, v) {
                return Err(GraphError::BadOuterFace(vec![u, v]));
            }
        }
        self.outer = d;
        Ok(())
    }

    /// Marks the face whose walk is `walk` (read cyclically, starting at
    /// `walk[0]`) as the outer face.
    pub fn set_outer_walk(&mut self, walk: &[VertexId]) -> Result<(), GraphError> {
        let bad = || GraphError::BadOuterFace(walk.to_vec());
        if walk.len() < 2 {
            return Err(bad());
        }
        let dart = (walk[0], walk[1]);
        if !self.has_edge(dart.0, dart.1) {
            return Err(bad());
        }
        let face = self.face_of_dart(dart);
        if face.vertices != walk {
            return Err(bad());
        }
        self.outer = Some(dart);
        Ok(())
    }

    pub fn fresh_id(&self) -> VertexId {
        self.rotation.keys().next_back().map_or(0, |&v| v + 1)
    }

    /// Successor of `u` in the rotation of `v`.
    pub fn succ(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = &self.rotation[&v];
        let i = rot.iter().position(|&w| w == u).expect("dart exists");
        rot[(i + 1) % rot.len()]
    }

    /// Predecessor of `u` in the rotation of `v`.
    pub fn pred(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = &self.rotation[&v];
        let i = rot.iter().position(|&w| w == u).expect("dart exists");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// The dart following `d` on its face.
    pub fn next_dart(&self, d: Dart) -> Dart {
        (d.1, self.succ(d.1, d.0))
    }

    /// Traces the face containing dart `d`, starting at `d`.
    pub fn face_of_dart(&self, d: Dart) -> FacialWalk {
        let mut darts = vec![d];
        let mut cur = self.next_dart(d);
        while cur != d {
            darts.push(cur);
            cur = self.next_dart(cur);
        }
        let vertices = darts.iter().map(|d| d.0).collect();
        FacialWalk { id: 0, darts, vertices }
    }

    /// All faces. Ids are assigned in order of the smallest unvisited dart,
    /// scanning vertices increasingly and rotations in order; an isolated
    /// vertex contributes one empty face.
    pub fn trace_faces(&self) -> Vec<FacialWalk> {
        trace_rotation_faces(&self.rotation).expect("validated rotation")
    }

    /// The outer face, when marked.
    pub fn outer_face(&self) -> Option<FacialWalk> {
        let d = self.outer?;
        self.trace_faces().into_iter().find(|f| f.contains_dart(d))
    }

    /// Outer face walk read from the marked dart.
    pub fn outer_walk(&self) -> Option<Vec<VertexId>> {
        self.outer.map(|d| self.face_of_dart(d).vertices)
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_adjacency(
            self.rotation
                .iter()
                .map(|(&v, nbrs)| (v, nbrs.clone()))
                .collect(),
        )
    }

    /// Checks `V - E + F = 2` for every component.
    pub fn check_euler(&self) -> Result<(), GraphError> {
        let faces = self.trace_faces();
        for comp in components(self) {
            let set: BTreeSet<_> = comp.iter().copied().collect();
            let v = comp.len();
            let e = comp.iter().map(|&u| self.degree(u)).sum::<usize>() / 2;
            let f = faces.iter().filter(|f| set.contains(&f.vertices[0])).count();
            if v + f != e + 2 {
                return Err(GraphError::NotSpherical { vertex: comp[0], v, e, f });
            }
        }
        Ok(())
    }

    pub fn girth(&self) -> Option<usize> {
        girth(self)
    }

    pub fn is_triangle_free(&self) -> bool {
        is_triangle_free(self)
    }

    /// Faces incident with `v`, by id.
    pub fn faces_at(&self, faces: &[FacialWalk], v: VertexId) -> Vec<usize> {
        faces.iter().filter(|f| f.contains(v)).map(|f| f.id).collect()
    }

    /// Applies a vertex renaming; rotations, marks and the outer dart follow.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> PlaneGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|(v, nbrs)| (map[v], nbrs.iter().map(|w| map[w]).collect()))
            .collect();
        PlaneGraph {
            rotation,
            outer: self.outer.map(|(a, b)| (map[&a], map[&b])),
            marked: self.marked.iter().map(|v| map[v]).collect(),
        }
    }

    /// Reverses every rotation (the mirror embedding).
    pub fn mirrored(&self) -> PlaneGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|(&v, nbrs)| (v, nbrs.iter().rev().copied().collect()))
            .collect();
        PlaneGraph { rotation, outer: self.outer.map(|(a, b)| (b, a)), marked: self.marked.clone() }
    }

    /// Shortest-path distance between two vertices.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        bfs_distances(self, u).get(&v).copied()
    }

    pub(crate) fn from_parts_unchecked(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer: Option<Dart>,
        marked: BTreeSet<VertexId>,
    ) -> PlaneGraph {
        PlaneGraph { rotation, outer, marked }
    }
}

fn validate_rotation(rotation: &BTreeMap<VertexId, Vec<VertexId>>) -> Result<(), GraphError> {
    for (&v, nbrs) in rotation {
        let mut seen = BTreeSet::new();
        for &w in nbrs {
            if w == v {
                return Err(GraphError::Loop(v));
            }
            if !seen.insert(w) {
                return Err(GraphError::ParallelEdge(v.min(w), v.max(w)));
            }
            match rotation.get(&w) {
                None => return Err(GraphError::UnknownVertex(w)),
                Some(back) if !back.contains(&v) => return Err(GraphError::MissingPartner(v, w)),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Face tracing on a raw rotation map; fails on darts without a partner.
pub fn trace_rotation_faces(
    rotation: &BTreeMap<VertexId, Vec<VertexId>>,
) -> Result<Vec<FacialWalk>, GraphError> {
    let succ = |v: VertexId, u: VertexId| -> Result<VertexId, GraphError> {
        let rot = rotation.get(&v).ok_or(GraphError::UnknownVertex(v))?;
        let i = rot.iter().position(|&w| w == u).ok_or(GraphError::MissingPartner(u, v))?;
        Ok(rot[(i + 1) % rot.len()])
    };
    let mut visited: BTreeSet<Dart> = BTreeSet::new();
    let mut faces = Vec::new();
    for (&v, nbrs) in rotation {
        if nbrs.is_empty() {
            let id = faces.len();
            faces.push(FacialWalk { id, darts: Vec::new(), vertices: vec![v] });
            continue;
        }
        for &w in nbrs {
            let start = (v, w);
            if visited.contains(&start) {
                continue;
            }
            let mut darts = Vec::new();
            let mut cur = start;
            loop {
                if !visited.insert(cur) {
                    return Err(GraphError::MissingPartner(cur.0, cur.1));
                }
                darts.push(cur);
                cur = (cur.1, succ(cur.1, cur.0)?);
                if cur == start {
                    break;
                }
            }
            let id = faces.len();
            let vertices = darts.iter().map(|d| d.0).collect();
            faces.push(FacialWalk { id, darts, vertices });
        }
    }
    Ok(faces)
}

#[cfg(test)]
mod tests;
