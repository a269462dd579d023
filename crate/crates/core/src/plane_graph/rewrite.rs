//! Embedding-preserving rewrites. Each returns a fresh graph and leaves the
//! input untouched. Removed vertices drop out of the marked set; removing a
//! vertex of the outer face walk is an error.

use std::collections::{BTreeMap, BTreeSet};

use super::{FacialWalk, Graph, PlaneGraph, RewriteError, VertexId};

impl PlaneGraph {
    fn check_face(&self, face: &FacialWalk) -> Result<(), RewriteError> {
        let Some(&d) = face.darts.first() else {
            return Err(RewriteError::StaleFace);
        };
        if !self.has_edge(d.0, d.1) || self.face_of_dart(d).darts != face.darts {
            return Err(RewriteError::StaleFace);
        }
        Ok(())
    }

    fn outer_vertices(&self) -> BTreeSet<VertexId> {
        self.outer_walk().unwrap_or_default().into_iter().collect()
    }

    fn require_vertex(&self, v: VertexId) -> Result<(), RewriteError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(RewriteError::NoSuchVertex(v))
        }
    }

    /// Removes the given vertices with all incident edges.
    pub fn delete_vertices(&self, remove: &BTreeSet<VertexId>) -> Result<PlaneGraph, RewriteError> {
        for &v in remove {
            self.require_vertex(v)?;
        }
        if self.outer_vertices().iter().any(|v| remove.contains(v)) {
            return Err(RewriteError::OuterFaceDestroyed);
        }
        let rotation = self
            .rotation
            .iter()
            .filter(|(v, _)| !remove.contains(v))
            .map(|(&v, nbrs)| (v, nbrs.iter().copied().filter(|w| !remove.contains(w)).collect()))
            .collect();
        let marked = self.marked.iter().copied().filter(|v| !remove.contains(v)).collect();
        Ok(PlaneGraph::from_parts_unchecked(rotation, self.outer, marked))
    }

    /// Subgraph induced by `keep`, with the outer face and marks dropped.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> PlaneGraph {
        let rotation = self
            .rotation
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nbrs)| (v, nbrs.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        let marked = self.marked.intersection(keep).copied().collect();
        PlaneGraph::from_parts_unchecked(rotation, None, marked)
    }

    /// Merges `remove` into `keep` through a face containing both. Edges that
    /// would become parallel are merged. The two vertices must not be adjacent.
    pub fn identify_vertices(
        &self,
        keep: VertexId,
        remove: VertexId,
        face: &FacialWalk,
    ) -> Result<PlaneGraph, RewriteError> {
        if keep == remove {
            return Err(RewriteError::SameVertex(keep));
        }
        self.require_vertex(keep)?;
        self.require_vertex(remove)?;
        if self.has_edge(keep, remove) {
            return Err(RewriteError::Adjacent(keep, remove));
        }
        if self.outer_vertices().contains(&remove) {
            return Err(RewriteError::OuterFaceDestroyed);
        }
        let rot_keep = &self.rotation[&keep];
        let rot_remove = &self.rotation[&remove];

        // Entries tagged `true` come from `remove`.
        let mut merged: Vec<(VertexId, bool)> = Vec::new();
        if rot_remove.is_empty() {
            merged.extend(rot_keep.iter().map(|&w| (w, false)));
        } else if rot_keep.is_empty() {
            merged.extend(rot_remove.iter().map(|&w| (w, true)));
        } else {
            self.check_face(face)?;
            let (_, q) = face.corner(keep).ok_or(RewriteError::NotOnFace(keep))?;
            let (_, q2) = face.corner(remove).ok_or(RewriteError::NotOnFace(remove))?;
            // Keep's rotation read from q ends at p; remove's from q2 ends at p2.
            let i = rot_keep.iter().position(|&w| w == q).expect("corner");
            let j = rot_remove.iter().position(|&w| w == q2).expect("corner");
            let n = rot_keep.len();
            let m = rot_remove.len();
            merged.extend((0..n).map(|k| (rot_keep[(i + k) % n], false)));
            merged.extend((0..m).map(|k| (rot_remove[(j + k) % m], true)));
        }

        let keep_nbrs: BTreeSet<VertexId> = rot_keep.iter().copied().collect();
        let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (&v, nbrs) in &self.rotation {
            if v == remove {
                continue;
            }
            if v == keep {
                let list = merged
                    .iter()
                    .filter(|(w, from_remove)| !(*from_remove && keep_nbrs.contains(w)))
                    .map(|(w, _)| *w)
                    .collect();
                rotation.insert(v, list);
                continue;
            }
            let shared = keep_nbrs.contains(&v);
            let list = nbrs
                .iter()
                .filter_map(|&w| match w {
                    w if w == remove && shared => None,
                    w if w == remove => Some(keep),
                    w => Some(w),
                })
                .collect();
            rotation.insert(v, list);
        }
        let marked = self.marked.iter().copied().filter(|&v| v != remove).collect();
        Ok(PlaneGraph::from_parts_unchecked(rotation, self.outer, marked))
    }

    /// Adds the edge `uv` inside `face`, splitting it in two. Uses the first
    /// corner of each endpoint on the walk.
    pub fn add_edge_in_face(
        &self,
        u: VertexId,
        v: VertexId,
        face: &FacialWalk,
    ) -> Result<PlaneGraph, RewriteError> {
        if u == v {
            return Err(RewriteError::SameVertex(u));
        }
        self.require_vertex(u)?;
        self.require_vertex(v)?;
        if self.has_edge(u, v) {
            return Err(RewriteError::Adjacent(u, v));
        }
        let mut rotation = self.rotation.clone();
        if face.darts.is_empty() {
            // Face of an isolated vertex: both ends must be isolated or the
            // face is not shared.
            if !(face.contains(u) || face.contains(v)) {
                return Err(RewriteError::NotOnFace(u));
            }
        } else {
            self.check_face(face)?;
        }
        for (a, b) in [(u, v), (v, u)] {
            let rot = rotation.get_mut(&a).expect("vertex");
            if rot.is_empty() {
                rot.push(b);
                continue;
            }
            let (p, _) = face.corner(a).ok_or(RewriteError::NotOnFace(a))?;
            let i = rot.iter().position(|&w| w == p).expect("corner");
            rot.insert(i + 1, b);
        }
        Ok(PlaneGraph::from_parts_unchecked(rotation, self.outer, self.marked.clone()))
    }

    /// Joins `a` and `b`, which lie in different components, by an edge from
    /// the corner of `face_a` at `a` to the corner of `face_b` at `b`. The
    /// component of `b` ends up drawn inside `face_a`.
    pub fn connect_components(
        &self,
        a: VertexId,
        face_a: &FacialWalk,
        b: VertexId,
        face_b: &FacialWalk,
    ) -> Result<PlaneGraph, RewriteError> {
        self.require_vertex(a)?;
        self.require_vertex(b)?;
        if super::bfs_distances(self, a).contains_key(&b) {
            return Err(RewriteError::SameComponent(a, b));
        }
        let mut rotation = self.rotation.clone();
        for (u, v, face) in [(a, b, face_a), (b, a, face_b)] {
            let rot = rotation.get_mut(&u).expect("vertex");
            if rot.is_empty() {
                rot.push(v);
                continue;
            }
            self.check_face(face)?;
            let (p, _) = face.corner(u).ok_or(RewriteError::NotOnFace(u))?;
            let i = rot.iter().position(|&w| w == p).expect("corner");
            rot.insert(i + 1, v);
        }
        Ok(PlaneGraph::from_parts_unchecked(rotation, self.outer, self.marked.clone()))
    }

    /// Replaces `x` (degree `d >= 2`) by a facial cycle `C_x` attached to the
    /// former neighbors. For `d >= 3` the cycle has length `2d`; for `d = 2` it
    /// is a 5-cycle. Returns the new graph and the cycle, listed as
    /// `y^1, y_1, y^2, y_2, ..., y^d, y_d` (for `d = 2`: `y^1, y_1, y^2, y^3, y_2`),
    /// where `y_i` are the neighbors of `x` in rotation order.
    pub fn split_vertex(&self, x: VertexId) -> Result<(PlaneGraph, Vec<VertexId>), RewriteError> {
        self.require_vertex(x)?;
        if self.outer.is_some_and(|(a, b)| a == x || b == x) || self.outer_vertices().contains(&x)
        {
            return Err(RewriteError::OuterFaceDestroyed);
        }
        let ys = self.rotation[&x].clone();
        let d = ys.len();
        if d < 2 {
            return Err(RewriteError::UnsupportedDegree { vertex: x, degree: d });
        }
        let base = self.fresh_id();
        let mut rotation = self.rotation.clone();
        rotation.remove(&x);
        let replace = |rot: &mut Vec<VertexId>, with: [VertexId; 2]| {
            let i = rot.iter().position(|&w| w == x).expect("neighbor of x");
            rot.splice(i..=i, with);
        };
        let cycle;
        if d == 2 {
            let (y1, y2) = (ys[0], ys[1]);
            let (s1, s2, s3) = (base, base + 1, base + 2);
            replace(rotation.get_mut(&y1).unwrap(), [s2, s1]);
            replace(rotation.get_mut(&y2).unwrap(), [s1, s3]);
            rotation.insert(s1, vec![y1, y2]);
            rotation.insert(s2, vec![y1, s3]);
            rotation.insert(s3, vec![s2, y2]);
            cycle = vec![s1, y1, s2, s3, y2];
        } else {
            // y^i has id base + i - 1 and sits between y_{i-1} and y_i.
            let sup = |i: usize| base + (i % d) as VertexId;
            let mut c = Vec::with_capacity(2 * d);
            for i in 0..d {
                let y = ys[i];
                replace(rotation.get_mut(&y).unwrap(), [sup(i + 1), sup(i)]);
                rotation.insert(sup(i), vec![ys[(i + d - 1) % d], y]);
                c.push(sup(i));
                c.push(y);
            }
            cycle = c;
        }
        let marked = self.marked.iter().copied().filter(|&v| v != x).collect();
        Ok((PlaneGraph::from_parts_unchecked(rotation, self.outer, marked), cycle))
    }

    /// Adds a path `u n_1 ... n_k v` of `k` new vertices drawn inside `face`.
    /// With `k = 0` this is [`PlaneGraph::add_edge_in_face`].
    pub fn add_path_in_face(
        &self,
        u: VertexId,
        v: VertexId,
        k: usize,
        face: &FacialWalk,
    ) -> Result<(PlaneGraph, Vec<VertexId>), RewriteError> {
        if k == 0 {
            return Ok((self.add_edge_in_face(u, v, face)?, Vec::new()));
        }
        if u == v {
            return Err(RewriteError::SameVertex(u));
        }
        self.check_face(face)?;
        let (pu, _) = face.corner(u).ok_or(RewriteError::NotOnFace(u))?;
        let (pv, _) = face.corner(v).ok_or(RewriteError::NotOnFace(v))?;
        let base = self.fresh_id();
        let new: Vec<VertexId> = (0..k as VertexId).map(|i| base + i).collect();
        let mut rotation = self.rotation.clone();
        for (a, p, n) in [(u, pu, new[0]), (v, pv, new[k - 1])] {
            let rot = rotation.get_mut(&a).unwrap();
            let i = rot.iter().position(|&w| w == p).unwrap();
            rot.insert(i + 1, n);
        }
        for (i, &c) in new.iter().enumerate() {
            let prev = if i == 0 { u } else { new[i - 1] };
            let next = if i + 1 == k { v } else { new[i + 1] };
            rotation.insert(c, vec![prev, next]);
        }
        Ok((PlaneGraph::from_parts_unchecked(rotation, self.outer, self.marked.clone()), new))
    }

    /// Adds a new leaf attached to `u` inside `face` (any face at `u` when
    /// `u` is isolated).
    pub fn add_pendant_in_face(
        &self,
        u: VertexId,
        face: &FacialWalk,
    ) -> Result<(PlaneGraph, VertexId), RewriteError> {
        self.require_vertex(u)?;
        let z = self.fresh_id();
        let mut rotation = self.rotation.clone();
        let rot = rotation.get_mut(&u).unwrap();
        if rot.is_empty() {
            rot.push(z);
        } else {
            self.check_face(face)?;
            let (p, _) = face.corner(u).ok_or(RewriteError::NotOnFace(u))?;
            let i = rot.iter().position(|&w| w == p).unwrap();
            rot.insert(i + 1, z);
        }
        rotation.insert(z, vec![u]);
        Ok((PlaneGraph::from_parts_unchecked(rotation, self.outer, self.marked.clone()), z))
    }

    /// Attaches a new cycle `x c_1 ... c_{k-1}` in the corner of `face` at `x`
    /// and marks the new empty face as the outer face. Returns the graph and
    /// the new vertices `c_1, ..., c_{k-1}`.
    pub fn attach_outer_cycle(
        &self,
        x: VertexId,
        face: Option<&FacialWalk>,
        k: usize,
    ) -> Result<(PlaneGraph, Vec<VertexId>), RewriteError> {
        self.require_vertex(x)?;
        assert!(k >= 3, "cycle length at least 3");
        let base = self.fresh_id();
        let new: Vec<VertexId> = (0..k as VertexId - 1).map(|i| base + i).collect();
        let mut rotation = self.rotation.clone();
        let first = new[0];
        let last = *new.last().unwrap();
        {
            let rot = rotation.get_mut(&x).unwrap();
            if rot.is_empty() {
                rot.extend([first, last]);
            } else {
                let face = face.ok_or(RewriteError::StaleFace)?;
                self.check_face(face)?;
                let (p, _) = face.corner(x).ok_or(RewriteError::NotOnFace(x))?;
                let i = rot.iter().position(|&w| w == p).unwrap();
                rot.splice(i + 1..i + 1, [first, last]);
            }
        }
        for (i, &c) in new.iter().enumerate() {
            let prev = if i == 0 { x } else { new[i - 1] };
            let next = if i + 1 == new.len() { x } else { new[i + 1] };
            rotation.insert(c, vec![prev, next]);
        }
        let g = PlaneGraph::from_parts_unchecked(rotation, Some((x, last)), self.marked.clone());
        Ok((g, new))
    }
}
