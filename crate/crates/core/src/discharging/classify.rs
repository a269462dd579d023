//! Face taxonomy around the enhanced vertex `x`.
//!
//! Readings are 5-arrays along a face boundary. Unlike the minimal
//! counterexample, a concrete graph need not satisfy the degree facts the
//! definitions derive from reducibility, so those facts are required
//! explicitly (for example both `v1` and `v2` of a type-A face must be
//! 2-vertices off the outer cycle).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{DischargeError, Element};
use crate::plane_graph::{Dart, FacialWalk, Graph, PlaneGraph, VertexId};
use crate::reduction::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FaceLabel {
    #[serde(rename = "plain")]
    Plain,
    A1,
    A2,
    A3,
    B,
    C,
    D,
    E,
    F,
    #[serde(rename = "special")]
    Special,
    #[serde(rename = "outer")]
    Outer,
}

/// What a connection means; the source is always the element said to be
/// connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// A vertex on the outer cycle or of degree at least 5, to a type-A-1 or
    /// type-A-2 face.
    VertexToA,
    CToA2,
    DToA2,
    /// A type-E face to the 5-face `k` beyond it.
    EToFace,
    /// A type-F face to its 5-vertex.
    FToVertex,
    /// A special 5-face to the face containing the path `x v5 v1`.
    SpecialToFace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Connection {
    pub from: Element,
    pub to: Element,
    pub relation: Relation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnomalyKind {
    /// A vertex is connected to the same type-A face from both sides.
    RepeatedConnection,
    /// A type-C face connected to both of its type-A-2 faces.
    CConnectedTwice,
    /// A type-D face connected to more than two type-A-2 faces.
    DConnectedMany,
    /// A type-E face connected to more than one face.
    EConnectedMany,
    /// A type-F face connected to more than one vertex.
    FConnectedMany,
    /// A special face connected to more than one face.
    SpecialConnectedMany,
    /// A type-D, E or F face also carrying an A, B or C label, or D with E.
    LabelConflict,
    /// A type-B and a type-A-2 face sharing both edges at `x`.
    SharedXEdges,
}

/// A place where the labeling departs from what a minimal counterexample
/// would allow. The rules still run; the audit lists these.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Anomaly {
    pub kind: AnomalyKind,
    pub elements: Vec<Element>,
}

/// How to treat inner faces that are not 5-cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypotheses {
    /// Every inner face must be bounded by a 5-cycle.
    Strict,
    /// Other faces are allowed and simply never receive a label.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceInfo {
    pub id: usize,
    pub boundary: Vec<VertexId>,
    pub labels: BTreeSet<FaceLabel>,
    /// Outer-cycle vertices this face is tied to (`x` included).
    pub tied: BTreeSet<VertexId>,
    /// Only meaningful on type-A-2 faces.
    pub tight: bool,
}

impl FaceInfo {
    pub fn has(&self, l: FaceLabel) -> bool {
        self.labels.contains(&l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceClassification {
    pub x: VertexId,
    pub outer: usize,
    pub on_c: BTreeSet<VertexId>,
    pub faces: Vec<FaceInfo>,
    pub connections: BTreeSet<Connection>,
    pub anomalies: Vec<Anomaly>,
}

impl FaceClassification {
    pub fn face(&self, id: usize) -> &FaceInfo {
        &self.faces[id]
    }

    pub fn connected(&self, relation: Relation) -> impl Iterator<Item = &Connection> + '_ {
        self.connections.iter().filter(move |c| c.relation == relation)
    }

    /// `true` when `e` is a face carrying label `l`.
    pub fn is(&self, e: Element, l: FaceLabel) -> bool {
        matches!(e, Element::Face(f) if self.faces[f].has(l))
    }
}

/// Classifies the faces of an instance, which must have its enhanced vertex.
pub fn classify_instance(inst: &Instance) -> Result<FaceClassification, DischargeError> {
    let x = inst.x.ok_or(DischargeError::NoEnhancedVertex)?;
    classify(&inst.g, x, Hypotheses::Strict)
}

/// Labels every face of `g` relative to `x`, which must lie on the marked
/// outer face.
pub fn classify(g: &PlaneGraph, x: VertexId, mode: Hypotheses) -> Result<FaceClassification, DischargeError> {
    let fr = Frame::new(g, x)?;
    if mode == Hypotheses::Strict {
        if let Some(f) = fr.faces.iter().find(|f| f.id != fr.outer && !fr.pent(f.id)) {
            return Err(DischargeError::NotPentagonal { face: f.id, boundary: f.vertices.clone() });
        }
    }
    Ok(fr.classify())
}

pub(crate) struct Frame<'a> {
    pub g: &'a PlaneGraph,
    pub x: VertexId,
    pub faces: Vec<FacialWalk>,
    pub dart_face: BTreeMap<Dart, usize>,
    pub outer: usize,
    pub on_c: BTreeSet<VertexId>,
}

impl<'a> Frame<'a> {
    pub fn new(g: &'a PlaneGraph, x: VertexId) -> Result<Frame<'a>, DischargeError> {
        let d = g.outer_dart().ok_or(DischargeError::NoOuterFace)?;
        let faces = g.trace_faces();
        let dart_face: BTreeMap<Dart, usize> =
            faces.iter().flat_map(|f| f.darts.iter().map(move |&d| (d, f.id))).collect();
        let outer = dart_face[&d];
        let on_c = faces[outer].vertex_set();
        if !on_c.contains(&x) {
            return Err(DischargeError::OffOuterFace(x));
        }
        Ok(Frame { g, x, faces, dart_face, outer, on_c })
    }

    pub fn deg(&self, v: VertexId) -> usize {
        self.g.degree(v)
    }

    pub fn in_c(&self, v: VertexId) -> bool {
        self.on_c.contains(&v)
    }

    /// Inner face bounded by a 5-cycle.
    pub fn pent(&self, f: usize) -> bool {
        f != self.outer && self.faces[f].len() == 5 && self.faces[f].is_cycle()
    }

    /// Boundary of pentagonal face `f` read from `a` towards its neighbor `b`.
    fn read(&self, f: usize, a: VertexId, b: VertexId) -> Option<[VertexId; 5]> {
        if !self.pent(f) {
            return None;
        }
        let w = &self.faces[f].vertices;
        let i = w.iter().position(|&v| v == a)?;
        let step = if w[(i + 1) % 5] == b {
            1
        } else if w[(i + 4) % 5] == b {
            4
        } else {
            return None;
        };
        Some(std::array::from_fn(|k| w[(i + k * step) % 5]))
    }

    /// Both readings of pentagonal face `f` starting at `a`.
    fn readings_from(&self, f: usize, a: VertexId) -> Vec<[VertexId; 5]> {
        if !self.pent(f) || !self.faces[f].contains(a) {
            return Vec::new();
        }
        let (p, q) = self.faces[f].corner(a).expect("on face");
        [q, p].into_iter().filter_map(|b| self.read(f, a, b)).collect()
    }

    /// The face across edge `ab` from `f`.
    fn across(&self, f: usize, a: VertexId, b: VertexId) -> Option<usize> {
        let (s, t) = (*self.dart_face.get(&(a, b))?, self.dart_face[&(b, a)]);
        match (s == f, t == f) {
            (true, false) => Some(t),
            (false, true) => Some(s),
            _ => None,
        }
    }

    /// The face with consecutive boundary vertices `a v b`.
    pub fn corner(&self, a: VertexId, v: VertexId, b: VertexId) -> Option<usize> {
        if !self.g.has_edge(a, v) || !self.g.has_edge(v, b) {
            return None;
        }
        if self.g.succ(v, a) == b {
            Some(self.dart_face[&(a, v)])
        } else if self.g.succ(v, b) == a {
            Some(self.dart_face[&(b, v)])
        } else {
            None
        }
    }

    /// Faces through `x` in increasing id order.
    fn x_faces(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| self.pent(f.id) && f.contains(self.x)).map(|f| f.id).collect()
    }

    /// Reading `x v1 u1 u2 v2` of a type-A face: `v1, v2` are 2-vertices off
    /// the outer cycle, `u1` a 3-vertex off it, `u2` off it with degree at
    /// least 3.
    fn a_reading(&self, r: &[VertexId; 5]) -> bool {
        let [_, v1, u1, u2, v2] = *r;
        [v1, u1, u2, v2].iter().all(|&v| !self.in_c(v))
            && self.deg(v1) == 2
            && self.deg(v2) == 2
            && self.deg(u1) == 3
            && self.deg(u2) >= 3
    }

    fn b_reading(&self, r: &[VertexId; 5]) -> bool {
        let [_, v1, u1, _, v2] = *r;
        !self.in_c(v1) && !self.in_c(u1) && self.deg(v1) == 2 && self.deg(u1) == 4 && self.deg(v2) >= 3
    }

    fn classify(&self) -> FaceClassification {
        let mut labels: Vec<BTreeSet<FaceLabel>> = vec![BTreeSet::new(); self.faces.len()];
        let mut tied: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); self.faces.len()];
        let mut conn: BTreeSet<Connection> = BTreeSet::new();
        let mut anomalies: BTreeSet<Anomaly> = BTreeSet::new();
        labels[self.outer].insert(FaceLabel::Outer);
        let x = self.x;
        let link = |conn: &mut BTreeSet<Connection>, from, to, relation| {
            conn.insert(Connection { from, to, relation });
        };

        // Type A (with the readings that witness it) and type B.
        let mut a_readings: BTreeMap<usize, Vec<[VertexId; 5]>> = BTreeMap::new();
        for f in self.x_faces() {
            for r in self.readings_from(f, x) {
                if self.a_reading(&r) {
                    let l = match self.deg(r[3]) {
                        3 => FaceLabel::A1,
                        4 => FaceLabel::A2,
                        _ => FaceLabel::A3,
                    };
                    labels[f].insert(l);
                    a_readings.entry(f).or_default().push(r);
                }
                if self.b_reading(&r) {
                    labels[f].insert(FaceLabel::B);
                }
            }
        }

        // Vertices connected to type-A-1 and type-A-2 faces.
        for (&f, rs) in &a_readings {
            if labels[f].contains(&FaceLabel::A3) {
                continue;
            }
            for r in rs {
                let [_, v1, _, _, v2] = *r;
                let ends: Vec<VertexId> = [v1, v2]
                    .into_iter()
                    .filter_map(|v| {
                        let h = self.across(f, x, v)?;
                        self.read(h, x, v).map(|s| s[3])
                    })
                    .collect();
                for &u in &ends {
                    if u != x && (self.in_c(u) || self.deg(u) >= 5) {
                        link(&mut conn, Element::Vertex(u), Element::Face(f), Relation::VertexToA);
                    }
                }
                if ends.len() == 2 && ends[0] == ends[1] && (self.in_c(ends[0]) || self.deg(ends[0]) >= 5) {
                    anomalies.insert(Anomaly {
                        kind: AnomalyKind::RepeatedConnection,
                        elements: vec![Element::Vertex(ends[0]), Element::Face(f)],
                    });
                }
            }
        }

        // Types C, D and E grow from a type-A-2 face `f1 = x v1 u1 u2 v2`
        // read with `deg(u1) = 4`, `deg(u2) = 3`.
        for (&f1, rs) in &a_readings {
            if !labels[f1].contains(&FaceLabel::A2) {
                continue;
            }
            for r in rs {
                let (u1, u2, v2) = (r[3], r[2], r[1]);
                let Some(f2) = self.across(f1, x, v2) else { continue };
                let Some([_, _, u2b, u3, v3]) = self.read(f2, x, v2) else { continue };
                if u2b != u2 || self.in_c(u3) || self.in_c(v3) || self.deg(v3) != 2 || self.deg(u3) != 4 {
                    continue;
                }
                let Some(g) = self.corner(u1, u2, u3) else { continue };
                let Some([_, _, _, w3, w1]) = self.read(g, u1, u2) else { continue };
                labels[g].insert(FaceLabel::C);
                if self.deg(w1) == 3 {
                    link(&mut conn, Element::Face(g), Element::Face(f1), Relation::CToA2);
                }
                if self.deg(w3) == 3 {
                    link(&mut conn, Element::Face(g), Element::Face(f2), Relation::CToA2);
                }
                if self.deg(w3) < 4 {
                    continue;
                }
                let Some(f3) = self.across(f2, x, v3) else { continue };
                let Some([_, _, u3b, u4, v4]) = self.read(f3, x, v3) else { continue };
                if u3b != u3 || self.in_c(u4) {
                    continue;
                }
                if self.deg(v4) == 2 && self.deg(u4) == 4 {
                    if let Some(h) = self.corner(w3, u3, u4).filter(|&h| self.pent(h)) {
                        labels[h].insert(FaceLabel::D);
                        link(&mut conn, Element::Face(h), Element::Face(f2), Relation::DToA2);
                    }
                } else if self.deg(v4) == 3 && self.deg(u4) == 3 && !self.in_c(v4) {
                    let Some(&w4) = self.g.neighbors(u4).iter().find(|&&w| w != u3 && w != v4) else { continue };
                    let Some(k) = self.corner(v4, u4, w4) else { continue };
                    let Some([_, _, _, y4, z4]) = self.read(k, v4, u4) else { continue };
                    let ok = self.deg(y4) == 3
                        && self.deg(z4) == 3
                        && self.deg(w4) >= 4
                        && [w4, y4, z4].iter().all(|&v| !self.in_c(v));
                    if let (true, Some(q)) = (ok, self.corner(w4, u4, u3).filter(|&q| self.pent(q))) {
                        labels[q].insert(FaceLabel::E);
                        link(&mut conn, Element::Face(q), Element::Face(k), Relation::EToFace);
                    }
                }
            }
        }

        // Type F: `x v1 u1 u2 v2` and `x v2 u2 u3 v3` with degrees 5, 3, 4.
        for f1 in self.x_faces() {
            for [_, v1, u1, u2, v2] in self.readings_from(f1, x) {
                let ok = [u1, u2].iter().all(|&u| !self.in_c(u))
                    && self.deg(v1) == 2
                    && self.deg(v2) == 2
                    && self.deg(u1) == 5
                    && self.deg(u2) == 3;
                if !ok {
                    continue;
                }
                let Some(f2) = self.across(f1, x, v2) else { continue };
                let Some([_, _, u2b, u3, v3]) = self.read(f2, x, v2) else { continue };
                if u2b != u2 || self.in_c(u3) || self.deg(v3) != 2 || self.deg(u3) != 4 {
                    continue;
                }
                let Some(g) = self.corner(u1, u2, u3) else { continue };
                let Some([_, _, w1, w3, _]) = self.read(g, u2, u1) else { continue };
                if self.deg(w1) >= 4 || self.deg(w3) >= 4 {
                    labels[g].insert(FaceLabel::F);
                    link(&mut conn, Element::Face(g), Element::Vertex(u1), Relation::FToVertex);
                }
            }
        }

        // Tied faces and special faces.
        for f in &self.faces {
            if !self.pent(f.id) || f.contains(x) || f.vertices.iter().filter(|&&v| self.in_c(v)).count() > 1 {
                continue;
            }
            for &z in &self.on_c {
                if f.contains(z) {
                    continue;
                }
                let via: Vec<VertexId> = self
                    .g
                    .neighbors(z)
                    .iter()
                    .copied()
                    .filter(|&w| f.contains(w) && !self.in_c(w) && self.deg(w) == 3)
                    .collect();
                if via.is_empty() {
                    continue;
                }
                tied[f.id].insert(z);
                if z != x {
                    continue;
                }
                let degs: Vec<usize> = f.vertices.iter().map(|&v| self.deg(v)).collect();
                if degs.iter().filter(|&&d| d == 3).count() != 4 || degs.iter().all(|&d| d < 4) {
                    continue;
                }
                for v5 in via {
                    let (p, q) = f.corner(v5).expect("on face");
                    let r = self.read(f.id, v5, q).expect("pentagon");
                    let high = (1..5).find(|&i| self.deg(r[i]) >= 4).expect("one 4+-vertex");
                    let v1 = if high <= 2 { q } else { p };
                    if let Some(g) = self.corner(x, v5, v1) {
                        labels[f.id].insert(FaceLabel::Special);
                        link(&mut conn, Element::Face(f.id), Element::Face(g), Relation::SpecialToFace);
                    }
                }
            }
        }

        let mut faces: Vec<FaceInfo> = self
            .faces
            .iter()
            .map(|f| FaceInfo {
                id: f.id,
                boundary: f.vertices.clone(),
                labels: std::mem::take(&mut labels[f.id]),
                tied: std::mem::take(&mut tied[f.id]),
                tight: false,
            })
            .collect();
        for f in &mut faces {
            if f.labels.is_empty() && f.tied.is_empty() {
                f.labels.insert(FaceLabel::Plain);
            }
        }
        for i in 0..faces.len() {
            if faces[i].has(FaceLabel::A2) {
                let me = Element::Face(i);
                faces[i].tight = !conn.iter().any(|c| {
                    c.to == me && matches!(c.relation, Relation::VertexToA | Relation::CToA2)
                });
            }
        }

        let mut cls = FaceClassification {
            x,
            outer: self.outer,
            on_c: self.on_c.clone(),
            faces,
            connections: conn,
            anomalies: Vec::new(),
        };
        self.collect_anomalies(&cls, &mut anomalies);
        cls.anomalies = anomalies.into_iter().collect();
        cls
    }

    fn collect_anomalies(&self, cls: &FaceClassification, out: &mut BTreeSet<Anomaly>) {
        let mut by_source: BTreeMap<(Element, Relation), Vec<Element>> = BTreeMap::new();
        for c in &cls.connections {
            by_source.entry((c.from, c.relation)).or_default().push(c.to);
        }
        for ((from, relation), to) in by_source {
            let (kind, limit) = match relation {
                Relation::CToA2 => (AnomalyKind::CConnectedTwice, 1),
                Relation::DToA2 => (AnomalyKind::DConnectedMany, 2),
                Relation::EToFace => (AnomalyKind::EConnectedMany, 1),
                Relation::FToVertex => (AnomalyKind::FConnectedMany, 1),
                Relation::SpecialToFace => (AnomalyKind::SpecialConnectedMany, 1),
                Relation::VertexToA => continue,
            };
            if to.len() > limit {
                out.insert(Anomaly { kind, elements: std::iter::once(from).chain(to).collect() });
            }
        }
        use FaceLabel::*;
        for f in &cls.faces {
            let abc = [A1, A2, A3, B, C].iter().any(|&l| f.has(l));
            if ((f.has(D) || f.has(E) || f.has(F)) && abc) || (f.has(D) && f.has(E)) {
                out.insert(Anomaly { kind: AnomalyKind::LabelConflict, elements: vec![Element::Face(f.id)] });
            }
        }
        for f in cls.faces.iter().filter(|f| f.has(B)) {
            for a in cls.faces.iter().filter(|a| a.has(A2) && a.id != f.id) {
                if shared_x_edges(self, f.id, a.id).len() > 1 {
                    out.insert(Anomaly {
                        kind: AnomalyKind::SharedXEdges,
                        elements: vec![Element::Face(f.id), Element::Face(a.id)],
                    });
                }
            }
        }
    }
}

/// Edges `x v` lying on both faces.
pub(crate) fn shared_x_edges(fr: &Frame, f: usize, h: usize) -> Vec<VertexId> {
    fr.g.neighbors(fr.x)
        .iter()
        .copied()
        .filter(|&v| {
            let (s, t) = (fr.dart_face[&(fr.x, v)], fr.dart_face[&(v, fr.x)]);
            (s == f && t == h) || (s == h && t == f)
        })
        .collect()
}
