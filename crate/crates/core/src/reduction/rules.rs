//! Rule matching and the graph side of each rewrite.
//!
//! A match is a vertex tuple; the rewrite it triggers is a pure function of
//! the instance and the tuple, which is what makes traces replayable.
//! Matches of one rule are tried in lexicographic order of their tuples and
//! the first one whose rewrite is valid (the result stays simple and
//! triangle-free) wins.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Instance;
use crate::plane_graph::{bfs_distances, components, FacialWalk, Graph, PlaneGraph, RewriteError, VertexId};

/// Reduction rules, in the order they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "DEG2-REMOVE")]
    Deg2Remove,
    #[serde(rename = "CUT-MERGE")]
    CutMerge,
    #[serde(rename = "NONFACIAL-CYCLE-SPLIT")]
    NonfacialCycleSplit,
    #[serde(rename = "FOUR-CYCLE-IDENTIFY")]
    FourCycleIdentify,
    #[serde(rename = "SIX-FACE-CHORD")]
    SixFaceChord,
    #[serde(rename = "L233")]
    L233,
    #[serde(rename = "L232325")]
    L232325,
    #[serde(rename = "L232424")]
    L232424,
    #[serde(rename = "LTIE5")]
    LTie5,
    #[serde(rename = "L242324")]
    L242324,
    #[serde(rename = "L232523")]
    L232523,
}

impl Rule {
    pub const PRIORITY: [Rule; 11] = [
        Rule::Deg2Remove,
        Rule::CutMerge,
        Rule::NonfacialCycleSplit,
        Rule::FourCycleIdentify,
        Rule::SixFaceChord,
        Rule::L233,
        Rule::L232325,
        Rule::L232424,
        Rule::LTie5,
        Rule::L242324,
        Rule::L232523,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::Deg2Remove => "DEG2-REMOVE",
            Rule::CutMerge => "CUT-MERGE",
            Rule::NonfacialCycleSplit => "NONFACIAL-CYCLE-SPLIT",
            Rule::FourCycleIdentify => "FOUR-CYCLE-IDENTIFY",
            Rule::SixFaceChord => "SIX-FACE-CHORD",
            Rule::L233 => "L233",
            Rule::L232325 => "L232325",
            Rule::L232424 => "L232424",
            Rule::LTie5 => "LTIE5",
            Rule::L242324 => "L242324",
            Rule::L232523 => "L232523",
        }
    }

    /// Rules whose configurations sit around the enhanced vertex.
    pub fn needs_x(self) -> bool {
        matches!(self, Rule::L233 | Rule::L232325 | Rule::L232424 | Rule::L242324 | Rule::L232523)
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// A rewrite producing one smaller instance.
#[derive(Debug, Clone)]
pub struct Applied {
    pub sub: Instance,
    /// Vertices absent from the sub-instance that were not merged away.
    pub deleted: BTreeSet<VertexId>,
    /// `(removed, kept)` pairs, in the order the identifications were made.
    pub merged: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone)]
pub enum Rewrite {
    Single(Applied),
    /// Cut along a separating cycle; `inside` is the side away from `C`.
    Split { cycle: Vec<VertexId>, inside: BTreeSet<VertexId> },
}

/// Read-only view of an instance used by the matchers.
pub(crate) struct Ctx<'a> {
    pub inst: &'a Instance,
    pub g: &'a PlaneGraph,
    pub on_c: BTreeSet<VertexId>,
    /// Every face except the outer one.
    pub inner: Vec<FacialWalk>,
    /// Readings `(a, b, c, d, e)` of inner 5-faces bounded by cycles, in
    /// both directions from every start.
    pub pentagons: Vec<[VertexId; 5]>,
}

impl<'a> Ctx<'a> {
    pub fn new(inst: &'a Instance) -> Ctx<'a> {
        let g = &inst.g;
        let outer = g.outer_dart().expect("instances have an outer face");
        let inner: Vec<FacialWalk> = g.trace_faces().into_iter().filter(|f| !f.contains_dart(outer)).collect();
        let mut pentagons = Vec::new();
        for f in &inner {
            if f.len() != 5 || !f.is_cycle() {
                continue;
            }
            let w = &f.vertices;
            for s in 0..5 {
                pentagons.push(std::array::from_fn(|i| w[(s + i) % 5]));
                pentagons.push(std::array::from_fn(|i| w[(s + 5 - i) % 5]));
            }
        }
        pentagons.sort_unstable();
        Ctx { inst, g, on_c: inst.outer_cycle().into_iter().collect(), inner, pentagons }
    }

    pub fn deg(&self, v: VertexId) -> usize {
        self.g.degree(v)
    }

    pub fn in_c(&self, v: VertexId) -> bool {
        self.on_c.contains(&v)
    }

    pub fn is_x(&self, v: VertexId) -> bool {
        self.inst.x == Some(v)
    }

    /// Pentagon readings starting with the given prefix.
    pub fn readings(&self, prefix: &[VertexId]) -> impl Iterator<Item = &[VertexId; 5]> + '_ {
        let prefix = prefix.to_vec();
        self.pentagons.iter().filter(move |r| r[..prefix.len()] == prefix[..])
    }

    /// The unique neighbor of `v` outside `exclude`, if there is exactly one.
    pub fn other_neighbor(&self, v: VertexId, exclude: &[VertexId]) -> Option<VertexId> {
        let mut it = self.g.neighbors(v).iter().copied().filter(|w| !exclude.contains(w));
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }
}

/// All candidate tuples of `rule`, sorted.
pub(crate) fn candidates(ctx: &Ctx, rule: Rule) -> Vec<Vec<VertexId>> {
    if rule.needs_x() && ctx.inst.x.is_none() {
        return Vec::new();
    }
    let mut out = match rule {
        Rule::Deg2Remove => deg2_candidates(ctx),
        Rule::CutMerge => cut_candidates(ctx),
        Rule::NonfacialCycleSplit => {
            let faces: BTreeSet<BTreeSet<VertexId>> =
                ctx.inner.iter().filter(|f| f.is_cycle()).map(|f| f.vertex_set()).collect();
            short_cycles(ctx).into_iter().filter(|k| !faces.contains(&k.iter().copied().collect())).collect()
        }
        Rule::FourCycleIdentify => four_face_candidates(ctx),
        Rule::SixFaceChord => six_face_candidates(ctx),
        Rule::L233 => l233_candidates(ctx),
        Rule::L232325 => l232325_candidates(ctx),
        Rule::L232424 => l232424_candidates(ctx),
        Rule::LTie5 => tie5_candidates(ctx),
        Rule::L242324 => l242324_candidates(ctx),
        Rule::L232523 => l232523_candidates(ctx),
    };
    out.sort();
    out.dedup();
    out
}

/// Performs the rewrite for a tuple. `Ok(None)` means the tuple does not
/// describe a valid rewrite of this instance.
pub(crate) fn apply(inst: &Instance, rule: Rule, t: &[VertexId]) -> Result<Option<Rewrite>, RewriteError> {
    let ctx = Ctx::new(inst);
    let single = |r: Option<Applied>| r.map(Rewrite::Single);
    Ok(match rule {
        Rule::Deg2Remove => single(delete_and_merge(inst, &[t[0]], &[], &[])?),
        Rule::CutMerge => single(cut_merge(inst, t)?),
        Rule::NonfacialCycleSplit => {
            split_inside(&ctx, t).map(|inside| Rewrite::Split { cycle: t.to_vec(), inside })
        }
        Rule::FourCycleIdentify => single(delete_and_merge(inst, &[], &[(t[2], t[0])], &[])?),
        Rule::SixFaceChord => single(add_chord(inst, t)?),
        Rule::L233 => single(delete_and_merge(inst, &[t[1], t[2]], &[(t[3], t[0])], &[])?),
        Rule::L232325 => {
            let (u1, u3, v3) = (t[2], t[5], t[6]);
            let extra = match ctx.deg(u3) {
                4 => {
                    let (_, w) = fourth_neighbors(&ctx, u3, t[3], v3);
                    vec![keep_order(&ctx, u1, w)]
                }
                _ => Vec::new(),
            };
            single(delete_and_merge(inst, &[t[4], t[3]], &extra, &[])?)
        }
        Rule::L232424 => {
            let w = ctx.other_neighbor(t[3], &[t[2], t[4], t[5]]);
            match w {
                Some(w) => single(delete_and_merge(inst, &[t[4], t[3]], &[], &[(t[0], w)])?),
                None => None,
            }
        }
        Rule::LTie5 => single(tie5(&ctx, t)?),
        Rule::L242324 => single(delete_and_merge(inst, &[t[4], t[3]], &[(t[8], t[5])], &[])?),
        Rule::L232523 => {
            let merges = [keep_order(&ctx, t[2], t[11]), keep_order(&ctx, t[9], t[13])];
            single(delete_and_merge(inst, &[t[3], t[4], t[7], t[8]], &merges, &[])?)
        }
    })
}

/// `(removed, kept)` for identifying `a` and `b`: a vertex of `C` is kept,
/// otherwise `a`.
fn keep_order(ctx: &Ctx, a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if ctx.in_c(b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// First face (in trace order) containing both vertices.
fn common_face(g: &PlaneGraph, a: VertexId, b: VertexId) -> Option<FacialWalk> {
    g.trace_faces().into_iter().find(|f| f.contains(a) && f.contains(b))
}

/// Deletes vertices, then performs identifications `(removed, kept)` and
/// edge insertions, each through the first face containing both ends.
/// Returns `None` when a step is impossible or the result has a triangle.
fn delete_and_merge(
    inst: &Instance,
    delete: &[VertexId],
    merges: &[(VertexId, VertexId)],
    edges: &[(VertexId, VertexId)],
) -> Result<Option<Applied>, RewriteError> {
    let deleted: BTreeSet<VertexId> = delete.iter().copied().collect();
    let outer: BTreeSet<VertexId> = inst.outer_cycle().into_iter().collect();
    if deleted.iter().any(|v| outer.contains(v)) || merges.iter().any(|(r, _)| outer.contains(r)) {
        return Ok(None);
    }
    let mut g = inst.g.delete_vertices(&deleted)?;
    for &(r, k) in merges {
        if r == k || !g.contains_vertex(r) || !g.contains_vertex(k) || g.has_edge(r, k) {
            return Ok(None);
        }
        let Some(face) = common_face(&g, r, k) else { return Ok(None) };
        g = g.identify_vertices(k, r, &face)?;
    }
    for &(a, b) in edges {
        if a == b || g.has_edge(a, b) {
            return Ok(None);
        }
        let Some(face) = common_face(&g, a, b) else { return Ok(None) };
        g = g.add_edge_in_face(a, b, &face)?;
    }
    if !g.is_triangle_free() {
        return Ok(None);
    }
    let sub = Instance::unchecked(g, inst.x, inst.precoloring.clone());
    Ok(Some(Applied { sub, deleted, merged: merges.to_vec() }))
}

fn deg2_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    ctx.g
        .vertex_ids()
        .into_iter()
        .filter(|&v| !ctx.in_c(v) && ctx.deg(v) <= 2)
        .filter(|&v| ctx.deg(v) <= 1 || !ctx.g.neighbors(v).iter().any(|&u| ctx.is_x(u)))
        .map(|v| vec![v])
        .collect()
}

/// Tuples `[a, b, d0, d1]`: add `ab` inside the face of dart `(d0, d1)`.
/// For a graph with several components, `b` is the least vertex of a
/// component avoiding `C` and the tuple is `[a, b, d0, d1, e0, e1]` with a
/// face dart on each side.
fn cut_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let g = ctx.g;
    let comps = components(g);
    if comps.len() > 1 {
        let c0 = *ctx.on_c.iter().next().expect("outer cycle");
        let main: BTreeSet<VertexId> = bfs_distances(g, c0).into_keys().collect();
        let Some(other) = comps.iter().find(|c| !main.contains(&c[0])) else { return Vec::new() };
        let b = other[0];
        let Some(&nb) = g.neighbors(b).first() else { return Vec::new() };
        let a = *main.iter().next().expect("nonempty");
        let Some(fa) = ctx.inner.iter().find(|f| f.contains(a)) else { return Vec::new() };
        let da = fa.darts[0];
        return vec![vec![a, b, da.0, da.1, b, nb]];
    }
    let mut out = Vec::new();
    for f in &ctx.inner {
        if f.is_cycle() || f.is_empty() {
            continue;
        }
        let w = &f.vertices;
        let n = w.len();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] != w[j] {
                    continue;
                }
                let z = w[i];
                let side_a: BTreeSet<VertexId> = w[i + 1..j].iter().copied().filter(|&v| v != z).collect();
                let side_b: BTreeSet<VertexId> =
                    w[j + 1..].iter().chain(&w[..i]).copied().filter(|&v| v != z).collect();
                for &a in &side_a {
                    for &b in &side_b {
                        if a != b && !g.has_edge(a, b) && !has_common_neighbor(g, a, b) {
                            let d = f.darts[0];
                            out.push(vec![a.min(b), a.max(b), d.0, d.1]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn has_common_neighbor(g: &PlaneGraph, a: VertexId, b: VertexId) -> bool {
    g.neighbors(a).iter().any(|w| g.has_edge(*w, b))
}

fn cut_merge(inst: &Instance, t: &[VertexId]) -> Result<Option<Applied>, RewriteError> {
    let g = &inst.g;
    let (a, b) = (t[0], t[1]);
    if !g.contains_vertex(a) || !g.contains_vertex(b) || g.has_edge(a, b) || !g.has_edge(t[2], t[3]) {
        return Ok(None);
    }
    let fa = g.face_of_dart((t[2], t[3]));
    let h = if t.len() == 6 {
        if !g.has_edge(t[4], t[5]) {
            return Ok(None);
        }
        let fb = g.face_of_dart((t[4], t[5]));
        g.connect_components(a, &fa, b, &fb)?
    } else {
        if !fa.contains(a) || !fa.contains(b) || has_common_neighbor(g, a, b) {
            return Ok(None);
        }
        g.add_edge_in_face(a, b, &fa)?
    };
    if !h.is_triangle_free() {
        return Ok(None);
    }
    let sub = Instance::unchecked(h, inst.x, inst.precoloring.clone());
    Ok(Some(Applied { sub, deleted: BTreeSet::new(), merged: Vec::new() }))
}

/// Cycles of length 4 and 5 other than `C`, each listed once: least vertex
/// first, then its smaller cycle neighbor.
fn short_cycles(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let g = ctx.g;
    let mut out = Vec::new();
    for s in g.vertex_ids() {
        let mut path = vec![s];
        extend_cycles(g, s, &mut path, &mut out);
    }
    let c_set = &ctx.on_c;
    out.retain(|k| k.len() != c_set.len() || !k.iter().all(|v| c_set.contains(v)));
    out
}

fn extend_cycles(g: &PlaneGraph, s: VertexId, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == s && path.len() >= 4 && path[1] < path[path.len() - 1] {
            out.push(path.clone());
        }
        if w > s && !path.contains(&w) && path.len() < 5 {
            path.push(w);
            extend_cycles(g, s, path, out);
            path.pop();
        }
    }
}

/// Vertices strictly inside the cycle `k` (on the side away from `C`), or
/// `None` when that side is empty, so `k` bounds a face.
fn split_inside(ctx: &Ctx, k: &[VertexId]) -> Option<BTreeSet<VertexId>> {
    let g = ctx.g;
    let m = k.len();
    let on_k: BTreeSet<VertexId> = k.iter().copied().collect();
    if (0..m).any(|i| !g.has_edge(k[i], k[(i + 1) % m])) {
        return None;
    }
    // Neighbors met turning counterclockwise from the previous cycle vertex
    // to the next one all lie on the same side.
    let mut seeds = Vec::new();
    for i in 0..m {
        let (prev, v, next) = (k[(i + m - 1) % m], k[i], k[(i + 1) % m]);
        let mut w = g.succ(v, prev);
        while w != next {
            if !on_k.contains(&w) {
                seeds.push(w);
            }
            w = g.succ(v, w);
        }
    }
    let mut side: BTreeSet<VertexId> = BTreeSet::new();
    let mut stack = seeds;
    while let Some(v) = stack.pop() {
        if on_k.contains(&v) || !side.insert(v) {
            continue;
        }
        stack.extend(g.neighbors(v).iter().copied());
    }
    let rest: BTreeSet<VertexId> =
        g.vertex_ids().into_iter().filter(|v| !on_k.contains(v) && !side.contains(v)).collect();
    let c_out = ctx.on_c.iter().find(|v| !on_k.contains(v))?;
    let inside = if side.contains(c_out) { rest } else { side };
    (!inside.is_empty()).then_some(inside)
}

fn four_face_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for f in &ctx.inner {
        if f.len() != 4 || !f.is_cycle() {
            continue;
        }
        let w = &f.vertices;
        for s in 0..4 {
            for dir in [1, 3] {
                let t: Vec<VertexId> = (0..4).map(|i| w[(s + dir * i) % 4]).collect();
                if !ctx.in_c(t[2]) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn six_face_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for f in &ctx.inner {
        if f.len() < 6 || !f.is_cycle() {
            continue;
        }
        let w = &f.vertices;
        let n = w.len();
        let d = f.darts[0];
        for i in 0..n {
            for j in [(i + 3) % n, (i + n - 3) % n] {
                let (a, b) = (w[i], w[j]);
                if !ctx.in_c(a) && !ctx.g.has_edge(a, b) && !has_common_neighbor(ctx.g, a, b) {
                    out.push(vec![a, b, d.0, d.1]);
                }
            }
        }
    }
    out
}

fn add_chord(inst: &Instance, t: &[VertexId]) -> Result<Option<Applied>, RewriteError> {
    let g = &inst.g;
    if !g.has_edge(t[2], t[3]) {
        return Ok(None);
    }
    let face = g.face_of_dart((t[2], t[3]));
    if !face.contains(t[0]) || !face.contains(t[1]) || g.has_edge(t[0], t[1]) {
        return Ok(None);
    }
    let h = g.add_edge_in_face(t[0], t[1], &face)?;
    if !h.is_triangle_free() {
        return Ok(None);
    }
    let sub = Instance::unchecked(h, inst.x, inst.precoloring.clone());
    Ok(Some(Applied { sub, deleted: BTreeSet::new(), merged: Vec::new() }))
}

/// `x v1 u1 u2 v2` with `deg(v1) = 2`, `deg(u1) = 3`, `v1, u1, u2` off `C`.
fn l233_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let x = ctx.inst.x.expect("checked");
    ctx.readings(&[x])
        .filter(|r| ctx.deg(r[1]) == 2 && ctx.deg(r[2]) == 3)
        .filter(|r| !ctx.in_c(r[1]) && !ctx.in_c(r[2]) && !ctx.in_c(r[3]))
        .map(|r| r.to_vec())
        .collect()
}

/// The other pentagon through `x v u`: `(x, v, u, a, b)` with `a != not_a`.
fn next_pentagon(ctx: &Ctx, x: VertexId, v: VertexId, u: VertexId, not_a: VertexId) -> Option<[VertexId; 5]> {
    ctx.readings(&[x, v, u]).find(|r| r[3] != not_a).copied()
}

/// Neighbors of a degree-4 vertex `u3` with cycle neighbors `u2` and `v3`
/// consecutive in its rotation: returns `(u4, w)` where `u4` follows `v3`
/// away from `u2`.
pub(crate) fn fourth_neighbors(ctx: &Ctx, u3: VertexId, u2: VertexId, v3: VertexId) -> (VertexId, VertexId) {
    let rot = ctx.g.neighbors(u3);
    let d = rot.len();
    let i = rot.iter().position(|&w| w == v3).expect("neighbor");
    let u4 = if rot[(i + 1) % d] == u2 { rot[(i + d - 1) % d] } else { rot[(i + 1) % d] };
    let w = *rot.iter().find(|&&w| w != u2 && w != v3 && w != u4).expect("degree four");
    (u4, w)
}

/// `(x, v1, u1, u2, v2, u3, v3)` around two pentagons sharing `x v2 u2`.
fn double_pentagons(ctx: &Ctx) -> Vec<[VertexId; 7]> {
    let x = ctx.inst.x.expect("checked");
    let mut out = Vec::new();
    for r in ctx.readings(&[x]) {
        let [x, v1, u1, u2, v2] = *r;
        if ctx.deg(v2) != 2 {
            continue;
        }
        if let Some(s) = next_pentagon(ctx, x, v2, u2, u1) {
            out.push([x, v1, u1, u2, v2, s[3], s[4]]);
        }
    }
    out
}

fn l232325_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    double_pentagons(ctx)
        .into_iter()
        .filter(|t| {
            let [_, v1, u1, u2, _, u3, v3] = *t;
            [u1, u2, u3].iter().all(|&u| !ctx.in_c(u))
                && ctx.deg(u1) == 3
                && ctx.deg(u2) == 3
                && (ctx.deg(u3) == 3 || ctx.deg(u3) == 4)
                && ctx.deg(v1) == 2
                && ctx.deg(v3) == 2
        })
        .map(|t| t.to_vec())
        .collect()
}

fn l232424_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    double_pentagons(ctx)
        .into_iter()
        .filter(|t| {
            let [_, v1, u1, u2, _, u3, v3] = *t;
            [u1, u2, u3].iter().all(|&u| !ctx.in_c(u))
                && ctx.deg(v1) == 2
                && ctx.deg(v3) == 2
                && ctx.deg(u1) == 3
                && ctx.deg(u3) == 3
                && ctx.deg(u2) == 4
        })
        .map(|t| t.to_vec())
        .collect()
}

/// `(v1, ..., v5)` bounding a 5-face, `v1..v4` of degree 3 off `C`, with the
/// outside neighbors `u_i` distinct, `u_i, v5` not in `X`, and at most one of
/// them on `C`.
fn tie5_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for r in &ctx.pentagons {
        if r[..4].iter().any(|&v| ctx.deg(v) != 3 || ctx.in_c(v)) {
            continue;
        }
        let Some(us) = tie5_outside(ctx, r) else { continue };
        let mut touched: Vec<VertexId> = us.to_vec();
        touched.push(r[4]);
        if touched.iter().any(|&v| ctx.is_x(v)) || touched.iter().filter(|&&v| ctx.in_c(v)).count() > 1 {
            continue;
        }
        let distinct: BTreeSet<VertexId> = us.iter().copied().collect();
        if distinct.len() == 4 {
            out.push(r.to_vec());
        }
    }
    out
}

pub(crate) fn tie5_outside(ctx: &Ctx, r: &[VertexId]) -> Option<[VertexId; 4]> {
    let mut us = [0; 4];
    for i in 0..4 {
        us[i] = ctx.other_neighbor(r[i], r)?;
    }
    Some(us)
}

fn tie5(ctx: &Ctx, t: &[VertexId]) -> Result<Option<Applied>, RewriteError> {
    let Some([u1, u2, u3, u4]) = tie5_outside(ctx, t) else { return Ok(None) };
    let v5 = t[4];
    let delete = &t[..4];
    let variants: [(Vec<(VertexId, VertexId)>, Vec<(VertexId, VertexId)>); 3] = [
        (vec![keep_order(ctx, u2, u3)], vec![(u1, u4)]),
        (vec![keep_order(ctx, u1, u2), keep_order(ctx, v5, u3)], vec![]),
        (vec![keep_order(ctx, u4, u3), keep_order(ctx, v5, u2)], vec![]),
    ];
    for (merges, edges) in variants {
        if let Some(a) = delete_and_merge(ctx.inst, delete, &merges, &edges)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `(x, v1, u1, u2, v2, u3, v3, w3, w1)`: two pentagons at `x` and the
/// third face `u1 u2 u3 w3 w1` at `u2`.
fn l242324_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for t in double_pentagons(ctx) {
        let [x, v1, u1, u2, v2, u3, v3] = t;
        let ok = [u1, u2, u3].iter().all(|&u| !ctx.in_c(u))
            && ctx.deg(v1) == 2
            && ctx.deg(v3) == 2
            && ctx.deg(u1) == 4
            && ctx.deg(u3) == 4
            && ctx.deg(u2) == 3;
        if !ok {
            continue;
        }
        for g in ctx.readings(&[u1, u2, u3]) {
            let (w3, w1) = (g[3], g[4]);
            if ctx.deg(w1) == 3 && ctx.deg(w3) == 3 && !ctx.in_c(w1) && !ctx.in_c(w3) {
                out.push(vec![x, v1, u1, u2, v2, u3, v3, w3, w1]);
            }
        }
    }
    out
}

/// `(u2, w2, w4)` side of a `(u4, u3)`-dangerous face `u2 u3 u4 w4 w2`.
fn dangerous(ctx: &Ctx, u2: VertexId, w4: VertexId, w2: VertexId) -> bool {
    ctx.deg(u2) == 3 || (ctx.deg(u2) == 4 && ctx.deg(w4) == 3 && ctx.deg(w2) == 3)
}

/// `(x, v2, u2, u3, v3, u4, v4, u5, v5, u6, v6, w4, w2, w4', w6)`.
fn l232523_candidates(ctx: &Ctx) -> Vec<Vec<VertexId>> {
    let x = ctx.inst.x.expect("checked");
    let mut out = Vec::new();
    for r in ctx.readings(&[x]) {
        let [_, v3, u3, u4, v4] = *r;
        if ctx.deg(u3) != 3 || ctx.deg(u4) != 5 || ctx.deg(v3) != 2 || ctx.deg(v4) != 2 {
            continue;
        }
        let Some(a) = next_pentagon(ctx, x, v3, u3, u4) else { continue };
        let (u2, v2) = (a[3], a[4]);
        let Some(b) = next_pentagon(ctx, x, v4, u4, u3) else { continue };
        let (u5, v5) = (b[3], b[4]);
        if ctx.deg(u5) != 3 || ctx.deg(v5) != 2 {
            continue;
        }
        let Some(c) = next_pentagon(ctx, x, v5, u5, u4) else { continue };
        let (u6, v6) = (c[3], c[4]);
        if [u2, u3, u4, u5, u6].iter().any(|&u| ctx.in_c(u)) {
            continue;
        }
        for k1 in ctx.readings(&[u2, u3, u4]) {
            let (w4, w2) = (k1[3], k1[4]);
            if !dangerous(ctx, u2, w4, w2) {
                continue;
            }
            for k2 in ctx.readings(&[u6, u5, u4]) {
                let (w4p, w6) = (k2[3], k2[4]);
                if dangerous(ctx, u6, w4p, w6) {
                    out.push(vec![x, v2, u2, u3, v3, u4, v4, u5, v5, u6, v6, w4, w2, w4p, w6]);
                }
            }
        }
    }
    out
}
