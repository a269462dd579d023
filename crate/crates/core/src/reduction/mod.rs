//! Extension of precolorings of a short outer cycle by reduction.
//!
//! An [`Instance`] is a triangle-free plane graph whose outer face is bounded
//! by a cycle `C` of length 4 or 5, at most one enhanced vertex `x` on `C`,
//! and an X-enhanced coloring of `C`. [`extend`] colors the rest of the
//! graph: small instances are solved exactly; larger ones are rewritten by
//! the first rule (in [`Rule::PRIORITY`]) that matches, the smaller instance
//! is colored recursively, and the coloring is lifted back by the rule's
//! recipe. Every lift is verified. When a recipe does not apply, the lift
//! falls back to search over the rewritten vertices, then over the whole
//! instance.

mod lift;
pub mod normalize;
mod rules;
mod trace;

#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::plane_graph::{Graph, GraphError, GraphFile, PlaneGraph, RewriteError, VertexId};
use crate::set_coloring::{
    solve, verify, ColorSet, ColoringFormatError, ColoringSpec, SetColoring, SolveError, SolveOptions, SolveOutcome,
    Violation,
};

pub use normalize::{color_permutation_normalize, normalize_to, NormalizeError, Permutation};
pub use rules::Rule;
pub use trace::{BaseReason, LiftMethod, ReductionStep, TraceNode};

use lift::Lifted;
use rules::{Applied, Ctx, Rewrite};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("instance json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Coloring(#[from] ColoringFormatError),
    #[error("the outer face is not marked")]
    NoOuterFace,
    #[error("the outer face walk {0:?} is not a cycle of length 4 or 5")]
    BadOuterCycle(Vec<VertexId>),
    #[error("the graph contains a triangle")]
    NotTriangleFree,
    #[error("at most one enhanced vertex is supported, got {0:?}")]
    TooManyEnhanced(Vec<VertexId>),
    #[error("enhanced vertex {0} is not on the outer cycle")]
    EnhancedOffCycle(VertexId),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("the precoloring must cover exactly the outer cycle")]
    PrecoloringDomain,
    #[error("the precoloring is not X-enhanced: {0:?}")]
    Precoloring(Vec<Violation>),
}

/// `(G, X, phi)`: a plane graph with its outer cycle, the enhanced vertex
/// (also recorded as the graph's marked set) and a coloring of the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub g: PlaneGraph,
    pub x: Option<VertexId>,
    pub precoloring: SetColoring,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    graph: GraphFile,
    precoloring: SetColoring,
}

impl Instance {
    pub fn new(g: PlaneGraph, x: Option<VertexId>, precoloring: SetColoring) -> Result<Instance, InstanceError> {
        let inst = Instance::unchecked(g, x, precoloring);
        inst.validate()?;
        Ok(inst)
    }

    pub(crate) fn unchecked(mut g: PlaneGraph, x: Option<VertexId>, precoloring: SetColoring) -> Instance {
        g.set_marked(x);
        Instance { g, x, precoloring }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let walk = self.g.outer_walk().ok_or(InstanceError::NoOuterFace)?;
        let distinct: BTreeSet<VertexId> = walk.iter().copied().collect();
        if !(4..=5).contains(&walk.len()) || distinct.len() != walk.len() {
            return Err(InstanceError::BadOuterCycle(walk));
        }
        if !self.g.is_triangle_free() {
            return Err(InstanceError::NotTriangleFree);
        }
        if let Some(x) = self.x {
            if !self.g.contains_vertex(x) {
                return Err(InstanceError::NoSuchVertex(x));
            }
            if !distinct.contains(&x) {
                return Err(InstanceError::EnhancedOffCycle(x));
            }
        }
        let colored: BTreeSet<VertexId> = self.precoloring.sets.keys().copied().collect();
        if colored != distinct || self.precoloring.palette != 6 {
            return Err(InstanceError::PrecoloringDomain);
        }
        let cycle = self.g.induced(&distinct);
        verify(&cycle, &self.precoloring, &ColoringSpec::enhanced(self.x)).map_err(InstanceError::Precoloring)
    }

    /// Vertices of the outer cycle, read from the marked dart.
    pub fn outer_cycle(&self) -> Vec<VertexId> {
        self.g.outer_walk().unwrap_or_default()
    }

    /// Constraints a coloring of the whole instance must meet.
    pub fn spec(&self) -> ColoringSpec {
        let mut spec = ColoringSpec::enhanced(self.x);
        for (v, s) in &self.precoloring.sets {
            spec = spec.with_fixed(*v, s.clone());
        }
        spec
    }

    pub fn verify(&self, c: &SetColoring) -> Result<(), Vec<Violation>> {
        verify(&self.g, c, &self.spec())
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(InstanceFile { graph: GraphFile::from_graph(&self.g), precoloring: self.precoloring.clone() })
            .expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Reads `{"graph": ..., "precoloring": ...}`; the graph's `x` field
    /// names the enhanced vertex.
    pub fn from_json(text: &str) -> Result<Instance, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let g = file.graph.to_graph()?;
        let marked: Vec<VertexId> = g.marked().iter().copied().collect();
        if marked.len() > 1 {
            return Err(InstanceError::TooManyEnhanced(marked));
        }
        Instance::new(g, marked.first().copied(), file.precoloring)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineOptions {
    /// Instances with at most this many vertices are solved directly.
    pub base_threshold: usize,
    pub threads: usize,
    /// Node budget handed to every solver call.
    pub budget: Option<u64>,
}

impl Default for EngineOptions {
    fn default() -> EngineOptions {
        EngineOptions { base_threshold: 12, threads: 1, budget: None }
    }
}

impl EngineOptions {
    fn solve_options(&self) -> SolveOptions {
        SolveOptions { budget: self.budget, threads: self.threads }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("the solver budget ran out")]
    Budget,
    #[error("no extension exists for a reduced instance; steps leading there: {}", path_tags(.path))]
    Defect { path: Vec<ReductionStep>, instance: Box<Instance> },
    #[error("replay diverged: {0}")]
    Replay(String),
    #[error("the final coloring fails verification: {0:?}")]
    Unverified(Vec<Violation>),
}

fn path_tags(path: &[ReductionStep]) -> String {
    let tags: Vec<String> = path.iter().map(|s| format!("{}{:?}", s.rule, s.matched)).collect();
    if tags.is_empty() {
        "none".into()
    } else {
        tags.join(" -> ")
    }
}

/// A coloring of an instance and the trace that produced it.
#[derive(Debug, Clone)]
pub struct Extension {
    pub coloring: SetColoring,
    pub trace: TraceNode,
}

/// Extends the precoloring of `inst` to the whole graph.
pub fn extend(inst: &Instance) -> Result<SetColoring, EngineError> {
    Ok(extend_traced(inst, &EngineOptions::default())?.coloring)
}

pub fn extend_traced(inst: &Instance, opts: &EngineOptions) -> Result<Extension, EngineError> {
    inst.validate()?;
    let engine = Engine { opts, replaying: false };
    let (coloring, trace) = engine.run(inst, &mut Vec::new())?;
    inst.verify(&coloring).map_err(EngineError::Unverified)?;
    Ok(Extension { coloring, trace })
}

/// Re-runs a recorded trace on `inst`: every rewrite named in the trace is
/// applied to the same vertex tuple, the recorded base colorings are checked
/// and the lifts are recomputed and verified.
pub fn replay(inst: &Instance, trace: &TraceNode, opts: &EngineOptions) -> Result<SetColoring, EngineError> {
    inst.validate()?;
    let engine = Engine { opts, replaying: true };
    let coloring = engine.replay_node(inst, trace, &mut Vec::new())?;
    inst.verify(&coloring).map_err(EngineError::Unverified)?;
    Ok(coloring)
}

/// Enhanced coloring of a triangle-free plane graph with `X = {x}`: palette
/// 6, three colors on `x`, at least two elsewhere.
pub fn enhance(g: &PlaneGraph, x: VertexId) -> Result<SetColoring, EngineError> {
    Ok(enhance_traced(g, x, &EngineOptions::default())?.coloring)
}

pub fn enhance_traced(g: &PlaneGraph, x: VertexId, opts: &EngineOptions) -> Result<Extension, EngineError> {
    let inst = enhancement_instance(g, x)?;
    let ext = extend_traced(&inst, opts)?;
    let keep: BTreeSet<VertexId> = g.vertex_ids().into_iter().collect();
    let coloring = ext.coloring.restricted(&keep);
    verify(g, &coloring, &ColoringSpec::enhanced([x])).map_err(EngineError::Unverified)?;
    Ok(Extension { coloring, trace: ext.trace })
}

/// Every reducible configuration present in `inst`, as `(rule, matched)`
/// pairs in rule priority order.
pub fn configurations(inst: &Instance) -> Vec<(Rule, Vec<VertexId>)> {
    let ctx = Ctx::new(inst);
    Rule::PRIORITY
        .into_iter()
        .flat_map(|rule| rules::candidates(&ctx, rule).into_iter().map(move |t| (rule, t)))
        .collect()
}

/// The instance `enhance` solves: a new 4-cycle `x c1 c2 c3` is attached at
/// `x` and becomes the outer face, precolored `{1,2,3}, {4,5}, {1,2}, {4,5}`.
pub fn enhancement_instance(g: &PlaneGraph, x: VertexId) -> Result<Instance, InstanceError> {
    if !g.contains_vertex(x) {
        return Err(InstanceError::NoSuchVertex(x));
    }
    if !g.is_triangle_free() {
        return Err(InstanceError::NotTriangleFree);
    }
    let face = g.trace_faces().into_iter().find(|f| f.contains(x) && !f.is_empty());
    let (h, cs) = g.attach_outer_cycle(x, face.as_ref(), 4).expect("x exists and the face is current");
    let mut pre = SetColoring::new(6);
    pre.set(x, [1, 2, 3]);
    pre.set(cs[0], [4, 5]);
    pre.set(cs[1], [1, 2]);
    pre.set(cs[2], [4, 5]);
    Instance::new(h, Some(x), pre)
}

struct Engine<'a> {
    opts: &'a EngineOptions,
    /// Set while replaying; matching is then skipped.
    replaying: bool,
}

impl Engine<'_> {
    fn solve_whole(&self, inst: &Instance, path: &[ReductionStep]) -> Result<SetColoring, EngineError> {
        match solve(&inst.g, &inst.spec(), &self.opts.solve_options())? {
            SolveOutcome::Sat(c) => Ok(c),
            SolveOutcome::Budget => Err(EngineError::Budget),
            SolveOutcome::Unsat => Err(EngineError::Defect { path: path.to_vec(), instance: Box::new(inst.clone()) }),
        }
    }

    fn run(&self, inst: &Instance, path: &mut Vec<ReductionStep>) -> Result<(SetColoring, TraceNode), EngineError> {
        let n = inst.g.num_vertices();
        if n <= self.opts.base_threshold {
            let c = self.solve_whole(inst, path)?;
            return Ok((c.clone(), TraceNode::Base { vertices: n, reason: BaseReason::Threshold, coloring: c }));
        }
        let ctx = Ctx::new(inst);
        for rule in Rule::PRIORITY {
            for t in rules::candidates(&ctx, rule) {
                let rewrite = match rules::apply(inst, rule, &t) {
                    Ok(Some(r)) => r,
                    Ok(None) => continue,
                    Err(e) => {
                        log::debug!("{rule}{t:?}: rewrite failed: {e}");
                        continue;
                    }
                };
                log::debug!("{n} vertices: {rule}{t:?}");
                return self.step(inst, &ctx, rule, t, rewrite, path, None);
            }
        }
        if inst.x.is_none() {
            if let Some((v, color, promoted)) = promote(inst) {
                let (c, child) = self.run(&promoted, path)?;
                let c = demote(inst, c);
                return Ok((c, TraceNode::Promote { vertex: v, color, child: Box::new(child) }));
            }
        }
        let c = self.solve_whole(inst, path)?;
        Ok((c.clone(), TraceNode::Base { vertices: n, reason: BaseReason::NoRule, coloring: c }))
    }

    /// Recurses into the rewrite and lifts the result. During replay,
    /// `children` holds the recorded subtraces and `lift` the recorded lift.
    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        inst: &Instance,
        ctx: &Ctx,
        rule: Rule,
        t: Vec<VertexId>,
        rewrite: Rewrite,
        path: &mut Vec<ReductionStep>,
        recorded: Option<(&[TraceNode], &ReductionStep)>,
    ) -> Result<(SetColoring, TraceNode), EngineError> {
        let (vertices, edges) = (inst.g.num_vertices(), inst.g.num_edges());
        let mut step = ReductionStep { rule, matched: t.clone(), lift: LiftMethod::Union, recipe: None, permutation: None };
        path.push(step.clone());
        let sub = |me: &Self, i: usize, child_inst: &Instance, path: &mut Vec<ReductionStep>| match recorded {
            Some((children, _)) => {
                let node = children.get(i).ok_or_else(|| EngineError::Replay(format!("{rule} lacks child {i}")))?;
                Ok((me.replay_node(child_inst, node, path)?, node.clone()))
            }
            None => me.run(child_inst, path),
        };
        let result = match rewrite {
            Rewrite::Split { cycle, inside } => {
                let g1 = inst.g.delete_vertices(&inside).map_err(rewrite_defect)?;
                let i1 = Instance::unchecked(g1, inst.x, inst.precoloring.clone());
                let (c1, n1) = sub(self, 0, &i1, path)?;
                let i2 = inner_instance(inst, &cycle, &inside, &c1)?;
                let (c2, n2) = sub(self, 1, &i2, path)?;
                let mut c = c1;
                for v in &inside {
                    c.set(*v, c2.get(*v).cloned().unwrap_or_default());
                }
                inst.verify(&c).map_err(EngineError::Unverified)?;
                (c, vec![n1, n2])
            }
            Rewrite::Single(applied) => {
                let (child_c, node) = sub(self, 0, &applied.sub, path)?;
                let base = pullback(inst, &applied, &child_c);
                let forced = recorded.map(|(_, s)| s.lift);
                let (c, method, lifted) = self.lift(inst, ctx, rule, &t, &applied, &base, forced, path)?;
                step.lift = method;
                if let Some(l) = lifted {
                    step.recipe = Some(l.recipe);
                    step.permutation = l.permutation;
                }
                (c, vec![node])
            }
        };
        path.pop();
        let (c, children) = result;
        Ok((c, TraceNode::Step { vertices, edges, step, children }))
    }

    /// Recipe, then search over the rewritten region, then a wider region,
    /// then the whole instance.
    #[allow(clippy::too_many_arguments)]
    fn lift(
        &self,
        inst: &Instance,
        ctx: &Ctx,
        rule: Rule,
        t: &[VertexId],
        applied: &Applied,
        base: &SetColoring,
        forced: Option<LiftMethod>,
        path: &[ReductionStep],
    ) -> Result<(SetColoring, LiftMethod, Option<Lifted>), EngineError> {
        let wants = |m: LiftMethod| forced.is_none_or(|f| f == m);
        if wants(LiftMethod::Recipe) {
            if let Some(l) = lift::recipe(ctx, rule, t, base) {
                if inst.verify(&l.coloring).is_ok() {
                    return Ok((l.coloring.clone(), LiftMethod::Recipe, Some(l)));
                }
                log::debug!("{rule}{t:?}: recipe {} does not verify", l.recipe);
            }
        }
        let on_c: BTreeSet<VertexId> = inst.outer_cycle().into_iter().collect();
        let mut region: BTreeSet<VertexId> = applied.deleted.clone();
        region.extend(applied.merged.iter().map(|(r, _)| *r));
        if wants(LiftMethod::Local) {
            if let Some(c) = self.local(inst, base, &region)? {
                return Ok((c, LiftMethod::Local, None));
            }
        }
        region.extend(t.iter().copied().filter(|v| !on_c.contains(v) && inst.g.contains_vertex(*v)));
        if wants(LiftMethod::LocalWide) {
            if let Some(c) = self.local(inst, base, &region)? {
                return Ok((c, LiftMethod::LocalWide, None));
            }
        }
        if wants(LiftMethod::Solver) {
            log::info!("{rule}{t:?}: falling back to the solver on {} vertices", inst.g.num_vertices());
            return Ok((self.solve_whole(inst, path)?, LiftMethod::Solver, None));
        }
        Err(EngineError::Replay(format!("{rule}{t:?}: recorded lift {forced:?} failed")))
    }

    /// Recolors `region` keeping everything else from `base`.
    fn local(&self, inst: &Instance, base: &SetColoring, region: &BTreeSet<VertexId>) -> Result<Option<SetColoring>, EngineError> {
        let sub = inst.g.induced(region);
        let mut spec = ColoringSpec::enhanced(inst.x.filter(|x| region.contains(x)));
        for &v in region {
            let used = inst
                .g
                .neighbors(v)
                .iter()
                .filter(|u| !region.contains(u))
                .filter_map(|u| base.get(*u))
                .fold(ColorSet::new(), |a, s| a.union(s));
            spec = spec.with_list(v, ColorSet::full(6).difference(&used));
        }
        let out = match solve(&sub, &spec, &self.opts.solve_options())? {
            SolveOutcome::Sat(c) => c,
            _ => return Ok(None),
        };
        let mut c = base.clone();
        for (v, s) in out.sets {
            c.set(v, s);
        }
        c.sets.retain(|v, _| inst.g.contains_vertex(*v));
        Ok(inst.verify(&c).is_ok().then_some(c))
    }

    fn replay_node(&self, inst: &Instance, node: &TraceNode, path: &mut Vec<ReductionStep>) -> Result<SetColoring, EngineError> {
        debug_assert!(self.replaying);
        match node {
            TraceNode::Base { vertices, coloring, .. } => {
                if *vertices != inst.g.num_vertices() {
                    return Err(EngineError::Replay(format!("base case has {} vertices, trace says {vertices}", inst.g.num_vertices())));
                }
                inst.verify(coloring).map_err(EngineError::Unverified)?;
                Ok(coloring.clone())
            }
            TraceNode::Promote { vertex, color, child } => {
                let promoted = promote_at(inst, *vertex, *color)
                    .ok_or_else(|| EngineError::Replay(format!("cannot promote {vertex} with color {color}")))?;
                let c = self.replay_node(&promoted, child, path)?;
                Ok(demote(inst, c))
            }
            TraceNode::Step { vertices, edges, step, children } => {
                let ctx = Ctx::new(inst);
                if (*vertices, *edges) != (inst.g.num_vertices(), inst.g.num_edges())
                    || !rules::candidates(&ctx, step.rule).contains(&step.matched)
                {
                    return Err(EngineError::Replay(format!("{}{:?} does not match", step.rule, step.matched)));
                }
                let rewrite = rules::apply(inst, step.rule, &step.matched)
                    .ok()
                    .flatten()
                    .ok_or_else(|| EngineError::Replay(format!("{}{:?} does not apply", step.rule, step.matched)))?;
                let (c, _) =
                    self.step(inst, &ctx, step.rule, step.matched.clone(), rewrite, path, Some((children, step)))?;
                Ok(c)
            }
        }
    }
}

fn rewrite_defect(e: RewriteError) -> EngineError {
    EngineError::Replay(format!("rewrite failed: {e}"))
}

/// Colors of the reduced instance carried back: merged vertices take the
/// color of the vertex they were merged into.
fn pullback(inst: &Instance, applied: &Applied, child: &SetColoring) -> SetColoring {
    let into: BTreeMap<VertexId, VertexId> = applied.merged.iter().copied().collect();
    let mut c = SetColoring::new(6);
    for v in inst.g.vertex_ids() {
        let mut k = v;
        while let Some(&next) = into.get(&k) {
            k = next;
        }
        if let Some(s) = child.get(k) {
            if !applied.deleted.contains(&v) {
                c.set(v, s.clone());
            }
        }
    }
    c
}

/// The inside of a separating cycle `K` as an instance of its own, with `K`
/// as the outer cycle precolored by `outer_coloring`.
fn inner_instance(
    inst: &Instance,
    cycle: &[VertexId],
    inside: &BTreeSet<VertexId>,
    outer_coloring: &SetColoring,
) -> Result<Instance, EngineError> {
    let on_k: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let keep: BTreeSet<VertexId> = inside.union(&on_k).copied().collect();
    let mut g2 = inst.g.induced(&keep);
    let dart = [(cycle[0], cycle[1]), (cycle[1], cycle[0])]
        .into_iter()
        .find(|&d| g2.face_of_dart(d).vertex_set() == on_k)
        .ok_or_else(|| EngineError::Replay(format!("no face of the inside is bounded by {cycle:?}")))?;
    g2.set_outer_dart(Some(dart)).map_err(InstanceError::from)?;
    let x2 = inst.x.filter(|x| on_k.contains(x));
    Ok(Instance::unchecked(g2, x2, outer_coloring.restricted(&on_k)))
}

/// With `X` empty and no rule left: a vertex `v` of `C` whose path `u v w` on `C` uses at most
/// five colors gets the least unused color and becomes enhanced.
fn promote(inst: &Instance) -> Option<(VertexId, u32, Instance)> {
    let c = inst.outer_cycle();
    let m = c.len();
    let mut best: Option<(VertexId, u32)> = None;
    for i in 0..m {
        let (u, v, w) = (c[(i + m - 1) % m], c[i], c[(i + 1) % m]);
        let used = [u, v, w].iter().filter_map(|z| inst.precoloring.get(*z)).fold(ColorSet::new(), |a, s| a.union(s));
        if used.len() <= 5 {
            let color = ColorSet::full(6).difference(&used).iter().next()?;
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, color));
            }
        }
    }
    let (v, color) = best?;
    Some((v, color, promote_at(inst, v, color)?))
}

fn promote_at(inst: &Instance, v: VertexId, color: u32) -> Option<Instance> {
    let mut pre = inst.precoloring.clone();
    let mut s = pre.get(v)?.clone();
    if s.contains(color) || s.len() != 2 {
        return None;
    }
    s.insert(color);
    pre.set(v, s);
    let promoted = Instance::unchecked(inst.g.clone(), Some(v), pre);
    promoted.validate().ok()?;
    Some(promoted)
}

/// Restores the original precoloring after a promotion.
fn demote(inst: &Instance, mut c: SetColoring) -> SetColoring {
    for (v, s) in &inst.precoloring.sets {
        c.set(*v, s.clone());
    }
    c
}
