//! Distance classes, per-class enhanced colorings and their union on
//! shifted palettes.
//!
//! A partition of `V(G)` into `M` classes whose members are pairwise at
//! distance at least `s` gives one enhanced coloring per class. Shifting the
//! `i`-th one onto colors `6i-5..6i` and taking unions yields a
//! `(6M : 2M+1)`-coloring, since every vertex gets 3 colors from its own
//! class and at least 2 from each of the others.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::plane_graph::{bfs_distances, Graph, PlaneGraph, RewriteError, VertexId};
use crate::reduction::{enhance_traced, EngineError, EngineOptions};
use crate::set_coloring::{compose_shifted, solve, verify, ColorSet, ColoringSpec, ComposeError, SetColoring};
use crate::set_coloring::{SolveError, SolveOptions, SolveOutcome, Violation};
use crate::Rational;


#[derive(Debug, Error)]
pub enum CompositionError {
    #[error("the class distance must be at least 1")]
    ZeroDistance,
    #[error("vertices {u} and {v} share a class but are at distance {distance}")]
    TooClose { u: VertexId, v: VertexId, distance: usize },
    #[error("the classes do not partition the vertex set")]
    NotAPartition,
    #[error("no enhanced coloring found for class {0:?}")]
    NoEnhancement(Vec<VertexId>),
    #[error("the solver budget ran out on class {0:?}")]
    Budget(Vec<VertexId>),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("coloring fails verification: {0:?}")]
    Unverified(Vec<Violation>),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// A partition of the vertices into classes at pairwise distance `>= s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceClasses {
    pub s: usize,
    pub classes: Vec<Vec<VertexId>>,
}

impl DistanceClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Checks the partition and the distance bound by breadth-first search
    /// from every vertex.
    pub fn certify<G: Graph>(&self, g: &G) -> Result<(), CompositionError> {
        let mut class_of = BTreeMap::new();
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                if class_of.insert(v, i).is_some() {
                    return Err(CompositionError::NotAPartition);
                }
            }
        }
        if !class_of.keys().copied().eq(g.vertex_ids()) {
            return Err(CompositionError::NotAPartition);
        }
        for class in &self.classes {
            for &u in class {
                let dist = bfs_distances(g, u);
                for &v in class {
                    if let Some(&d) = dist.get(&v).filter(|_| v != u) {
                        if d < self.s {
                            return Err(CompositionError::TooClose { u, v, distance: d });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Greedy coloring of the graph joining vertices at distance `1..s`, in
/// reverse degeneracy order. Classes are listed by color and sorted within.
pub fn power_color<G: Graph>(g: &G, s: usize) -> Result<DistanceClasses, CompositionError> {
    if s == 0 {
        return Err(CompositionError::ZeroDistance);
    }
    let ids = g.vertex_ids();
    let power: BTreeMap<VertexId, BTreeSet<VertexId>> = ids
        .iter()
        .map(|&u| {
            let near = bfs_distances(g, u).into_iter().filter(|&(v, d)| v != u && d < s).map(|(v, _)| v).collect();
            (u, near)
        })
        .collect();

    // Smallest-last order: repeatedly remove a vertex of least remaining degree.
    let mut remaining: BTreeMap<VertexId, usize> = power.iter().map(|(&v, n)| (v, n.len())).collect();
    let mut order = Vec::with_capacity(ids.len());
    while let Some((&v, _)) = remaining.iter().min_by_key(|&(&v, &d)| (d, v)) {
        remaining.remove(&v);
        for w in &power[&v] {
            if let Some(d) = remaining.get_mut(w) {
                *d -= 1;
            }
        }
        order.push(v);
    }

    let mut color: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &v in order.iter().rev() {
        let used: BTreeSet<usize> = power[&v].iter().filter_map(|w| color.get(w).copied()).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        color.insert(v, c);
    }
    let m = color.values().map(|&c| c + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); m];
    for (v, c) in color {
        classes[c].push(v);
    }
    Ok(DistanceClasses { s, classes })
}

/// How a class coloring was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassMethod {
    /// A one-vertex class, handled by the reduction engine.
    Single,
    /// Split every member of degree at least 2, precolor the resulting
    /// cycles from single-vertex enhancements and extend.
    Splitting,
    /// As `Splitting`, but each original neighbor of a member `x` only has to
    /// avoid the three colors of `x` instead of being precolored.
    SplittingLists,
    /// Direct search for the enhanced coloring.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassColoring {
    pub class: Vec<VertexId>,
    pub method: ClassMethod,
    /// Palette 6, exactly 3 colors on the class, exactly 2 elsewhere.
    pub coloring: SetColoring,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeOptions {
    pub threads: usize,
    /// Node budget for every solver call.
    pub budget: Option<u64>,
}

impl Default for ComposeOptions {
    fn default() -> ComposeOptions {
        ComposeOptions { threads: 1, budget: None }
    }
}

impl ComposeOptions {
    fn engine(&self) -> EngineOptions {
        EngineOptions { threads: 1, budget: self.budget, ..EngineOptions::default() }
    }

    fn solver(&self) -> SolveOptions {
        SolveOptions { budget: self.budget, threads: 1 }
    }
}

/// The least `k` colors of `s`.
fn least(s: &ColorSet, k: usize) -> ColorSet {
    let mut out = ColorSet::new();
    for c in s.iter().take(k) {
        out.insert(c);
    }
    out
}

/// Every set cut down to exactly 3 colors on `class` and 2 elsewhere.
fn trimmed(c: &SetColoring, class: &BTreeSet<VertexId>) -> SetColoring {
    let mut out = SetColoring::new(c.palette);
    for (&v, s) in &c.sets {
        out.sets.insert(v, least(s, if class.contains(&v) { 3 } else { 2 }));
    }
    out
}

/// An enhanced coloring of the triangle-free plane graph `g` with `X = class`.
pub fn enhance_class(g: &PlaneGraph, class: &[VertexId], opts: &ComposeOptions) -> Result<ClassColoring, CompositionError> {
    let members: BTreeSet<VertexId> = class.iter().copied().collect();
    let spec = ColoringSpec::enhanced(members.iter().copied());
    let (method, coloring) = if let [x] = class {
        let psi = enhance_traced(g, *x, &opts.engine())?.coloring;
        (ClassMethod::Single, psi)
    } else {
        let spread = pairwise_distance_at_least(g, &members, 3);
        let split = if spread { by_splitting(g, &members, opts, true)? } else { None };
        let lists = match split {
            None if spread => by_splitting(g, &members, opts, false)?,
            _ => None,
        };
        match (split, lists) {
            (Some(c), _) => (ClassMethod::Splitting, c),
            (None, Some(c)) => (ClassMethod::SplittingLists, c),
            (None, None) => {
                log::debug!("splitting failed for class {class:?}; solving directly");
                match solve(g, &spec, &opts.solver())? {
                    SolveOutcome::Sat(c) => (ClassMethod::Direct, c),
                    SolveOutcome::Unsat => return Err(CompositionError::NoEnhancement(class.to_vec())),
                    SolveOutcome::Budget => return Err(CompositionError::Budget(class.to_vec())),
                }
            }
        }
    };
    let coloring = trimmed(&coloring, &members);
    verify(g, &coloring, &spec).map_err(CompositionError::Unverified)?;
    Ok(ClassColoring { class: class.to_vec(), method, coloring })
}

fn pairwise_distance_at_least(g: &PlaneGraph, members: &BTreeSet<VertexId>, s: usize) -> bool {
    members.iter().all(|&u| {
        let dist = bfs_distances(g, u);
        members.iter().all(|v| *v == u || dist.get(v).is_none_or(|&d| d >= s))
    })
}

/// Splits every member of degree at least 2 and extends a partial coloring
/// of the original neighbors to a `(6:2)`-coloring of the split graph. With
/// `precolor` each neighbor `y` of `x` is fixed to two colors of the
/// single-vertex enhancement of `x`; otherwise `y` only avoids its three
/// colors at `x`. `None` when the extension does not exist. Members must be
/// pairwise at distance at least 3.
fn by_splitting(
    g: &PlaneGraph,
    members: &BTreeSet<VertexId>,
    opts: &ComposeOptions,
    precolor: bool,
) -> Result<Option<SetColoring>, CompositionError> {
    let split: Vec<VertexId> = members.iter().copied().filter(|&x| g.degree(x) >= 2).collect();
    let psis: Vec<SetColoring> =
        split.iter().map(|&x| enhance_traced(g, x, &opts.engine()).map(|e| e.coloring)).collect::<Result<_, _>>()?;

    // The split graph is only colored, so its outer face is irrelevant.
    let mut h = g.clone();
    h.set_outer_dart(None).expect("clearing the outer face");
    let mut spec = ColoringSpec::uniform(6, 2);
    for (&x, psi) in split.iter().zip(&psis) {
        let (next, _cycle) = h.split_vertex(x)?;
        h = next;
        for &y in g.neighbors(x) {
            if precolor {
                spec.fixed.insert(y, least(&psi.sets[&y], 2));
            } else {
                spec.lists.insert(y, ColorSet::full(6).difference(&psi.sets[&x]));
            }
        }
    }
    let base = match solve(&h, &spec, &opts.solver())? {
        SolveOutcome::Sat(c) => c,
        SolveOutcome::Unsat | SolveOutcome::Budget => return Ok(None),
    };

    let keep: BTreeSet<VertexId> = g.vertex_ids().into_iter().collect();
    let mut out = trimmed(&base.restricted(&keep), &BTreeSet::new());
    for (&x, psi) in split.iter().zip(&psis) {
        out.sets.insert(x, least(&psi.sets[&x], 3));
    }
    for &x in members.iter().filter(|&&x| g.degree(x) < 2) {
        let taken = g.neighbors(x).iter().fold(ColorSet::new(), |acc, y| acc.union(&out.sets[y]));
        out.sets.insert(x, least(&ColorSet::full(6).difference(&taken), 3));
    }
    Ok(Some(out))
}

/// The union of the class colorings on shifted palettes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub coloring: SetColoring,
    /// Number of classes.
    pub m: usize,
    /// `6M`.
    pub palette: u32,
    /// `2M + 1`, the guaranteed set size.
    pub b: u32,
    pub min_cardinality: usize,
}

impl Assembly {
    /// `6M / (2M + 1)`, an upper bound on the fractional chromatic number.
    pub fn ratio(&self) -> Rational {
        Rational::new(self.palette.into(), self.b.into())
    }
}

/// Shifts the `i`-th class coloring onto colors `6i-5..6i`, takes unions and
/// verifies the `(6M : 2M+1)` bound.
pub fn assemble<G: Graph>(g: &G, classes: &[ClassColoring]) -> Result<Assembly, CompositionError> {
    let covered: BTreeSet<VertexId> = classes.iter().flat_map(|c| c.class.iter().copied()).collect();
    let total: usize = classes.iter().map(|c| c.class.len()).sum();
    if total != covered.len() || !covered.iter().copied().eq(g.vertex_ids()) {
        return Err(CompositionError::NotAPartition);
    }
    for c in classes {
        verify(g, &c.coloring, &ColoringSpec::enhanced(c.class.iter().copied())).map_err(CompositionError::Unverified)?;
    }
    let parts: Vec<SetColoring> = classes.iter().map(|c| SetColoring { palette: 6, ..c.coloring.clone() }).collect();
    let coloring = compose_shifted(&parts)?;
    let m = classes.len();
    let (palette, b) = (6 * m as u32, 2 * m as u32 + 1);
    verify(g, &coloring, &ColoringSpec::uniform(palette, b)).map_err(CompositionError::Unverified)?;
    let min_cardinality = coloring.min_cardinality();
    Ok(Assembly { coloring, m, palette, b, min_cardinality })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub vertices: Vec<VertexId>,
    pub method: ClassMethod,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub s: usize,
    pub m: usize,
    pub palette: u32,
    pub b: u32,
    /// `6M/(2M+1)` in lowest terms.
    pub ratio: String,
    pub ratio_f64: f64,
    pub min_cardinality: usize,
    pub classes: Vec<ClassReport>,
}

#[derive(Debug, Clone)]
pub struct Composition {
    pub classes: DistanceClasses,
    pub class_colorings: Vec<ClassColoring>,
    pub assembly: Assembly,
}

impl Composition {
    pub fn report(&self) -> CompositionReport {
        let ratio = self.assembly.ratio();
        CompositionReport {
            s: self.classes.s,
            m: self.assembly.m,
            palette: self.assembly.palette,
            b: self.assembly.b,
            ratio: ratio.to_string(),
            ratio_f64: self.assembly.palette as f64 / self.assembly.b as f64,
            min_cardinality: self.assembly.min_cardinality,
            classes: self
                .class_colorings
                .iter()
                .map(|c| ClassReport { vertices: c.class.clone(), method: c.method })
                .collect(),
        }
    }
}

/// Distance classes for `s`, one enhanced coloring per class (in parallel
/// over `opts.threads` workers) and their assembly. The result does not
/// depend on the thread count.
pub fn compose(g: &PlaneGraph, s: usize, opts: &ComposeOptions) -> Result<Composition, CompositionError> {
    let classes = power_color(g, s)?;
    classes.certify(g)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| CompositionError::ThreadPool(e.to_string()))?;
    let class_colorings: Vec<ClassColoring> =
        pool.install(|| classes.classes.par_iter().map(|c| enhance_class(g, c, opts)).collect::<Result<_, _>>())?;
    let assembly = assemble(g, &class_colorings)?;
    Ok(Composition { classes, class_colorings, assembly })
}
