//! Exact backtracking search for set colorings.
//!
//! Each vertex gets exactly its required number of colors (its exact size,
//! or else its minimum; supersets never help). Candidate sets are the
//! subsets of the vertex's list in lexicographic order. Vertices are picked
//! by saturation (colors already used by neighbors), then degree, then id,
//! and assigning a set removes the overlapping candidates of its neighbors.
//!
//! The first branching level may run in parallel. Every branch has its own
//! node budget and the answer is taken from the first satisfiable branch in
//! order, so the result does not depend on the thread count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use super::{subsets_of_size, ColorSet, ColoringSpec, SetColoring};
use crate::plane_graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Search nodes allowed per first-level branch; unlimited when `None`.
    pub budget: Option<u64>,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions { budget: None, threads: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(SetColoring),
    /// The search finished without finding a coloring.
    Unsat,
    /// The node budget ran out before the search finished.
    Budget,
}

impl SolveOutcome {
    pub fn coloring(&self) -> Option<&SetColoring> {
        match self {
            SolveOutcome::Sat(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_coloring(self) -> Option<SetColoring> {
        match self {
            SolveOutcome::Sat(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveOutcome::Unsat)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("the solver handles palettes of at most 64 colors, got {0}")]
    PaletteTooLarge(u32),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

struct Problem {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    domains: Vec<Vec<u64>>,
    fixed: Vec<bool>,
    symmetric: bool,
}

impl Problem {
    fn build<G: Graph>(g: &G, spec: &ColoringSpec) -> Problem {
        let ids = g.vertex_ids();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids.iter().map(|&v| g.neighbors(v).iter().map(|w| index[w]).collect()).collect();
        let mut fixed = vec![false; ids.len()];
        let domains = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let list = spec.list_of(v).as_mask().expect("palette checked");
                if let Some(f) = spec.fixed.get(&v) {
                    fixed[i] = true;
                    let ok_size = match spec.exact_of(v) {
                        Some(k) => f.len() == k as usize,
                        None => f.len() >= spec.min_of(v) as usize,
                    };
                    return match f.as_mask() {
                        Some(m) if ok_size && m & !list == 0 => vec![m],
                        _ => Vec::new(),
                    };
                }
                let k = spec.exact_of(v).unwrap_or_else(|| spec.min_of(v));
                subsets_of_size(list, k)
            })
            .collect();
        Problem { ids, adj, domains, fixed, symmetric: spec.is_palette_symmetric() }
    }
}

struct OutOfBudget;

#[derive(Clone)]
struct Search<'a> {
    p: &'a Problem,
    assigned: Vec<Option<u64>>,
    domains: Vec<Vec<u64>>,
    used: u64,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem, budget: Option<u64>) -> Search<'a> {
        Search {
            p,
            assigned: vec![None; p.ids.len()],
            domains: p.domains.clone(),
            used: 0,
            nodes: 0,
            budget,
        }
    }

    /// Assigns `mask` to `v` and prunes its neighbors. Returns false when a
    /// neighbor runs out of candidates; the trail allows undoing either way.
    fn assign(&mut self, v: usize, mask: u64, trail: &mut Vec<(usize, Vec<u64>)>) -> bool {
        self.assigned[v] = Some(mask);
        for &w in &self.p.adj[v] {
            if self.assigned[w].is_some() {
                continue;
            }
            if self.domains[w].iter().any(|&m| m & mask != 0) {
                let old = self.domains[w].clone();
                self.domains[w].retain(|&m| m & mask == 0);
                trail.push((w, old));
                if self.domains[w].is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, v: usize, trail: &mut Vec<(usize, Vec<u64>)>, mark: usize) {
        while trail.len() > mark {
            let (w, old) = trail.pop().unwrap();
            self.domains[w] = old;
        }
        self.assigned[v] = None;
    }

    /// Next vertex: most saturated, then highest degree, then smallest id.
    fn select(&self) -> Option<usize> {
        (0..self.p.ids.len()).filter(|&v| self.assigned[v].is_none()).min_by_key(|&v| {
            let sat: u64 = self.p.adj[v].iter().filter_map(|&w| self.assigned[w]).fold(0, |a, m| a | m);
            (std::cmp::Reverse(sat.count_ones()), std::cmp::Reverse(self.p.adj[v].len()), v)
        })
    }

    /// Candidates of `v`, skipping sets that differ from an earlier one only
    /// by renaming colors not used yet.
    fn candidates(&self, v: usize) -> Vec<u64> {
        if !self.p.symmetric {
            return self.domains[v].clone();
        }
        let m = self.used.count_ones();
        self.domains[v]
            .iter()
            .copied()
            .filter(|&mask| {
                let fresh = (mask & !self.used).checked_shr(m).unwrap_or(0);
                fresh & fresh.wrapping_add(1) == 0
            })
            .collect()
    }

    fn rec(&mut self) -> Result<bool, OutOfBudget> {
        let Some(v) = self.select() else { return Ok(true) };
        let mut trail = Vec::new();
        for mask in self.candidates(v) {
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Err(OutOfBudget);
            }
            let used = self.used;
            self.used |= mask;
            let ok = self.assign(v, mask, &mut trail);
            if ok && self.rec()? {
                return Ok(true);
            }
            self.undo(v, &mut trail, 0);
            self.used = used;
        }
        Ok(false)
    }

    fn coloring(&self, palette: u32) -> SetColoring {
        SetColoring {
            palette,
            sets: self
                .p
                .ids
                .iter()
                .zip(&self.assigned)
                .map(|(&v, m)| (v, ColorSet::from_mask(m.expect("complete"))))
                .collect(),
        }
    }
}

enum Branch {
    Sat(SetColoring),
    Unsat,
    Budget,
}

/// Searches for a coloring of `g` satisfying `spec`.
pub fn solve<G: Graph>(g: &G, spec: &ColoringSpec, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if spec.palette > 64 {
        return Err(SolveError::PaletteTooLarge(spec.palette));
    }
    let problem = Problem::build(g, spec);
    if problem.domains.iter().any(Vec::is_empty) {
        return Ok(SolveOutcome::Unsat);
    }
    let mut root = Search::new(&problem, opts.budget);
    let mut trail = Vec::new();
    for v in 0..problem.ids.len() {
        if problem.fixed[v] {
            let mask = root.domains[v][0];
            if !root.assign(v, mask, &mut trail) {
                return Ok(SolveOutcome::Unsat);
            }
        }
    }
    let Some(v) = root.select() else {
        return Ok(SolveOutcome::Sat(root.coloring(spec.palette)));
    };
    let run = |mask: &u64| -> Branch {
        let mut s = root.clone();
        s.nodes = 1;
        s.used |= mask;
        let mut t = Vec::new();
        if !s.assign(v, *mask, &mut t) {
            return Branch::Unsat;
        }
        match s.rec() {
            Ok(true) => Branch::Sat(s.coloring(spec.palette)),
            Ok(false) => Branch::Unsat,
            Err(OutOfBudget) => Branch::Budget,
        }
    };
    let values = root.candidates(v);
    let results: Vec<Branch> = if opts.threads <= 1 {
        let mut out = Vec::new();
        for m in &values {
            let b = run(m);
            let done = matches!(b, Branch::Sat(_));
            out.push(b);
            if done {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| SolveError::ThreadPool(e.to_string()))?;
        let out_of_budget = AtomicBool::new(false);
        let first = pool.install(|| {
            values.par_iter().find_map_first(|m| match run(m) {
                Branch::Sat(c) => Some(c),
                Branch::Budget => {
                    out_of_budget.store(true, Ordering::Relaxed);
                    None
                }
                Branch::Unsat => None,
            })
        });
        match first {
            Some(c) => vec![Branch::Sat(c)],
            None if out_of_budget.load(Ordering::Relaxed) => vec![Branch::Budget],
            None => Vec::new(),
        }
    };
    if let Some(c) = results.iter().find_map(|b| match b {
        Branch::Sat(c) => Some(c.clone()),
        _ => None,
    }) {
        return Ok(SolveOutcome::Sat(c));
    }
    if results.iter().any(|b| matches!(b, Branch::Budget)) {
        Ok(SolveOutcome::Budget)
    } else {
        Ok(SolveOutcome::Unsat)
    }
}
