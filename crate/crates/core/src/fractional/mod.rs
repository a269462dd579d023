//! Fractional chromatic number with exact certificates.
//!
//! `chi_f` solves the packing LP `max sum y_v` subject to `sum_{v in S} y_v <= 1`
//! over independent sets `S`, generating the sets lazily: the restricted
//! master starts from singletons and a maximum-weight independent set under
//! the current `y` either certifies optimality (weight at most 1) or is added
//! as a new row. The master's duals are the weights of a fractional cover
//! by independent sets with the same objective.

mod mwis;
mod simplex;

#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::plane_graph::{Graph, VertexId};
use crate::scalar::{format_ratio, Scalar};
use crate::set_coloring::{solve, ColorSet, ColoringSpec, SetColoring, SolveOptions, SolveOutcome};

pub use mwis::{independence_number, max_weight_independent_set};
pub use simplex::{maximize, LpOutcome, LpSolution};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FractionalError {
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("pricing returned a set already in the master; arithmetic is not exact enough")]
    Stalled,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("cover set {0:?} is not independent")]
    NotIndependent(Vec<VertexId>),
    #[error("vertex {0} is covered with total weight below 1")]
    Uncovered(VertexId),
    #[error("negative weight in certificate")]
    NegativeWeight,
    #[error("cover objective differs from the dual objective")]
    ObjectiveMismatch,
    #[error("independent set {0:?} has dual weight above 1")]
    DualViolated(Vec<VertexId>),
}

/// Independent sets with nonnegative weights covering every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalCover<T> {
    pub sets: Vec<(BTreeSet<VertexId>, T)>,
}

impl<T: Scalar> FractionalCover<T> {
    pub fn objective(&self) -> T {
        self.sets.iter().fold(T::zero(), |acc, (_, w)| acc + w.clone())
    }
}

/// `chi_f` with a primal cover and a dual witness of equal value.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiF<T> {
    pub value: T,
    pub cover: FractionalCover<T>,
    pub dual: BTreeMap<VertexId, T>,
    /// Independent sets generated by pricing, singletons included.
    pub columns: usize,
}

impl<T: Scalar> ChiF<T> {
    /// Checks both certificates from scratch, including a fresh pricing call
    /// for the dual.
    pub fn check<G: Graph>(&self, g: &G) -> Result<(), CertificateError> {
        for (s, w) in &self.cover.sets {
            if w.is_negative_tol() {
                return Err(CertificateError::NegativeWeight);
            }
            if s.iter().any(|&u| s.iter().any(|&v| g.has_edge(u, v))) {
                return Err(CertificateError::NotIndependent(s.iter().copied().collect()));
            }
        }
        for v in g.vertex_ids() {
            let covered =
                self.cover.sets.iter().filter(|(s, _)| s.contains(&v)).fold(T::zero(), |a, (_, w)| a + w.clone());
            if (T::one() - covered).is_positive_tol() {
                return Err(CertificateError::Uncovered(v));
            }
        }
        if self.dual.values().any(|w| w.is_negative_tol()) {
            return Err(CertificateError::NegativeWeight);
        }
        let dual_sum = self.dual.values().fold(T::zero(), |a, w| a + w.clone());
        if !dual_sum.approx_eq(&self.cover.objective()) || !dual_sum.approx_eq(&self.value) {
            return Err(CertificateError::ObjectiveMismatch);
        }
        let (set, weight) = max_weight_independent_set(g, &self.dual);
        if (weight - T::one()).is_positive_tol() {
            return Err(CertificateError::DualViolated(set.into_iter().collect()));
        }
        Ok(())
    }
}

impl ChiF<BigRational> {
    pub fn to_json_value(&self) -> Value {
        json!({
            "chi_f": format_ratio(&self.value),
            "cover": self.cover.sets.iter().map(|(s, w)| json!({
                "set": s.iter().collect::<Vec<_>>(),
                "weight": format_ratio(w),
            })).collect::<Vec<_>>(),
            "dual": self.dual.iter().map(|(v, w)| (v.to_string(), Value::from(format_ratio(w)))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// Exact fractional chromatic number.
pub fn chi_f<G: Graph>(g: &G) -> Result<ChiF<BigRational>, FractionalError> {
    chi_f_with(g)
}

/// Column generation over any scalar; floating point scalars give an
/// approximate value with tolerance-checked certificates.
pub fn chi_f_with<T: Scalar, G: Graph>(g: &G) -> Result<ChiF<T>, FractionalError> {
    let ids = g.vertex_ids();
    if ids.is_empty() {
        return Err(FractionalError::EmptyGraph);
    }
    let mut sets: Vec<BTreeSet<VertexId>> = ids.iter().map(|&v| BTreeSet::from([v])).collect();
    loop {
        let a: Vec<Vec<T>> = sets
            .iter()
            .map(|s| ids.iter().map(|v| if s.contains(v) { T::one() } else { T::zero() }).collect())
            .collect();
        let b = vec![T::one(); sets.len()];
        let c = vec![T::one(); ids.len()];
        let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
            unreachable!("singleton rows bound every variable")
        };
        let dual: BTreeMap<VertexId, T> = ids.iter().copied().zip(sol.x.iter().cloned()).collect();
        let (best, weight) = max_weight_independent_set(g, &dual);
        if (weight - T::one()).is_positive_tol() {
            if sets.contains(&best) {
                return Err(FractionalError::Stalled);
            }
            log::debug!("chi_f: adding column {best:?} ({} columns)", sets.len() + 1);
            sets.push(best);
            continue;
        }
        let cover = FractionalCover {
            sets: sets
                .iter()
                .zip(sol.duals.iter())
                .filter(|(_, w)| w.is_positive_tol())
                .map(|(s, w)| (s.clone(), w.clone()))
                .collect(),
        };
        return Ok(ChiF { value: sol.value, cover, dual, columns: sets.len() });
    }
}

/// Sandwich bounds `n / alpha <= chi_f <= a / b`, with the `(a:b)`-coloring
/// that gives the upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioBounds {
    pub lower: BigRational,
    pub upper: BigRational,
    pub alpha: usize,
    pub witness: SetColoring,
    pub b: u32,
}

/// Greedy proper coloring in id order, as a `(k:1)`-coloring.
fn greedy_coloring<G: Graph>(g: &G) -> SetColoring {
    let mut col: BTreeMap<VertexId, u32> = BTreeMap::new();
    for v in g.vertex_ids() {
        let used: BTreeSet<u32> = g.neighbors(v).iter().filter_map(|u| col.get(u).copied()).collect();
        let c = (1..).find(|c| !used.contains(c)).unwrap();
        col.insert(v, c);
    }
    let k = col.values().copied().max().unwrap_or(1);
    SetColoring { palette: k, sets: col.into_iter().map(|(v, c)| (v, ColorSet::from([c]))).collect() }
}

/// Node budget per solver call when looking for the upper bound.
const UPPER_SEARCH_BUDGET: u64 = 200_000;

pub fn ratio_bounds<G: Graph>(g: &G) -> Result<RatioBounds, FractionalError> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(FractionalError::EmptyGraph);
    }
    let alpha = independence_number(g);
    let lower = BigRational::from_ratio(n as i64, alpha as i64);
    let greedy = greedy_coloring(g);
    let k = greedy.palette;
    let mut candidates: Vec<(u32, u32)> = (1..=4u32)
        .flat_map(|b| (1..=16u32).map(move |a| (a, b)))
        .filter(|&(a, b)| {
            let r = BigRational::from_ratio(a as i64, b as i64);
            r >= lower && r < BigRational::from_int(k as i64)
        })
        .collect();
    candidates.sort_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)).then(p.1.cmp(&q.1)));
    let opts = SolveOptions { budget: Some(UPPER_SEARCH_BUDGET), threads: 1 };
    for (a, b) in candidates {
        if let Ok(SolveOutcome::Sat(c)) = solve(g, &ColoringSpec::uniform(a, b), &opts) {
            let upper = BigRational::from_ratio(a as i64, b as i64);
            return Ok(RatioBounds { lower, upper, alpha, witness: c, b });
        }
    }
    Ok(RatioBounds { lower, upper: BigRational::from_int(k as i64), alpha, witness: greedy, b: 1 })
}
