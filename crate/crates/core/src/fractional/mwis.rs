//! Maximum-weight independent set by branch and bound.
//!
//! Branches on a vertex of maximum degree among the candidates (take it and
//! drop its neighbors, or drop it). The bound is a greedy clique cover of
//! the candidates: an independent set uses at most one vertex per clique,
//! so the sum of the heaviest weight of each clique bounds what remains.

use std::collections::{BTreeMap, BTreeSet};

use crate::plane_graph::{Graph, VertexId};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

struct Search<'a, T> {
    nbr: Vec<Bits>,
    w: &'a [T],
    best: T,
    best_set: Vec<usize>,
}

impl<T: Scalar> Search<'_, T> {
    /// Heaviest vertex of `q`, the smallest index on ties.
    fn heaviest(&self, q: &Bits) -> usize {
        let mut it = q.iter();
        let mut best = it.next().expect("nonempty");
        for i in it {
            if self.w[i] > self.w[best] {
                best = i;
            }
        }
        best
    }

    fn clique_cover_bound(&self, p: &Bits) -> T {
        let mut q = p.clone();
        let mut total = T::zero();
        while !q.is_empty() {
            let v = self.heaviest(&q);
            total = total + self.w[v].clone();
            q.clear(v);
            let mut cand = q.and(&self.nbr[v]);
            while !cand.is_empty() {
                let u = self.heaviest(&cand);
                q.clear(u);
                cand.clear(u);
                cand = cand.and(&self.nbr[u]);
            }
        }
        total
    }

    fn improves(&self, value: &T) -> bool {
        (value.clone() - self.best.clone()).is_positive_tol()
    }

    fn rec(&mut self, p: Bits, cur: T, chosen: &mut Vec<usize>) {
        if p.is_empty() {
            if self.improves(&cur) {
                self.best = cur;
                self.best_set = chosen.clone();
            }
            return;
        }
        if !self.improves(&(cur.clone() + self.clique_cover_bound(&p))) {
            return;
        }
        let (v, deg) = p
            .iter()
            .map(|v| (v, p.and(&self.nbr[v]).count()))
            .fold((usize::MAX, 0), |acc, (v, d)| if acc.0 == usize::MAX || d > acc.1 { (v, d) } else { acc });
        if deg == 0 {
            let mut total = cur;
            let mut all = chosen.clone();
            for i in p.iter() {
                total = total + self.w[i].clone();
                all.push(i);
            }
            if self.improves(&total) {
                self.best = total;
                self.best_set = all;
            }
            return;
        }
        let mut take = p.and_not(&self.nbr[v]);
        take.clear(v);
        chosen.push(v);
        self.rec(take, cur.clone() + self.w[v].clone(), chosen);
        chosen.pop();
        let mut skip = p;
        skip.clear(v);
        self.rec(skip, cur, chosen);
    }
}

/// Independent set of maximum total weight. Missing weights count as zero
/// and nonpositive weights are never chosen.
pub fn max_weight_independent_set<G: Graph, T: Scalar>(
    g: &G,
    weights: &BTreeMap<VertexId, T>,
) -> (BTreeSet<VertexId>, T) {
    let ids = g.vertex_ids();
    let n = ids.len();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let w: Vec<T> = ids.iter().map(|v| weights.get(v).cloned().unwrap_or_else(T::zero)).collect();
    let mut nbr = vec![Bits::empty(n); n];
    let mut p = Bits::empty(n);
    for (i, &v) in ids.iter().enumerate() {
        for u in g.neighbors(v) {
            nbr[i].set(index[u]);
        }
        if w[i].is_positive_tol() {
            p.set(i);
        }
    }
    let mut s = Search { nbr, w: &w, best: T::zero(), best_set: Vec::new() };
    s.rec(p, T::zero(), &mut Vec::new());
    (s.best_set.iter().map(|&i| ids[i]).collect(), s.best)
}

/// Independence number.
pub fn independence_number<G: Graph>(g: &G) -> usize {
    let ones: BTreeMap<VertexId, num_rational::Rational64> =
        g.vertex_ids().into_iter().map(|v| (v, 1.into())).collect();
    max_weight_independent_set(g, &ones).0.len()
}
