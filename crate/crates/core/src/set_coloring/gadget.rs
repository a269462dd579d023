//! The 10-vertex gadget `H`: three 5-cycles around the hub `x`, used to
//! recolor a neighborhood with list constraints.
//!
//! Faces are `x v1 u1 u2 v2`, `x v2 u2 u3 v3` and `u1 u2 u3 w3 w1`, plus the
//! pendant `y1` on `w1`. Lists are fixed except on `u1`, `w3` and `y1`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{solve, verify, ColorSet, ColoringSpec, SetColoring, SolveOptions};
use crate::plane_graph::{SimpleGraph, VertexId};

pub const X: VertexId = 0;
pub const V1: VertexId = 1;
pub const U1: VertexId = 2;
pub const U2: VertexId = 3;
pub const V2: VertexId = 4;
pub const U3: VertexId = 5;
pub const V3: VertexId = 6;
pub const W3: VertexId = 7;
pub const W1: VertexId = 8;
pub const Y1: VertexId = 9;

pub const EDGES: [(VertexId, VertexId); 12] = [
    (X, V1),
    (V1, U1),
    (U1, U2),
    (U2, V2),
    (V2, X),
    (U2, U3),
    (U3, V3),
    (V3, X),
    (U3, W3),
    (W3, W1),
    (W1, U1),
    (W1, Y1),
];

pub fn gadget_graph() -> SimpleGraph {
    SimpleGraph::from_edges(0..10, &EDGES)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("list of u1 must have 3 colors from 3..=6 including 3, got {0}")]
    ListU1(ColorSet),
    #[error("list of w3 must have 4 colors from 1..=6, got {0}")]
    ListW3(ColorSet),
    #[error("list of y1 must have 2 colors from 3..=6, got {0}")]
    ListY1(ColorSet),
    #[error("set {0} must be a 2-subset of the u1 list containing 3 and meeting the y1 list")]
    BadChoice(ColorSet),
    #[error("no coloring found for lists {0:?}")]
    NoColoring(GadgetLists),
}

/// The free lists of the gadget. The others are `L(x) = {1,2,3}`,
/// `L(u3) = {1,2,5,6}` and the full palette.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLists {
    pub u1: ColorSet,
    pub w3: ColorSet,
    pub y1: ColorSet,
}

impl GadgetLists {
    pub fn new(u1: ColorSet, w3: ColorSet, y1: ColorSet) -> Result<GadgetLists, GadgetError> {
        let high = ColorSet::from([3, 4, 5, 6]);
        if u1.len() != 3 || !u1.is_subset(&high) || !u1.contains(3) {
            return Err(GadgetError::ListU1(u1));
        }
        if w3.len() != 4 || !w3.is_subset(&ColorSet::full(6)) {
            return Err(GadgetError::ListW3(w3));
        }
        if y1.len() != 2 || !y1.is_subset(&high) {
            return Err(GadgetError::ListY1(y1));
        }
        Ok(GadgetLists { u1, w3, y1 })
    }

    /// Every valid list assignment, in lexicographic order of `(u1, y1, w3)`.
    pub fn all() -> Vec<GadgetLists> {
        let mut out = Vec::new();
        for u1 in subsets(0b111100, 3).into_iter().filter(|s| s.contains(3)) {
            for y1 in subsets(0b111100, 2) {
                for w3 in subsets(0b111111, 4) {
                    out.push(GadgetLists { u1: u1.clone(), w3, y1: y1.clone() });
                }
            }
        }
        out
    }

    /// The sets `S` that `u1` may take.
    pub fn admissible_sets(&self) -> Vec<ColorSet> {
        subsets(self.u1.as_mask().unwrap(), 2)
            .into_iter()
            .filter(|s| s.contains(3) && !s.is_disjoint(&self.y1))
            .collect()
    }

    /// The coloring constraints, with `u1` precolored by `s`.
    pub fn spec(&self, s: &ColorSet) -> ColoringSpec {
        ColoringSpec::enhanced([X])
            .with_list(X, [1, 2, 3])
            .with_list(U1, self.u1.clone())
            .with_list(U3, [1, 2, 5, 6])
            .with_list(W3, self.w3.clone())
            .with_list(Y1, self.y1.clone())
            .with_fixed(U1, s.clone())
    }
}

fn subsets(mask: u64, k: u32) -> Vec<ColorSet> {
    super::subsets_of_size(mask, k).into_iter().map(ColorSet::from_mask).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetColoring {
    pub s: ColorSet,
    pub coloring: SetColoring,
    /// False when the direct construction failed and search was used.
    pub by_construction: bool,
}

fn least(set: &ColorSet) -> u32 {
    set.iter().next().expect("nonempty choice")
}

fn pair(a: u32, b: u32) -> ColorSet {
    ColorSet::from([a, b])
}

/// Direct construction of the coloring for a given `S`.
fn construct(lists: &GadgetLists, s: &ColorSet) -> SetColoring {
    let mut c = SetColoring::new(6);
    c.set(X, [1, 2, 3]);
    c.set(U1, s.clone());
    c.set(Y1, lists.y1.clone());
    c.set(V1, ColorSet::from([4, 5, 6]).difference(s));
    let taken = s.union(&lists.y1);
    let extra = lists.w3.intersection(&ColorSet::from([3, 4]));
    if let Some(alpha) = extra.iter().next() {
        // w3 can take a color that u3 never uses.
        let mut avoid = taken.clone();
        avoid.insert(alpha);
        let w1_pool = ColorSet::full(6).difference(&avoid);
        let w1: ColorSet = w1_pool.iter().take(2).collect();
        let beta = least(&lists.w3.difference(&w1).difference(&ColorSet::from([alpha])));
        let w3 = pair(alpha, beta);
        let rest = ColorSet::from([1, 2, 5, 6]).difference(&w3);
        let a = least(&rest.intersection(&ColorSet::from([1, 2])));
        let b = least(&rest.intersection(&ColorSet::from([5, 6])));
        let a2 = 3 - a;
        let ch = least(&ColorSet::from([4, 5, 6]).difference(&s.union(&ColorSet::from([b]))));
        c.set(W1, w1);
        c.set(W3, w3);
        c.set(U3, pair(a, b));
        c.set(V3, ColorSet::from([4, 5, 6]).difference(&ColorSet::from([b])));
        c.set(U2, pair(a2, ch));
        c.set(V2, ColorSet::from([4, 5, 6]).difference(&ColorSet::from([ch])));
    } else {
        // L(w3) = L(u3) = {1,2,5,6}.
        let t = least(&ColorSet::from([3, 4, 5, 6]).difference(&taken));
        let r = least(&ColorSet::from([5, 6]).difference(&ColorSet::from([t])));
        let r2 = 11 - r;
        let ch = least(&ColorSet::from([3, 4, 5, 6]).difference(&s.union(&ColorSet::from([r2]))));
        c.set(W1, pair(1, t));
        c.set(W3, pair(2, r));
        c.set(U3, pair(1, r2));
        c.set(V3, pair(4, r));
        c.set(U2, pair(2, ch));
        let v2: ColorSet = ColorSet::from([4, 5, 6]).difference(&ColorSet::from([ch])).iter().take(2).collect();
        c.set(V2, v2);
    }
    c
}

/// Colors the gadget with `u1 = s`, or with the least admissible `S` when
/// `s` is `None`.
pub fn spe_set_color(lists: &GadgetLists, s: Option<&ColorSet>) -> Result<GadgetColoring, GadgetError> {
    let admissible = lists.admissible_sets();
    let s = match s {
        Some(s) if admissible.contains(s) => s.clone(),
        Some(s) => return Err(GadgetError::BadChoice(s.clone())),
        None => admissible.into_iter().next().expect("u1 and y1 lists always meet"),
    };
    let g = gadget_graph();
    let spec = lists.spec(&s);
    let built = construct(lists, &s);
    if verify(&g, &built, &spec).is_ok() {
        return Ok(GadgetColoring { s, coloring: built, by_construction: true });
    }
    log::warn!("gadget construction failed for {lists:?} with S = {s}; searching");
    match solve(&g, &spec, &SolveOptions::default()).expect("palette 6").into_coloring() {
        Some(coloring) => Ok(GadgetColoring { s, coloring, by_construction: false }),
        None => Err(GadgetError::NoColoring(lists.clone())),
    }
}

/// Gadget coloring keyed by the vertices it stands for.
pub fn map_coloring(c: &SetColoring, roles: &BTreeMap<VertexId, VertexId>) -> SetColoring {
    SetColoring {
        palette: c.palette,
        sets: c.sets.iter().filter_map(|(h, s)| roles.get(h).map(|&v| (v, s.clone()))).collect(),
    }
}
