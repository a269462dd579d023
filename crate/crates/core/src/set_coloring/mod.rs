//! Set colorings: certificates, verification, exact search and composition.
//!
//! An `(a:b)`-coloring gives each vertex a `b`-subset of `{1..a}` so that
//! adjacent vertices get disjoint sets. [`ColoringSpec`] generalizes the
//! constraint to per-vertex cardinalities, lists and precolored vertices,
//! which covers X-enhanced colorings (minimum 2, exactly 3 on X, palette 6).

mod color_set;
pub mod gadget;
mod kneser;
mod solver;


use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::plane_graph::{Graph, VertexId};

pub use color_set::{subsets_of_size, ColorSet};
pub use kneser::{find_homomorphism, to_kneser_instance, KneserInstance};
pub use solver::{solve, SolveError, SolveOptions, SolveOutcome};

/// Palette size and a color set per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetColoring {
    pub palette: u32,
    pub sets: BTreeMap<VertexId, ColorSet>,
}

#[derive(Debug, Error)]
pub enum ColoringFormatError {
    #[error("coloring json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coloring file: {0}")]
    Shape(String),
}

impl SetColoring {
    pub fn new(palette: u32) -> SetColoring {
        SetColoring { palette, sets: BTreeMap::new() }
    }

    pub fn get(&self, v: VertexId) -> Option<&ColorSet> {
        self.sets.get(&v)
    }

    pub fn set(&mut self, v: VertexId, s: impl Into<ColorSet>) {
        self.sets.insert(v, s.into());
    }

    /// Smallest set size over the colored vertices.
    pub fn min_cardinality(&self) -> usize {
        self.sets.values().map(ColorSet::len).min().unwrap_or(0)
    }

    /// Applies a palette permutation (`perm[c - 1]` is the image of `c`).
    pub fn permuted(&self, perm: &[u32]) -> SetColoring {
        SetColoring {
            palette: self.palette,
            sets: self.sets.iter().map(|(&v, s)| (v, s.permuted(perm))).collect(),
        }
    }

    /// Keeps only the given vertices.
    pub fn restricted(&self, keep: &BTreeSet<VertexId>) -> SetColoring {
        SetColoring {
            palette: self.palette,
            sets: self.sets.iter().filter(|(v, _)| keep.contains(v)).map(|(&v, s)| (v, s.clone())).collect(),
        }
    }

    /// JSON object: `"palette"` plus vertex id → sorted color array.
    pub fn to_json_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("palette".into(), Value::from(self.palette));
        for (v, s) in &self.sets {
            m.insert(v.to_string(), Value::from(s.to_vec()));
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain json")
    }

    pub fn from_json_value(value: &Value) -> Result<SetColoring, ColoringFormatError> {
        let shape = |m: &str| ColoringFormatError::Shape(m.to_string());
        let obj = value.as_object().ok_or_else(|| shape("expected an object"))?;
        let palette = obj
            .get("palette")
            .and_then(Value::as_u64)
            .ok_or_else(|| shape("missing integer \"palette\""))? as u32;
        let mut c = SetColoring::new(palette);
        for (k, val) in obj {
            if k == "palette" {
                continue;
            }
            let v: VertexId = k.parse().map_err(|_| shape(&format!("bad vertex id {k:?}")))?;
            let arr = val.as_array().ok_or_else(|| shape(&format!("colors of {v} must be an array")))?;
            let mut set = ColorSet::new();
            for x in arr {
                let col = x.as_u64().filter(|&x| x >= 1).ok_or_else(|| shape(&format!("bad color at {v}")))?;
                set.insert(col as u32);
            }
            c.sets.insert(v, set);
        }
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<SetColoring, ColoringFormatError> {
        SetColoring::from_json_value(&serde_json::from_str(text)?)
    }
}

impl serde::Serialize for SetColoring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for SetColoring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<SetColoring, D::Error> {
        let value = Value::deserialize(deserializer)?;
        SetColoring::from_json_value(&value).map_err(serde::de::Error::custom)
    }
}

/// Constraints on a set coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSpec {
    pub palette: u32,
    /// Minimum set size for vertices without an override.
    pub default_min: u32,
    pub min: BTreeMap<VertexId, u32>,
    /// Exact set sizes; take precedence over minima.
    pub exact: BTreeMap<VertexId, u32>,
    /// Allowed colors; the full palette when absent.
    pub lists: BTreeMap<VertexId, ColorSet>,
    pub fixed: BTreeMap<VertexId, ColorSet>,
    /// Enhanced vertices. Each one needs exactly 3 colors.
    pub enhanced: BTreeSet<VertexId>,
}

impl ColoringSpec {
    /// Plain `(a:b)`-coloring.
    pub fn uniform(palette: u32, b: u32) -> ColoringSpec {
        ColoringSpec {
            palette,
            default_min: b,
            min: BTreeMap::new(),
            exact: BTreeMap::new(),
            lists: BTreeMap::new(),
            fixed: BTreeMap::new(),
            enhanced: BTreeSet::new(),
        }
    }

    /// X-enhanced coloring: palette 6, at least 2 colors, exactly 3 on `x`.
    pub fn enhanced(x: impl IntoIterator<Item = VertexId>) -> ColoringSpec {
        ColoringSpec { enhanced: x.into_iter().collect(), ..ColoringSpec::uniform(6, 2) }
    }

    pub fn with_fixed(mut self, v: VertexId, s: impl Into<ColorSet>) -> ColoringSpec {
        self.fixed.insert(v, s.into());
        self
    }

    pub fn with_list(mut self, v: VertexId, s: impl Into<ColorSet>) -> ColoringSpec {
        self.lists.insert(v, s.into());
        self
    }

    pub fn with_exact(mut self, v: VertexId, k: u32) -> ColoringSpec {
        self.exact.insert(v, k);
        self
    }

    pub fn with_min(mut self, v: VertexId, k: u32) -> ColoringSpec {
        self.min.insert(v, k);
        self
    }

    pub fn min_of(&self, v: VertexId) -> u32 {
        self.min.get(&v).copied().unwrap_or(self.default_min)
    }

    pub fn exact_of(&self, v: VertexId) -> Option<u32> {
        self.exact.get(&v).copied().or_else(|| self.enhanced.contains(&v).then_some(3))
    }

    /// Allowed colors of `v`: its list intersected with the palette.
    pub fn list_of(&self, v: VertexId) -> ColorSet {
        let full = ColorSet::full(self.palette);
        match self.lists.get(&v) {
            Some(l) => l.intersection(&full),
            None => full,
        }
    }

    /// True when no list or precoloring singles out a color, so renaming
    /// colors maps solutions to solutions.
    pub fn is_palette_symmetric(&self) -> bool {
        self.lists.is_empty() && self.fixed.is_empty()
    }
}

/// One reason a coloring fails a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Unassigned { vertex: VertexId },
    EdgeOverlap { u: VertexId, v: VertexId, common: ColorSet },
    TooFew { vertex: VertexId, have: usize, need: u32 },
    WrongSize { vertex: VertexId, have: usize, need: u32 },
    OutsideList { vertex: VertexId, extra: ColorSet },
    FixedMismatch { vertex: VertexId, expected: ColorSet, found: ColorSet },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unassigned { vertex } => write!(f, "vertex {vertex} has no color set"),
            Violation::EdgeOverlap { u, v, common } => write!(f, "edge {u}-{v} shares colors {common}"),
            Violation::TooFew { vertex, have, need } => {
                write!(f, "vertex {vertex} has {have} colors, needs at least {need}")
            }
            Violation::WrongSize { vertex, have, need } => {
                write!(f, "vertex {vertex} has {have} colors, needs exactly {need}")
            }
            Violation::OutsideList { vertex, extra } => {
                write!(f, "vertex {vertex} uses colors {extra} outside its list")
            }
            Violation::FixedMismatch { vertex, expected, found } => {
                write!(f, "vertex {vertex} is precolored {expected} but has {found}")
            }
        }
    }
}

/// Checks `c` against `spec` on `g` and returns every violation found.
pub fn verify<G: Graph>(g: &G, c: &SetColoring, spec: &ColoringSpec) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    for v in g.vertex_ids() {
        let Some(s) = c.get(v) else {
            out.push(Violation::Unassigned { vertex: v });
            continue;
        };
        match spec.exact_of(v) {
            Some(k) if s.len() != k as usize => {
                out.push(Violation::WrongSize { vertex: v, have: s.len(), need: k })
            }
            Some(_) => {}
            None if s.len() < spec.min_of(v) as usize => {
                out.push(Violation::TooFew { vertex: v, have: s.len(), need: spec.min_of(v) })
            }
            None => {}
        }
        let extra = s.difference(&spec.list_of(v));
        if !extra.is_empty() {
            out.push(Violation::OutsideList { vertex: v, extra });
        }
        if let Some(f) = spec.fixed.get(&v) {
            if f != s {
                out.push(Violation::FixedMismatch { vertex: v, expected: f.clone(), found: s.clone() });
            }
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (c.get(u), c.get(v)) {
            let common = a.intersection(b);
            if !common.is_empty() {
                out.push(Violation::EdgeOverlap { u, v, common });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("nothing to compose")]
    Empty,
    #[error("colorings cover different vertex sets")]
    VertexMismatch,
    #[error("coloring {index} uses color {color} beyond its palette {palette}")]
    BeyondPalette { index: usize, color: u32, palette: u32 },
}

/// Union of colorings on shifted palettes: the `i`-th coloring's colors are
/// moved past the palettes of the earlier ones.
pub fn compose_shifted(colorings: &[SetColoring]) -> Result<SetColoring, ComposeError> {
    let first = colorings.first().ok_or(ComposeError::Empty)?;
    let verts: BTreeSet<VertexId> = first.sets.keys().copied().collect();
    let mut out = SetColoring::new(0);
    for v in &verts {
        out.sets.insert(*v, ColorSet::new());
    }
    for (index, c) in colorings.iter().enumerate() {
        if !c.sets.keys().copied().eq(verts.iter().copied()) {
            return Err(ComposeError::VertexMismatch);
        }
        for s in c.sets.values() {
            if let Some(color) = s.max_color().filter(|&m| m > c.palette) {
                return Err(ComposeError::BeyondPalette { index, color, palette: c.palette });
            }
        }
        for (v, s) in &c.sets {
            let cur = out.sets.get_mut(v).unwrap();
            *cur = cur.union(&s.shifted(out.palette));
        }
        out.palette += c.palette;
    }
    Ok(out)
}
