//! Lifting recipes: the explicit color choices that turn a coloring of the
//! reduced instance into one of the instance it came from.
//!
//! Every recipe first renames colors into the canonical form its case
//! analysis is written in (always `x = {1,2,3}` plus rule-specific pins),
//! recolors a handful of vertices, and maps the result back. Where a case
//! leaves a choice open the least option is taken. A recipe returns `None`
//! when the coloring it receives falls outside every case it covers; the
//! engine then completes the coloring by search.

use std::collections::BTreeMap;

use super::normalize::{find_permutation, invert, Permutation, View};
use super::rules::{fourth_neighbors, tie5_outside, Ctx, Rule};
use crate::plane_graph::{Graph, PlaneGraph, VertexId};
use crate::set_coloring::gadget::{self, map_coloring, spe_set_color, GadgetLists};
use crate::set_coloring::{ColorSet, SetColoring};

/// A lifted coloring together with how it was obtained.
#[derive(Debug, Clone)]
pub(crate) struct Lifted {
    pub coloring: SetColoring,
    pub recipe: String,
    pub permutation: Option<Permutation>,
}

const PALETTE: u32 = 6;

fn cs<const N: usize>(a: [u32; N]) -> ColorSet {
    ColorSet::from(a)
}

fn x123() -> ColorSet {
    cs([1, 2, 3])
}

/// Least 2-subset of `allowed` (lexicographic), optionally required to
/// contain `must` and to meet `meet`.
fn least_pair(allowed: &ColorSet, must: Option<u32>, meet: Option<&ColorSet>) -> Option<ColorSet> {
    let colors: Vec<u32> = allowed.iter().collect();
    for (i, &a) in colors.iter().enumerate() {
        for &b in &colors[i + 1..] {
            let p = cs([a, b]);
            if must.is_some_and(|m| !p.contains(m)) || meet.is_some_and(|m| p.is_disjoint(m)) {
                continue;
            }
            return Some(p);
        }
    }
    None
}

fn least(s: &ColorSet) -> Option<u32> {
    s.iter().next()
}

/// A coloring under construction in normalized colors.
struct Work<'a> {
    g: &'a PlaneGraph,
    c: SetColoring,
}

impl Work<'_> {
    fn get(&self, v: VertexId) -> ColorSet {
        self.c.get(v).cloned().unwrap_or_default()
    }

    fn set(&mut self, v: VertexId, s: ColorSet) {
        self.c.set(v, s);
    }

    /// Colors not used by any colored neighbor of `v`.
    fn avail(&self, v: VertexId) -> ColorSet {
        let used = self.g.neighbors(v).iter().filter_map(|u| self.c.get(*u)).fold(ColorSet::new(), |a, s| a.union(s));
        ColorSet::full(PALETTE).difference(&used)
    }

    /// Colors the path `x u v` hanging off `x` (degree-2 `v`): `u` takes the
    /// least free pair meeting `x`'s colors, then `v` the least free pair.
    fn int123(&mut self, x: VertexId, u: VertexId, v: VertexId) -> Option<()> {
        self.c.sets.remove(&u);
        self.c.sets.remove(&v);
        let pu = least_pair(&self.avail(u), None, Some(&self.get(x)))?;
        self.set(u, pu);
        let pv = least_pair(&self.avail(v), None, None)?;
        self.set(v, pv);
        Some(())
    }

    /// Gives each vertex of `order` a 2-set, in order, taking the least free
    /// pair and backtracking when a later vertex is left without one.
    fn pairs_in_order(&mut self, order: &[VertexId]) -> Option<()> {
        let Some((&v, rest)) = order.split_first() else { return Some(()) };
        let colors: Vec<u32> = self.avail(v).iter().collect();
        for (i, &a) in colors.iter().enumerate() {
            for &b in &colors[i + 1..] {
                self.set(v, cs([a, b]));
                if self.pairs_in_order(rest).is_some() {
                    return Some(());
                }
            }
        }
        self.c.sets.remove(&v);
        None
    }

    /// Overlays a gadget coloring placed by `roles` (gadget vertex to graph
    /// vertex).
    fn overlay_gadget(&mut self, lists: &GadgetLists, s: Option<&ColorSet>, roles: &BTreeMap<VertexId, VertexId>) -> Option<ColorSet> {
        let h = spe_set_color(lists, s).ok()?;
        for (v, set) in map_coloring(&h.coloring, roles).sets {
            self.set(v, set);
        }
        Some(h.s)
    }
}

/// Lexicographically first renaming accepted by `pred`, and the renamed
/// coloring.
fn normalized<'a>(
    g: &'a PlaneGraph,
    base: &SetColoring,
    mut pred: impl FnMut(&dyn Fn(VertexId) -> ColorSet) -> bool,
) -> Option<(Work<'a>, Permutation)> {
    let perm = find_permutation(PALETTE, |view: &View| pred(&|v| view.set(base, v)))?;
    Some((Work { g, c: base.permuted(&perm) }, perm))
}

fn finish(w: Work, perm: Permutation, recipe: &str) -> Lifted {
    Lifted { coloring: w.c.permuted(&invert(&perm)), recipe: recipe.to_string(), permutation: Some(perm) }
}

/// `base` with every vertex off `C` other than `x` cut down to its two least
/// colors. The case analyses assume these cardinalities.
fn trimmed(ctx: &Ctx, base: &SetColoring) -> SetColoring {
    let mut c = base.clone();
    for (v, s) in c.sets.iter_mut() {
        if s.len() > 2 && !ctx.in_c(*v) && !ctx.is_x(*v) {
            *s = s.iter().take(2).collect();
        }
    }
    c
}

/// Runs the recipe of `rule` on the pulled-back coloring `base` of `inst`.
pub(crate) fn recipe(ctx: &Ctx, rule: Rule, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let trimmed_base;
    let base = if rule.needs_x() || rule == Rule::LTie5 {
        trimmed_base = trimmed(ctx, base);
        &trimmed_base
    } else {
        base
    };
    match rule {
        Rule::Deg2Remove => {
            let mut w = Work { g: ctx.g, c: base.clone() };
            let p = least_pair(&w.avail(t[0]), None, None)?;
            w.set(t[0], p);
            Some(Lifted { coloring: w.c, recipe: "DEG2-REMOVE/free-pair".into(), permutation: None })
        }
        Rule::CutMerge | Rule::FourCycleIdentify | Rule::SixFaceChord => {
            Some(Lifted { coloring: base.clone(), recipe: format!("{}/identity", rule.tag()), permutation: None })
        }
        Rule::NonfacialCycleSplit => None,
        Rule::L233 => l233(ctx, t, base),
        Rule::L232325 => l232325(ctx, t, base),
        Rule::L232424 => l232424(ctx, t, base),
        Rule::LTie5 => tie5(ctx, t, base),
        Rule::L242324 => l242324(ctx, t, base),
        Rule::L232523 => l232523(ctx, t, base),
    }
}

fn l233(ctx: &Ctx, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let (x, v1, u1, u2) = (t[0], t[1], t[2], t[3]);
    let u0 = ctx.other_neighbor(u1, &[v1, u2])?;
    let (mut w, perm) = normalized(ctx.g, base, |s| s(x) == x123() && s(u0).contains(1) && !s(u0).contains(3))?;
    w.set(u2, cs([1, 2]));
    let p = least_pair(&cs([3, 4, 5, 6]).difference(&w.get(u0)), Some(3), None)?;
    w.set(u1, p);
    w.c.sets.remove(&v1);
    let pv = least_pair(&w.avail(v1), None, None)?;
    w.set(v1, pv);
    Some(finish(w, perm, "L233"))
}

/// `|(u1 ∪ u3) ∩ {1,2,3}| <= 2` after `x = {1,2,3}`: extend through `u2`.
fn low_overlap(ctx: &Ctx, base: &SetColoring, x: VertexId, a: VertexId, b: VertexId, u2: VertexId, v2: VertexId, tag: &str) -> Option<Lifted> {
    let (mut w, perm) = normalized(ctx.g, base, |s| s(x) == x123())?;
    if w.get(a).union(&w.get(b)).intersection(&x123()).len() > 2 {
        return None;
    }
    w.int123(x, u2, v2)?;
    Some(finish(w, perm, &format!("{tag}/int123")))
}

fn l232325(ctx: &Ctx, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let (x, v1, u1, u2, v2, u3, v3) = (t[0], t[1], t[2], t[3], t[4], t[5], t[6]);
    if let Some(l) = low_overlap(ctx, base, x, u1, u3, u2, v2, "L232325") {
        return Some(l);
    }
    let u0 = ctx.other_neighbor(u1, &[v1, u2])?;
    if ctx.deg(u3) == 3 {
        let u4 = ctx.other_neighbor(u3, &[v3, u2])?;
        // The configuration is symmetric in its two sides; try u1 first.
        for (a, va, a0, b) in [(u1, v1, u0, u3), (u3, v3, u4, u1)] {
            let found = normalized(ctx.g, base, |s| {
                let sb = s(b);
                s(x) == x123() && s(a) == cs([1, 2]) && s(a0) == cs([3, 4]) && sb.contains(3) && !sb.contains(1) && !sb.contains(6)
            });
            if let Some((mut w, perm)) = found {
                w.set(a, cs([2, 5]));
                w.set(va, cs([4, 6]));
                w.set(u2, cs([1, 6]));
                w.set(v2, cs([4, 5]));
                return Some(finish(w, perm, "L232325/deg3"));
            }
        }
        return None;
    }
    let (u4, _) = fourth_neighbors(ctx, u3, u2, v3);
    let (probe, _) = normalized(ctx.g, base, |s| s(x) == x123())?;
    match probe.get(u3).intersection(&x123()).len() {
        2 => {
            let (mut w, perm) = normalized(ctx.g, base, |s| {
                let s1 = s(u1);
                s(x) == x123() && s(u3) == cs([1, 2]) && s(u4) == cs([3, 4]) && s1.contains(3) && !s1.contains(1) && !s1.contains(6)
            })?;
            let alpha = least(&cs([4, 5]).difference(&w.get(u1)))?;
            w.set(u3, cs([2, 6]));
            w.set(v3, cs([4, 5]));
            w.set(u2, cs([1, alpha]));
            w.set(v2, cs([9 - alpha, 6]));
            Some(finish(w, perm, "L232325/deg4-two"))
        }
        1 => {
            let (mut w, perm) = normalized(ctx.g, base, |s| {
                s(x) == x123() && s(u3) == cs([3, 4]) && s(u1) == cs([1, 2]) && !s(u0).contains(6)
            })?;
            w.set(u1, cs([2, 6]));
            w.set(v1, cs([4, 5]));
            w.set(u2, cs([1, 5]));
            w.set(v2, cs([4, 6]));
            Some(finish(w, perm, "L232325/deg4-one"))
        }
        _ => None,
    }
}

fn l232424(ctx: &Ctx, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let (x, v1, u1, u2, v2, u3, v3) = (t[0], t[1], t[2], t[3], t[4], t[5], t[6]);
    let w_ = ctx.other_neighbor(u2, &[u1, v2, u3])?;
    let u0 = ctx.other_neighbor(u1, &[v1, u2])?;
    let u4 = ctx.other_neighbor(u3, &[v3, u2])?;
    let (mut w, perm) = normalized(ctx.g, base, |s| {
        let s0 = s(u0);
        s(x) == x123() && s(w_) == cs([4, 5]) && s0.contains(1) && !s0.contains(2) && !s0.contains(5)
    })?;
    w.set(u1, cs([2, 5]));
    w.set(v1, cs([4, 6]));
    let s4 = w.get(u4);
    let (alpha, beta) = [1, 2, 3]
        .into_iter()
        .flat_map(|a| [4, 5].into_iter().map(move |b| (a, b)))
        .find(|&(a, b)| !s4.contains(a) && !s4.contains(b))?;
    w.set(u3, cs([alpha, beta]));
    w.set(v3, cs([9 - beta, 6]));
    let gamma = least(&cs([1, 3]).difference(&cs([alpha])))?;
    w.set(u2, cs([gamma, 6]));
    w.set(v2, cs([4, 5]));
    Some(finish(w, perm, "L232424"))
}

/// Gadget roles, in the order `X, V1, U1, U2, V2, U3, V3, W3, W1, Y1`.
fn roles(vs: [VertexId; 10]) -> BTreeMap<VertexId, VertexId> {
    let hs = [gadget::X, gadget::V1, gadget::U1, gadget::U2, gadget::V2, gadget::U3, gadget::V3, gadget::W3, gadget::W1, gadget::Y1];
    hs.into_iter().zip(vs).collect()
}

/// Least 3-subset of `{3,4,5,6}` minus `avoid` that contains 3.
fn u1_list(avoid: &ColorSet) -> Option<ColorSet> {
    let pool = cs([3, 4, 5, 6]).difference(avoid);
    if !pool.contains(3) {
        return None;
    }
    let rest: Vec<u32> = pool.iter().filter(|&c| c != 3).take(2).collect();
    (rest.len() == 2).then(|| cs([3, rest[0], rest[1]]))
}

fn l242324(ctx: &Ctx, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let (x, v1, u1, u2, v2, u3, v3, w3, w1) = (t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7], t[8]);
    if let Some(l) = low_overlap(ctx, base, x, u1, u3, u2, v2, "L242324") {
        return Some(l);
    }
    let u0 = ctx.other_neighbor(u1, &[v1, u2, w1])?;
    let u4 = ctx.other_neighbor(u3, &[v3, u2, w3])?;
    let (probe, _) = normalized(ctx.g, base, |s| s(x) == x123())?;
    if probe.get(u1).intersection(&x123()).len() == 2 {
        let (mut w, perm) = normalized(ctx.g, base, |s| {
            s(x) == x123() && s(u1) == cs([1, 2]) && s(u3).contains(3) && s(u0) == cs([3, 4]) && !s(u3).contains(6)
        })?;
        let alpha = least(&cs([4, 5]).difference(&w.get(u3)))?;
        w.set(u1, cs([2, 6]));
        w.set(v1, cs([4, 5]));
        w.set(u2, cs([1, alpha]));
        w.set(v2, cs([9 - alpha, 6]));
        return Some(finish(w, perm, "L242324/two"));
    }
    let y1 = ctx.other_neighbor(w1, &[u1, w3])?;
    let y3 = ctx.other_neighbor(w3, &[u3, w1])?;
    let (mut w, perm) = normalized(ctx.g, base, |s| {
        s(x) == x123()
            && s(u1).intersection(&x123()) == cs([3])
            && s(u3) == cs([1, 2])
            && s(u4) == cs([3, 4])
            && s(u0).intersection(&cs([4, 5, 6])).len() <= 1
    })?;
    let lists = GadgetLists::new(u1_list(&w.get(u0))?, ColorSet::full(PALETTE).difference(&w.get(y3)), w.get(y1)).ok()?;
    w.overlay_gadget(&lists, None, &roles([x, v1, u1, u2, v2, u3, v3, w3, w1, y1]))?;
    Some(finish(w, perm, "SPE-SET-GADGET/L242324"))
}

/// One side of the configuration around the degree-5 vertex `u4`.
#[derive(Clone, Copy)]
struct Side {
    /// Outer pentagon `x v u ...` and inner pentagon `x vi ui u4 v4`.
    u: VertexId,
    v: VertexId,
    ui: VertexId,
    vi: VertexId,
    /// Face `u ui u4 w_near w_far`.
    w_near: VertexId,
    w_far: VertexId,
    /// Neighbor of `u` towards the next pentagon at `x`.
    out: VertexId,
}

impl Side {
    fn simple(&self, ctx: &Ctx) -> bool {
        ctx.deg(self.u) == 3
    }
}

fn l232523(ctx: &Ctx, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let x = t[0];
    let (u4, v4) = (t[5], t[6]);
    let mk = |u: VertexId, v: VertexId, ui: VertexId, vi: VertexId, w_near: VertexId, w_far: VertexId| -> Option<Side> {
        let out = if ctx.deg(u) == 3 { w_far } else { ctx.other_neighbor(u, &[v, ui, w_far])? };
        Some(Side { u, v, ui, vi, w_near, w_far, out })
    };
    let left = mk(t[2], t[1], t[3], t[4], t[11], t[12])?;
    let right = mk(t[9], t[10], t[7], t[8], t[13], t[14])?;
    if left.out == right.out {
        // The two outer neighbors coincide; no recipe covers this.
        return None;
    }
    // One color of `x` on `u4` is renamed to 3.
    let (probe, probe_perm) = normalized(ctx.g, base, |s| {
        let on_x = s(u4).intersection(&x123());
        s(x) == x123() && (on_x.len() >= 2 || on_x == cs([3]))
    })?;
    let unprobe = |c: SetColoring| c.permuted(&invert(&probe_perm));
    let s4 = probe.get(u4);
    if s4.len() == 2 && s4.is_subset(&x123()) {
        let (mut w, perm) = normalized(ctx.g, base, |s| {
            let (a, b) = (s(left.u), s(right.u));
            s(x) == x123()
                && s(u4) == cs([1, 2])
                && a.contains(3)
                && b.contains(3)
                && a.len() == 2
                && b.len() == 2
                && a.is_subset(&cs([3, 4, 5]))
                && b.is_subset(&cs([3, 4, 5]))
        })?;
        let alpha = least(&w.get(left.u).difference(&cs([3])))?;
        let beta = least(&w.get(right.u).difference(&cs([3])))?;
        w.set(u4, cs([2, 6]));
        w.set(v4, cs([4, 5]));
        w.set(left.ui, cs([1, 9 - alpha]));
        w.set(left.vi, cs([alpha, 6]));
        w.set(right.ui, cs([1, 9 - beta]));
        w.set(right.vi, cs([beta, 6]));
        return Some(finish(w, perm, "L232523/u4-low"));
    }
    if s4.intersection(&x123()) != cs([3]) {
        return None;
    }
    let is12 = |s: &SetColoring, v: VertexId| s.get(v) == Some(&cs([1, 2]));
    match (left.simple(ctx), right.simple(ctx)) {
        (true, true) => {
            let mut c = probe.c.clone();
            let mut perm = None;
            for side in [left, right] {
                let (nc, p) = simple_side(ctx, x, u4, side, &c)?;
                c = nc;
                perm = perm.or(p);
            }
            Some(Lifted { coloring: unprobe(c), recipe: "L232523/simple".into(), permutation: perm })
        }
        (true, false) | (false, true) => {
            let (s_side, g_side) = if right.simple(ctx) { (right, left) } else { (left, right) };
            if !is12(&probe.c, g_side.u) {
                let mut w = Work { g: ctx.g, c: probe.c.clone() };
                w.int123(x, g_side.ui, g_side.vi)?;
                let (c, _) = simple_side(ctx, x, u4, s_side, &w.c)?;
                return Some(Lifted { coloring: unprobe(c), recipe: "L232523/mixed-int123".into(), permutation: None });
            }
            let (mut w, perm) = gadget_side(ctx, base, x, u4, v4, g_side, s_side)?;
            finish_simple_after_gadget(&mut w, x, u4, s_side)?;
            Some(finish(w, perm, "SPE-SET-GADGET/L232523-mixed"))
        }
        (false, false) => {
            let (l12, r12) = (is12(&probe.c, left.u), is12(&probe.c, right.u));
            if !l12 && !r12 {
                let mut w = Work { g: ctx.g, c: probe.c.clone() };
                w.int123(x, left.ui, left.vi)?;
                w.int123(x, right.ui, right.vi)?;
                return Some(Lifted { coloring: unprobe(w.c), recipe: "L232523/int123".into(), permutation: None });
            }
            if l12 != r12 {
                let (g_side, o_side) = if r12 { (right, left) } else { (left, right) };
                let (mut w, perm) = gadget_side(ctx, base, x, u4, v4, g_side, o_side)?;
                w.int123(x, o_side.ui, o_side.vi)?;
                return Some(finish(w, perm, "SPE-SET-GADGET/L232523-one"));
            }
            double_gadget(ctx, base, x, u4, v4, left, right)
        }
    }
}

/// Extends a degree-3 side (`u` adjacent to `v`, `ui`, `out`) in the
/// `x = {1,2,3}` normalization. When `u = {1,2}` a secondary renaming fixing
/// `{1,2,3}` setwise is used; the result is mapped back to the outer
/// normalization.
fn simple_side(ctx: &Ctx, x: VertexId, u4: VertexId, side: Side, c: &SetColoring) -> Option<(SetColoring, Option<Permutation>)> {
    let mut w = Work { g: ctx.g, c: c.clone() };
    if w.get(side.u) != cs([1, 2]) {
        w.c.sets.remove(&side.ui);
        w.c.sets.remove(&side.vi);
        let pu = least_pair(&w.avail(side.ui), None, Some(&cs([1, 2])))?;
        w.set(side.ui, pu);
        let pv = least_pair(&w.avail(side.vi), None, None)?;
        w.set(side.vi, pv);
        return Some((w.c, None));
    }
    let (mut w2, p2) = normalized(ctx.g, c, |s| {
        s(x) == x123() && s(side.u) == cs([1, 2]) && s(side.out) == cs([3, 4]) && !s(u4).contains(6)
    })?;
    w2.set(side.u, cs([1, 5]));
    w2.set(side.v, cs([4, 6]));
    w2.set(side.ui, cs([2, 6]));
    w2.set(side.vi, cs([4, 5]));
    Some((w2.c.permuted(&invert(&p2)), Some(p2)))
}

/// Colors the gadget on a degree-4 side with `u = {1,2}`, in a renaming with
/// `x = {1,2,3}`, `u = {1,2}`, `out = {3,4}`.
fn gadget_side<'a>(
    ctx: &'a Ctx,
    base: &SetColoring,
    x: VertexId,
    u4: VertexId,
    v4: VertexId,
    g_side: Side,
    other: Side,
) -> Option<(Work<'a>, Permutation)> {
    let (mut w, perm) = normalized(ctx.g, base, |s| {
        s(x) == x123() && s(g_side.u) == cs([1, 2]) && s(g_side.out) == cs([3, 4]) && s(u4).contains(3)
    })?;
    let (lists, r) = side_gadget(ctx, &w, x, u4, v4, g_side, other, None)?;
    w.overlay_gadget(&lists, None, &r)?;
    Some((w, perm))
}

/// Lists and roles for the gadget on `side`. `u4` avoids the color set of
/// its neighbor on the other side's face, or takes `s_forced` plus the least
/// spare color when given.
#[allow(clippy::too_many_arguments)]
fn side_gadget(
    ctx: &Ctx,
    w: &Work,
    x: VertexId,
    u4: VertexId,
    v4: VertexId,
    side: Side,
    other: Side,
    s_forced: Option<&ColorSet>,
) -> Option<(GadgetLists, BTreeMap<VertexId, VertexId>)> {
    let y = ctx.other_neighbor(side.w_near, &[u4, side.w_far])?;
    let y_far = ctx.other_neighbor(side.w_far, &[side.u, side.w_near])?;
    let l_u4 = match s_forced {
        Some(s) => {
            let spare = least(&cs([4, 5, 6]).difference(s))?;
            let mut l = s.clone();
            l.insert(spare);
            l
        }
        None => u1_list(&w.get(other.w_near))?,
    };
    let lists = GadgetLists::new(l_u4, ColorSet::full(PALETTE).difference(&w.get(y_far)), w.get(y)).ok()?;
    let r = roles([x, v4, u4, side.ui, side.vi, side.u, side.v, side.w_far, side.w_near, y]);
    Some((lists, r))
}

/// After the gadget fixed `u4`, extends the degree-3 side.
fn finish_simple_after_gadget(w: &mut Work, x: VertexId, u4: VertexId, side: Side) -> Option<()> {
    if w.get(side.u) != cs([1, 2]) {
        return w.int123(x, side.ui, side.vi);
    }
    let alpha = least(&w.get(side.out).difference(&cs([3])))?;
    let beta = least(&cs([4, 5, 6]).difference(&cs([alpha])))?;
    let gamma = least(&cs([4, 5, 6]).difference(&w.get(u4).union(&cs([beta]))))?;
    w.set(side.u, cs([1, beta]));
    w.set(side.ui, cs([2, gamma]));
    for v in [side.v, side.vi] {
        w.c.sets.remove(&v);
        let p = least_pair(&w.avail(v), None, None)?;
        w.set(v, p);
    }
    Some(())
}

/// Both degree-4 sides have `u = {1,2}`: one set `S` for `u4` serves both
/// gadgets, each colored in its own renaming.
fn double_gadget(ctx: &Ctx, base: &SetColoring, x: VertexId, u4: VertexId, v4: VertexId, left: Side, right: Side) -> Option<Lifted> {
    let (w1, p1) = normalized(ctx.g, base, |s| {
        s(x) == x123() && s(right.u) == cs([1, 2]) && s(right.out) == cs([3, 4]) && s(u4).contains(3)
    })?;
    let y_r = ctx.other_neighbor(right.w_near, &[u4, right.w_far])?;
    let y_l = ctx.other_neighbor(left.w_near, &[u4, left.w_far])?;
    let (yr, yl) = (w1.get(y_r), w1.get(y_l));
    let s1 = [4, 5, 6].into_iter().map(|c| cs([3, c])).find(|s| !s.is_disjoint(&yr) && !s.is_disjoint(&yl))?;
    let s_orig = s1.permuted(&invert(&p1));
    let mut c = base.clone();
    for (side, other) in [(right, left), (left, right)] {
        let (mut w, perm) = normalized(ctx.g, base, |s| {
            s(x) == x123() && s(side.u) == cs([1, 2]) && s(side.out) == cs([3, 4]) && s(u4).contains(3)
        })?;
        let s_here = s_orig.permuted(&perm);
        let (lists, r) = side_gadget(ctx, &w, x, u4, v4, side, other, Some(&s_here))?;
        w.overlay_gadget(&lists, Some(&s_here), &r)?;
        let back = w.c.permuted(&invert(&perm));
        for v in r.values() {
            c.set(*v, back.get(*v)?.clone());
        }
    }
    Some(Lifted { coloring: c, recipe: "SPE-SET-GADGET/L232523-double".into(), permutation: Some(p1) })
}

/// Tie-5 face `v1 .. v5` with outside neighbors `u1 .. u4`. Which rewrite
/// was used shows in the pulled-back colors: `u2 = u3` (with `u1 u4` an
/// edge), or `u1 = u2` and `v5 = u3`, or the mirror `u4 = u3` and `v5 = u2`.
/// The face is colored in the order the case fixes.
fn tie5(ctx: &Ctx, t: &[VertexId], base: &SetColoring) -> Option<Lifted> {
    let [u1, u2, u3, u4] = tie5_outside(ctx, t)?;
    let [v1, v2, v3, v4, v5] = [t[0], t[1], t[2], t[3], t[4]];
    let mut w = Work { g: ctx.g, c: base.clone() };
    for v in [v1, v2, v3, v4] {
        w.c.sets.remove(&v);
    }
    let eq = |a: VertexId, b: VertexId| base.get(a).is_some() && base.get(a) == base.get(b);
    let (order, id) = if eq(u2, u3) {
        ([v1, v4, v2, v3], "LTIE5/u1u4")
    } else if eq(u1, u2) && eq(v5, u3) {
        ([v4, v3, v1, v2], "LTIE5/u1u2-v5u3")
    } else if eq(u4, u3) && eq(v5, u2) {
        ([v1, v2, v4, v3], "LTIE5/u3u4-v5u2")
    } else {
        return None;
    };
    w.pairs_in_order(&order)?;
    Some(Lifted { coloring: w.c, recipe: id.into(), permutation: None })
}
