use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::rules::{apply, candidates, Ctx, Rewrite, Rule};
use super::*;
use crate::generators::{cycle, pentagon_patch, random_trifree_planar, trifree_planar_corpus, wheel_subdivided};
use crate::set_coloring::subsets_of_size;

fn no_threshold() -> EngineOptions {
    EngineOptions { base_threshold: 0, ..EngineOptions::default() }
}

/// Graph from a straight-line drawing with the face through `outer` as the
/// outer face.
fn drawn(coords: &[(VertexId, (f64, f64))], edges: &[(VertexId, VertexId)], outer: (VertexId, VertexId)) -> PlaneGraph {
    let coords: BTreeMap<VertexId, (f64, f64)> = coords.iter().copied().collect();
    let mut g = PlaneGraph::from_straight_line(&coords, edges).unwrap();
    g.set_outer_dart(Some(outer)).unwrap();
    g
}

/// Square `0 1 2 3` with `4` in the middle joined to `0` and `2`.
fn square_with_center() -> PlaneGraph {
    drawn(
        &[(0, (0.0, 0.0)), (1, (2.0, 0.0)), (2, (2.0, 2.0)), (3, (0.0, 2.0)), (4, (1.0, 1.0))],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)],
        (0, 1),
    )
}

fn cube() -> PlaneGraph {
    drawn(
        &[
            (0, (0.0, 0.0)),
            (1, (4.0, 0.0)),
            (2, (4.0, 4.0)),
            (3, (0.0, 4.0)),
            (4, (1.0, 1.0)),
            (5, (3.0, 1.0)),
            (6, (3.0, 3.0)),
            (7, (1.0, 3.0)),
        ],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
        (0, 1),
    )
}

fn coloring(entries: &[(VertexId, &[u32])]) -> SetColoring {
    let mut c = SetColoring::new(6);
    for (v, s) in entries {
        c.set(*v, s.iter().copied().collect::<ColorSet>());
    }
    c
}

/// Every X-enhanced coloring of the cycle `walk`, with `x` (if any) fixed
/// to `{1,2,3}` and the remaining colors taken up to renaming.
fn cycle_precolorings(walk: &[VertexId], x: Option<VertexId>) -> Vec<SetColoring> {
    let mut out = Vec::new();
    let sets = |k| subsets_of_size(0b111111, k).into_iter().map(ColorSet::from_mask).collect::<Vec<_>>();
    fn go(walk: &[VertexId], x: Option<VertexId>, i: usize, acc: &mut Vec<ColorSet>, out: &mut Vec<SetColoring>, s2: &[ColorSet]) {
        if i == walk.len() {
            if acc[0].is_disjoint(&acc[walk.len() - 1]) {
                let mut c = SetColoring::new(6);
                for (v, s) in walk.iter().zip(acc.iter()) {
                    c.set(*v, s.clone());
                }
                out.push(c);
            }
            return;
        }
        let options: Vec<ColorSet> = if Some(walk[i]) == x { vec![ColorSet::from([1, 2, 3])] } else { s2.to_vec() };
        for s in options {
            if i > 0 && !s.is_disjoint(&acc[i - 1]) {
                continue;
            }
            acc.push(s);
            go(walk, x, i + 1, acc, out, s2);
            acc.pop();
        }
    }
    go(walk, x, 0, &mut Vec::new(), &mut out, &sets(2));
    out
}

#[test]
fn deg2_vertex_is_removed_and_gets_free_colors() {
    let g = square_with_center();
    let pre = coloring(&[(0, &[1, 2]), (1, &[3, 4]), (2, &[1, 2]), (3, &[3, 4])]);
    let inst = Instance::new(g, None, pre).unwrap();
    let ext = extend_traced(&inst, &no_threshold()).unwrap();
    let TraceNode::Step { step, .. } = &ext.trace else { panic!("expected a step, got {:?}", ext.trace) };
    assert_eq!(step.rule, Rule::Deg2Remove);
    assert_eq!(step.matched, vec![4]);
    assert_eq!(step.lift, LiftMethod::Recipe);
    assert_eq!(ext.coloring.get(4), Some(&ColorSet::from([3, 4])));
}

#[test]
fn four_face_identifies_an_inner_vertex() {
    let g = square_with_center();
    let pre = coloring(&[(0, &[1, 2, 3]), (1, &[4, 5]), (2, &[1, 2]), (3, &[4, 5])]);
    let inst = Instance::new(g, Some(0), pre).unwrap();
    let ctx = Ctx::new(&inst);
    let cands = candidates(&ctx, Rule::FourCycleIdentify);
    assert!(!cands.is_empty());
    assert!(cands.iter().all(|t| t[2] == 4));
    let Some(Rewrite::Single(a)) = apply(&inst, Rule::FourCycleIdentify, &cands[0]).unwrap() else { panic!() };
    assert_eq!(a.sub.g.num_vertices(), 4);
    assert_eq!(a.merged, vec![(4, cands[0][0])]);
}

#[test]
fn cube_reduces_by_four_faces() {
    let g = cube();
    let walk = g.outer_walk().unwrap();
    for pre in cycle_precolorings(&walk, Some(0)) {
        let inst = Instance::new(g.clone(), Some(0), pre).unwrap();
        let ext = extend_traced(&inst, &no_threshold()).unwrap();
        assert_eq!(ext.trace.steps()[0].rule, Rule::FourCycleIdentify);
        assert_eq!(inst.verify(&ext.coloring), Ok(()));
    }
}

#[test]
fn six_face_gets_a_chord() {
    let g = drawn(
        &[(0, (0.0, 0.0)), (1, (4.0, 0.0)), (2, (4.0, 4.0)), (3, (0.0, 4.0)), (4, (1.0, 1.5)), (5, (2.0, 2.0)), (6, (3.0, 2.5))],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 2)],
        (0, 1),
    );
    let pre = coloring(&[(0, &[1, 2, 3]), (1, &[4, 5]), (2, &[1, 2]), (3, &[4, 5])]);
    let inst = Instance::new(g, Some(0), pre).unwrap();
    let ctx = Ctx::new(&inst);
    let cands = candidates(&ctx, Rule::SixFaceChord);
    assert!(!cands.is_empty());
    let Some(Rewrite::Single(a)) = apply(&inst, Rule::SixFaceChord, &cands[0]).unwrap() else { panic!() };
    assert_eq!(a.sub.g.num_vertices(), 7);
    assert_eq!(a.sub.g.num_edges(), 9);
    assert!(a.sub.g.has_edge(cands[0][0], cands[0][1]));
    let ext = extend_traced(&inst, &no_threshold()).unwrap();
    assert_eq!(inst.verify(&ext.coloring), Ok(()));
}

#[test]
fn separating_cycle_is_split() {
    // A 5-cycle 4..9 inside the outer square, with a pendant-free interior.
    let g = crate::generators::fullerene_like(1);
    let walk = g.outer_walk().unwrap();
    let pre = cycle_precolorings(&walk, Some(walk[0])).remove(0);
    let inst = Instance::new(g, Some(walk[0]), pre).unwrap();
    let ctx = Ctx::new(&inst);
    let cands = candidates(&ctx, Rule::NonfacialCycleSplit);
    assert!(cands.iter().all(|k| k.len() == 4 || k.len() == 5));
    let ext = extend_traced(&inst, &no_threshold()).unwrap();
    assert_eq!(inst.verify(&ext.coloring), Ok(()));
}

#[test]
fn instance_validation() {
    let g = square_with_center();
    let good = coloring(&[(0, &[1, 2, 3]), (1, &[4, 5]), (2, &[1, 2]), (3, &[4, 5])]);
    assert!(Instance::new(g.clone(), Some(0), good.clone()).is_ok());
    assert!(matches!(Instance::new(g.clone(), Some(4), good.clone()), Err(InstanceError::EnhancedOffCycle(4))));
    let clash = coloring(&[(0, &[1, 2, 3]), (1, &[3, 5]), (2, &[1, 2]), (3, &[4, 5])]);
    assert!(matches!(Instance::new(g.clone(), Some(0), clash), Err(InstanceError::Precoloring(_))));
    let partial = coloring(&[(0, &[1, 2, 3])]);
    assert!(matches!(Instance::new(g.clone(), Some(0), partial), Err(InstanceError::PrecoloringDomain)));
    let mut unmarked = g.clone();
    unmarked.set_outer_dart(None).unwrap();
    assert!(matches!(Instance::new(unmarked, Some(0), good.clone()), Err(InstanceError::NoOuterFace)));
    let inst = Instance::new(g, Some(0), good).unwrap();
    assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
}

#[test]
fn enhance_rejects_triangles() {
    let tri = cycle(3);
    assert!(matches!(enhance(&tri, 0), Err(EngineError::Instance(InstanceError::NotTriangleFree))));
    assert!(matches!(enhance(&cycle(5), 9), Err(EngineError::Instance(InstanceError::NoSuchVertex(9)))));
}

#[test]
fn enhance_small_cases() {
    let c = enhance(&cycle(5), 0).unwrap();
    assert_eq!(c.get(0).unwrap().len(), 3);
    assert_eq!(verify(&cycle(5), &c, &ColoringSpec::enhanced([0])), Ok(()));
    let w = wheel_subdivided(5);
    let c = enhance(&w, 0).unwrap();
    assert_eq!(c.get(0).unwrap().len(), 3);
    assert_eq!(verify(&w, &c, &ColoringSpec::enhanced([0])), Ok(()));
}

#[test]
fn extend_agrees_with_solver_on_small_graphs() {
    for g in trifree_planar_corpus(7).into_iter().chain((0..10).map(|s| random_trifree_planar(10, s))) {
        for x in g.vertex_ids() {
            let inst = enhancement_instance(&g, x).unwrap();
            let direct = solve(&inst.g, &inst.spec(), &SolveOptions::default()).unwrap();
            let by_rules = extend_traced(&inst, &no_threshold());
            assert_eq!(by_rules.is_ok(), direct.is_sat(), "{:?} at {x}", g.rotations());
            let ext = by_rules.unwrap();
            assert_eq!(inst.verify(&ext.coloring), Ok(()));
        }
    }
}

#[test]
fn replay_reproduces_the_coloring() {
    for seed in 0..6 {
        let g = random_trifree_planar(16, seed);
        let x = g.vertex_ids()[0];
        let inst = enhancement_instance(&g, x).unwrap();
        let ext = extend_traced(&inst, &no_threshold()).unwrap();
        let json = ext.trace.to_json();
        let back: TraceNode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ext.trace);
        assert_eq!(replay(&inst, &back, &no_threshold()).unwrap(), ext.coloring);
    }
}

#[test]
fn replay_rejects_a_foreign_trace() {
    let g = random_trifree_planar(14, 1);
    let inst = enhancement_instance(&g, 0).unwrap();
    let ext = extend_traced(&inst, &no_threshold()).unwrap();
    let other = enhancement_instance(&random_trifree_planar(14, 2), 0).unwrap();
    assert!(replay(&other, &ext.trace, &no_threshold()).is_err());
}

#[test]
fn patch_precolorings_all_extend() {
    let g = pentagon_patch();
    let walk = g.outer_walk().unwrap();
    for pre in cycle_precolorings(&walk, Some(walk[0])).into_iter().take(12) {
        let inst = Instance::new(g.clone(), Some(walk[0]), pre).unwrap();
        let c = extend_traced(&inst, &no_threshold()).unwrap().coloring;
        assert_eq!(inst.verify(&c), Ok(()));
    }
}

/// How often each rule and lift method is used over a corpus, so that the
/// recipes are known to run on real inputs.
#[test]
fn recipes_fire_on_random_graphs() {
    let mut rules: BTreeMap<Rule, usize> = BTreeMap::new();
    let mut recipes: BTreeSet<String> = BTreeSet::new();
    for seed in 0..40 {
        let g = random_trifree_planar(14, seed);
        for x in g.vertex_ids().into_iter().take(3) {
            let inst = enhancement_instance(&g, x).unwrap();
            let ext = extend_traced(&inst, &no_threshold()).unwrap();
            for s in ext.trace.steps() {
                *rules.entry(s.rule).or_default() += 1;
                if s.lift == LiftMethod::Recipe {
                    recipes.insert(s.recipe.clone().unwrap());
                }
            }
        }
    }
    eprintln!("rules: {rules:?}\nrecipes: {recipes:?}");
    assert!(rules.contains_key(&Rule::Deg2Remove));
    assert!(recipes.iter().any(|r| r.starts_with("DEG2")));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn enhance_cardinalities(seed in 0u64..10_000, n in 3usize..15, pick in 0usize..100) {
        let g = random_trifree_planar(n, seed);
        let ids = g.vertex_ids();
        let x = ids[pick % ids.len()];
        let c = enhance(&g, x).unwrap();
        prop_assert_eq!(c.get(x).unwrap().len(), 3);
        prop_assert!(ids.iter().all(|v| *v == x || c.get(*v).unwrap().len() >= 2));
        prop_assert!(c.sets.values().all(|s| s.max_color().unwrap_or(0) <= 6));
    }

    #[test]
    fn normalize_then_invert_is_identity(seed in 0u64..10_000, n in 4usize..12, pick in 0usize..100) {
        let g = random_trifree_planar(n, seed);
        let ids = g.vertex_ids();
        let x = ids[pick % ids.len()];
        let c = enhance(&g, x).unwrap();
        let (normal, perm) = color_permutation_normalize(&c, &[x, ids[0]]).unwrap();
        prop_assert_eq!(normal.get(x).unwrap(), &ColorSet::from([1, 2, 3]));
        prop_assert_eq!(normal.permuted(&normalize::invert(&perm)), c);
    }
}

/// Applies `rule` at `t` regardless of priority, recursing normally below.
fn forced_step(inst: &Instance, rule: Rule, t: &[VertexId]) -> Option<Result<ReductionStep, EngineError>> {
    let rewrite = apply(inst, rule, t).ok().flatten()?;
    let opts = EngineOptions::default();
    let engine = Engine { opts: &opts, replaying: false };
    let ctx = Ctx::new(inst);
    Some(engine.step(inst, &ctx, rule, t.to_vec(), rewrite, &mut Vec::new(), None).map(|(c, node)| {
        assert_eq!(inst.verify(&c), Ok(()));
        match node {
            TraceNode::Step { step, .. } => step,
            _ => unreachable!(),
        }
    }))
}

/// Fan of `k` pentagons at `x = 0` on the outer pentagon `0..5`: the
/// inner neighbors `v_i = 5 + i` of `x`, the path `u_i = 5 + k + i`, and the
/// faces `x v_i u_i u_{i+1} v_{i+1}`. `extra` vertices (ids from `5 + 2k`,
/// at polar positions around `x`) and `edges` complete the graph.
fn fan(k: usize, extra: &[(f64, f64)], edges: &[(VertexId, VertexId)]) -> PlaneGraph {
    let polar = |r: f64, deg: f64| (r * deg.to_radians().cos(), r * deg.to_radians().sin());
    let mut coords = vec![(0, (0.0, 0.0)), (1, (20.0, 0.0)), (2, (20.0, -20.0)), (3, (-20.0, -20.0)), (4, (-20.0, 0.0))];
    let mut all = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    for i in 0..k {
        let angle = -30.0 - 120.0 * i as f64 / (k - 1) as f64;
        let (v, u) = ((5 + i) as VertexId, (5 + k + i) as VertexId);
        coords.push((v, polar(3.0, angle)));
        coords.push((u, polar(6.0, angle)));
        all.extend([(0, v), (v, u)]);
        if i + 1 < k {
            all.push((u, u + 1));
        }
    }
    for (j, &(r, a)) in extra.iter().enumerate() {
        coords.push(((5 + 2 * k + j) as VertexId, polar(r, a)));
    }
    all.extend_from_slice(edges);
    drawn(&coords, &all, (1, 0))
}

/// `x v1 u1 u2 v2`, `x v2 u2 u3 v3` with `u1, u2, u3 = 8, 9, 10` of degree
/// 3; `u1` and `u3` reach the outer cycle through `11` and `12`. With
/// `deg4`, `u3` gets a fourth neighbor `13` adjacent to `11`.
fn fan_232325(deg4: bool) -> PlaneGraph {
    let mut extra = vec![(9.0, -20.0), (9.0, -160.0)];
    let mut edges = vec![(8, 11), (11, 1), (10, 12), (12, 4)];
    if deg4 {
        extra.push((9.0, -110.0));
        edges.extend([(10, 13), (13, 11)]);
    }
    fan(3, &extra, &edges)
}

/// As [`fan_232325`] with `u2 = 9` of degree 4 through `13`, which runs to
/// the outer cycle.
fn fan_232424() -> PlaneGraph {
    fan(3, &[(9.0, -20.0), (9.0, -160.0), (9.0, -90.0)], &[(8, 11), (11, 1), (10, 12), (12, 4), (9, 13), (13, 2)])
}

/// `u1 = 8`, `u3 = 10` of degree 4 and the face `u1 u2 u3 w3 w1` with
/// `w1 = 13`, `w3 = 14` of degree 3, their third neighbors `y1 = 15` and
/// `y3 = 16` running to the outer cycle.
fn fan_242324() -> PlaneGraph {
    fan(
        3,
        &[(9.0, -20.0), (9.0, -160.0), (9.0, -70.0), (9.0, -110.0), (12.0, -70.0), (12.0, -110.0)],
        &[(8, 11), (11, 1), (10, 12), (12, 4), (8, 13), (10, 14), (13, 14), (13, 15), (14, 16), (15, 2), (16, 3)],
    )
}

/// Four pentagons at `x` with `u2 .. u6 = 10 .. 14`, `deg(u3) = deg(u5) = 3`
/// and `deg(u4) = 5`, next to the faces `u2 u3 u4 w4 w2` and
/// `u6 u5 u4 w4' w6` (`w2, w4, w4', w6 = 15 .. 18`). A side with `deep` set
/// has `deg(u_i) = 4` and degree-3 `w`s; otherwise `deg(u_i) = 3`.
fn fan_232523(deep_left: bool, deep_right: bool) -> PlaneGraph {
    let mut extra = vec![(9.0, -25.0), (9.0, -80.0), (9.0, -100.0), (9.0, -155.0)];
    let mut edges = vec![(10, 15), (15, 16), (16, 12), (12, 17), (17, 18), (18, 14)];
    if !deep_left {
        edges.push((15, 1));
    }
    if !deep_right {
        edges.push((18, 4));
    }
    let mut next = 19;
    for (deep, u, w_far, w_near, u_angle, far_angle, near_angle, c) in
        [(deep_left, 10, 15, 16, -12.0, -40.0, -80.0, 2), (deep_right, 14, 18, 17, -168.0, -140.0, -100.0, 3)]
    {
        if !deep {
            continue;
        }
        // A further neighbor of `u`, and outward neighbors for both `w`s.
        extra.extend([(9.0, u_angle), (12.0, far_angle), (12.0, near_angle)]);
        let c_near = if c == 2 { 1 } else { 4 };
        edges.extend([(u, next), (next, c_near), (w_far, next + 1), (next + 1, c), (w_near, next + 2), (next + 2, c)]);
        next += 3;
    }
    fan(5, &extra, &edges)
}

/// Counts how each candidate of `rule` lifts over every precoloring of the
/// outer cycle with `x = 0`, checking every result.
fn forced_lifts(g: &PlaneGraph, rule: Rule) -> BTreeMap<String, usize> {
    let walk = g.outer_walk().unwrap();
    let mut seen = BTreeMap::new();
    for pre in cycle_precolorings(&walk, Some(0)) {
        let inst = Instance::new(g.clone(), Some(0), pre).unwrap();
        let ctx = Ctx::new(&inst);
        let cands = candidates(&ctx, rule);
        assert!(!cands.is_empty(), "{rule} does not match");
        for t in cands {
            let step = forced_step(&inst, rule, &t).expect("rewrite applies").unwrap();
            let key = step.recipe.clone().unwrap_or_else(|| format!("{:?}", step.lift));
            *seen.entry(key).or_default() += 1;
        }
    }
    seen
}

#[derive(Debug, Default)]
struct Coverage {
    /// Verified lifts by recipe id.
    ok: BTreeMap<String, usize>,
    /// The recipe declined the coloring.
    declined: usize,
    /// The recipe produced a coloring that does not verify.
    wrong: Vec<String>,
}

/// Runs the recipe of `rule` on many colorings of the reduced instance:
/// random 2-sets are pinned on about half the vertices next to the rewritten
/// region and the reduced instance is solved under those pins.
fn recipe_coverage(g: &PlaneGraph, rule: Rule, samples: usize, seed: u64) -> Coverage {
    use rand::seq::IndexedRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<ColorSet> = subsets_of_size(0b111111, 2).into_iter().map(ColorSet::from_mask).collect();
    let walk = g.outer_walk().unwrap();
    let precolorings = cycle_precolorings(&walk, Some(0));
    let mut cov = Coverage::default();
    for _ in 0..samples {
        let inst = Instance::new(g.clone(), Some(0), precolorings.choose(&mut rng).unwrap().clone()).unwrap();
        let ctx = Ctx::new(&inst);
        let t = candidates(&ctx, rule).into_iter().next().expect("rule matches");
        let Some(Rewrite::Single(applied)) = apply(&inst, rule, &t).unwrap() else { panic!("{rule} does not rewrite") };
        let mut region: BTreeSet<VertexId> = applied.deleted.clone();
        region.extend(applied.merged.iter().map(|(r, _)| *r));
        let pins: BTreeSet<VertexId> = region
            .iter()
            .flat_map(|v| inst.g.neighbors(*v).iter().copied())
            .chain(applied.merged.iter().map(|(_, k)| *k))
            .filter(|v| !region.contains(v) && !ctx.in_c(*v))
            .collect();
        let mut spec = applied.sub.spec();
        for p in &pins {
            if rng.random_bool(0.5) {
                spec = spec.with_fixed(*p, pairs.choose(&mut rng).unwrap().clone());
            }
        }
        let SolveOutcome::Sat(child) = solve(&applied.sub.g, &spec, &SolveOptions::default()).unwrap() else { continue };
        let base = pullback(&inst, &applied, &child);
        match super::lift::recipe(&ctx, rule, &t, &base) {
            None => cov.declined += 1,
            Some(l) => match inst.verify(&l.coloring) {
                Ok(()) => *cov.ok.entry(l.recipe).or_default() += 1,
                Err(v) => cov.wrong.push(format!("{}: {v:?}", l.recipe)),
            },
        }
    }
    cov
}

#[test]
fn configuration_rules_lift_by_recipe_in_the_engine() {
    for (g, rule, recipe) in [
        (fan_232325(false), Rule::L232325, "L232325/"),
        (fan_232424(), Rule::L232424, "L232424"),
        (fan_242324(), Rule::L242324, "L242324"),
        (fan_232523(true, true), Rule::L232523, "L232523"),
    ] {
        let lifts = forced_lifts(&g, rule);
        assert!(lifts.keys().all(|k| k.contains(recipe)), "{rule}: {lifts:?}");
    }
}

/// Every coloring of the reduced instance that a configuration recipe is
/// handed lifts to a verified coloring, and each case of the recipe occurs.
#[test]
fn configuration_recipes_cover_their_cases() {
    let cases: &[(PlaneGraph, Rule, &[&str])] = &[
        (fan_232325(false), Rule::L232325, &["L232325/int123", "L232325/deg3"]),
        (fan_232325(true), Rule::L232325, &["L232325/int123", "L232325/deg4-two", "L232325/deg4-one"]),
        (fan_232424(), Rule::L232424, &["L232424"]),
        (fan_242324(), Rule::L242324, &["L242324/int123", "L242324/two", "SPE-SET-GADGET/L242324"]),
        (fan_232523(false, false), Rule::L232523, &["L232523/u4-low", "L232523/simple"]),
        (fan_232523(true, false), Rule::L232523, &["L232523/mixed-int123", "SPE-SET-GADGET/L232523-mixed"]),
        (
            fan_232523(true, true),
            Rule::L232523,
            &["L232523/int123", "SPE-SET-GADGET/L232523-one", "SPE-SET-GADGET/L232523-double"],
        ),
        (crate::generators::fullerene_like(2), Rule::LTie5, &["LTIE5/u1u4"]),
    ];
    for (g, rule, expected) in cases {
        let cov = recipe_coverage(g, *rule, 1500, 7);
        assert!(cov.wrong.is_empty(), "{rule}: {:?}", &cov.wrong[..cov.wrong.len().min(3)]);
        assert_eq!(cov.declined, 0, "{rule}: {:?}", cov.ok);
        for id in *expected {
            assert!(cov.ok.contains_key(*id), "{rule}: {id} never used in {:?}", cov.ok);
        }
    }
}
