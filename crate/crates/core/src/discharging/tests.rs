use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::generators::{cycle, embed_by_rotations, dodecahedron, fullerene_like, path, pentagon_patch, random_trifree_planar};
use crate::plane_graph::{Graph, PlaneGraph, SimpleGraph, VertexId};
use crate::reduction::Instance;
use crate::set_coloring::{solve, ColoringSpec, SetColoring, SolveOptions, SolveOutcome};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn drawn(coords: &[(VertexId, (f64, f64))], edges: &[(VertexId, VertexId)], outer: (VertexId, VertexId)) -> PlaneGraph {
    let coords: BTreeMap<VertexId, (f64, f64)> = coords.iter().copied().collect();
    let mut g = PlaneGraph::from_straight_line(&coords, edges).unwrap();
    g.set_outer_dart(Some(outer)).unwrap();
    g
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    (r * deg.to_radians().cos(), r * deg.to_radians().sin())
}

/// Outer 5-cycle `0 1 2 3 4` with `x = 0` on top, `bottom` the height of
/// the lower corners.
fn frame(bottom: f64) -> (Vec<(VertexId, (f64, f64))>, Vec<(VertexId, VertexId)>) {
    (
        vec![(0, (0.0, 0.0)), (1, (20.0, 0.0)), (2, (20.0, bottom)), (3, (-20.0, bottom)), (4, (-20.0, 0.0))],
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
    )
}

/// `x v1 u1 u2 v2 = 0 5 6 7 8` with `u1, u2` of degree 3 joined to the
/// outer vertices `2` and `3`.
fn a1_fixture() -> PlaneGraph {
    let (mut c, mut e) = frame(-20.0);
    c.extend([(5, polar(3.0, -60.0)), (6, polar(6.0, -60.0)), (7, polar(6.0, -120.0)), (8, polar(3.0, -120.0))]);
    e.extend([(0, 5), (5, 6), (6, 7), (7, 8), (8, 0), (6, 2), (7, 3)]);
    drawn(&c, &e, (1, 0))
}

/// Three pentagons at `x` with `v1..v4 = 5..8`, `u1..u4 = 9..12`, the face
/// `g = u1 u2 u3 w3 w1` (`w1 = 13`, `w3 = 14`) and the face
/// `h = w3 u3 u4 w4 y3` (`w4 = 15`, `y3 = 16`). Degrees: `u1, u3, u4, w3`
/// have 4, `u2, w1` have 3.
fn cd_fixture() -> (Vec<(VertexId, (f64, f64))>, Vec<(VertexId, VertexId)>) {
    let (mut c, mut e) = frame(-20.0);
    for (i, a) in [-30.0, -70.0, -110.0, -150.0].into_iter().enumerate() {
        let i = i as VertexId;
        c.push((5 + i, polar(3.0, a)));
        c.push((9 + i, polar(6.0, a)));
        e.extend([(0, 5 + i), (5 + i, 9 + i)]);
    }
    c.extend([(13, polar(12.0, -50.0)), (14, polar(12.0, -100.0)), (15, polar(12.0, -160.0)), (16, polar(16.0, -135.0))]);
    e.extend([
        (9, 10),
        (10, 11),
        (11, 12),
        (9, 1),
        (9, 13),
        (13, 2),
        (13, 14),
        (14, 11),
        (14, 16),
        (16, 15),
        (15, 12),
        (15, 3),
        (14, 3),
        (12, 4),
    ]);
    (c, e)
}

/// An outer 5-cycle around the face `Q = 5 6 7 8 9`, where `v5 = 5` is
/// adjacent to `x`, `6` has degree 4 and the rest degree 3.
fn special_fixture() -> PlaneGraph {
    let (mut c, mut e) = frame(-30.0);
    c.extend([(5, (0.0, -5.0)), (6, (5.0, -9.0)), (7, (3.0, -15.0)), (8, (-3.0, -15.0)), (9, (-5.0, -9.0)), (10, (15.0, -13.0))]);
    e.extend([(0, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5), (6, 1), (6, 10), (10, 2), (7, 2), (8, 3), (9, 4)]);
    drawn(&c, &e, (1, 0))
}

fn face_with(cls: &FaceClassification, vs: &[VertexId]) -> usize {
    let set: BTreeSet<VertexId> = vs.iter().copied().collect();
    cls.faces.iter().find(|f| f.id != cls.outer && f.boundary.iter().copied().collect::<BTreeSet<_>>() == set).unwrap().id
}

fn transfers_of(ledger: &ChargeLedger, rule: DischargeRule) -> Vec<(Element, Element)> {
    ledger.log.iter().filter(|t| t.rule == rule).map(|t| (t.from, t.to)).collect()
}

/// The outer cycle precolored by the solver, so the graph can be audited.
fn instance(g: PlaneGraph, x: VertexId) -> Instance {
    let cycle: BTreeSet<VertexId> = g.outer_walk().unwrap().into_iter().collect();
    let SolveOutcome::Sat(c) = solve(&g.induced(&cycle), &ColoringSpec::enhanced([x]), &SolveOptions::default()).unwrap()
    else {
        panic!("cycle is colorable")
    };
    let mut pre = SetColoring::new(6);
    for v in &cycle {
        pre.set(*v, c.get(*v).unwrap().clone());
    }
    Instance::new(g, Some(x), pre).unwrap()
}

#[test]
fn initial_charges_sum_to_minus_eight() {
    let c5 = initial_charges(&cycle(5));
    assert_eq!(c5.charge.len(), 7);
    assert!(c5.charge.iter().all(|(e, ch)| match e {
        Element::Vertex(_) => *ch == r(-2, 1),
        Element::Face(_) => *ch == r(1, 1),
    }));
    assert_eq!(c5.total(), r(-8, 1));

    let d = initial_charges(&dodecahedron());
    assert_eq!(d.charge.values().filter(|c| **c == r(-1, 1)).count(), 20);
    assert_eq!(d.charge.values().filter(|c| **c == r(1, 1)).count(), 12);
    assert_eq!(d.total(), r(-8, 1));

    let k2 = initial_charges(&path(2));
    assert_eq!(k2.charge.values().cloned().collect::<Vec<_>>(), vec![r(-3, 1), r(-3, 1), r(-2, 1)]);
    assert!(!k2.disconnected());

    let single = initial_charges(&path(1));
    assert_eq!(single.total(), r(-8, 1));
}

#[test]
fn disconnected_graphs_report_each_component() {
    let mut rot = cycle(5).rotations().clone();
    for (v, nbrs) in cycle(4).rotations() {
        rot.insert(v + 10, nbrs.iter().map(|w| w + 10).collect());
    }
    rot.insert(20, Vec::new());
    let g = PlaneGraph::from_rotations(rot).unwrap();
    let ledger = initial_charges(&g);
    assert!(ledger.disconnected());
    assert_eq!(ledger.components.iter().map(|c| c.root).collect::<Vec<_>>(), vec![0, 10, 20]);
    assert!(ledger.components.iter().all(|c| c.total == r(-8, 1)));
    assert_eq!(ledger.total(), r(-24, 1));
}

#[test]
fn type_a1_face_and_its_connected_vertices() {
    let g = a1_fixture();
    let cls = classify(&g, 0, Hypotheses::Relaxed).unwrap();
    let f = face_with(&cls, &[0, 5, 6, 7, 8]);
    assert_eq!(cls.face(f).labels, BTreeSet::from([FaceLabel::A1]));
    let to_f: BTreeSet<Element> =
        cls.connected(Relation::VertexToA).filter(|c| c.to == Element::Face(f)).map(|c| c.from).collect();
    assert_eq!(to_f, BTreeSet::from([Element::Vertex(2), Element::Vertex(3)]));

    let ledger = apply_rules(&g, &cls).unwrap();
    assert_eq!(ledger.get(Element::Vertex(5)), r(0, 1));
    assert_eq!(ledger.get(Element::Vertex(0)), r(-3, 1));
    assert_eq!(ledger.get(Element::Face(f)), r(0, 1));
    assert_eq!(ledger.get(Element::Vertex(2)), r(-4, 3));
    assert_eq!(ledger.total(), r(-8, 1));
}

#[test]
fn type_a2_faces_with_c_and_d_neighbors() {
    let (c, e) = cd_fixture();
    let g = drawn(&c, &e, (1, 0));
    let cls = classify(&g, 0, Hypotheses::Relaxed).unwrap();
    let f1 = face_with(&cls, &[0, 5, 9, 10, 6]);
    let f2 = face_with(&cls, &[0, 6, 10, 11, 7]);
    let gf = face_with(&cls, &[9, 10, 11, 14, 13]);
    let h = face_with(&cls, &[14, 11, 12, 15, 16]);
    assert!(cls.face(f1).has(FaceLabel::A2) && cls.face(f2).has(FaceLabel::A2));
    assert_eq!(cls.face(gf).labels, BTreeSet::from([FaceLabel::C]));
    assert_eq!(cls.face(h).labels, BTreeSet::from([FaceLabel::D]));
    assert!(!cls.face(f1).tight && cls.face(f2).tight);
    assert!(cls.anomalies.is_empty(), "{:?}", cls.anomalies);

    let ledger = apply_rules(&g, &cls).unwrap();
    assert_eq!(transfers_of(&ledger, DischargeRule::R7), vec![(Element::Face(gf), Element::Face(f1))]);
    assert_eq!(transfers_of(&ledger, DischargeRule::R8), vec![(Element::Face(h), Element::Face(f2))]);
    assert_eq!(ledger.total(), r(-8, 1));
}

#[test]
fn type_b_face_feeds_a_tight_neighbor() {
    let (mut c, mut e) = cd_fixture();
    c.push((17, (-6.0, -1.5)));
    e.push((8, 17));
    let g = drawn(&c, &e, (1, 0));
    let cls = classify(&g, 0, Hypotheses::Relaxed).unwrap();
    let f2 = face_with(&cls, &[0, 6, 10, 11, 7]);
    let f3 = face_with(&cls, &[0, 7, 11, 12, 8]);
    assert_eq!(cls.face(f3).labels, BTreeSet::from([FaceLabel::B]));
    assert!(cls.faces.iter().all(|f| !f.has(FaceLabel::D)));
    let ledger = apply_rules(&g, &cls).unwrap();
    assert_eq!(transfers_of(&ledger, DischargeRule::R6), vec![(Element::Face(f3), Element::Face(f2))]);
}

#[test]
fn type_f_face_feeds_its_five_vertex() {
    let (mut c, mut e) = cd_fixture();
    c.push((17, (14.0, -5.0)));
    e.extend([(9, 17), (17, 2)]);
    let g = drawn(&c, &e, (1, 0));
    let cls = classify(&g, 0, Hypotheses::Relaxed).unwrap();
    let f1 = face_with(&cls, &[0, 5, 9, 10, 6]);
    let f2 = face_with(&cls, &[0, 6, 10, 11, 7]);
    let gf = face_with(&cls, &[9, 10, 11, 14, 13]);
    assert_eq!(cls.face(f1).labels, BTreeSet::from([FaceLabel::A3]));
    assert_eq!(cls.face(gf).labels, BTreeSet::from([FaceLabel::F]));
    let ledger = apply_rules(&g, &cls).unwrap();
    let v = Element::Vertex(9);
    assert_eq!(transfers_of(&ledger, DischargeRule::R4), vec![(v, Element::Face(f1))]);
    assert_eq!(transfers_of(&ledger, DischargeRule::R5), vec![(v, Element::Face(f2))]);
    assert_eq!(transfers_of(&ledger, DischargeRule::R9), vec![(Element::Face(gf), v)]);
    assert_eq!(ledger.get(v), r(2, 3));
}

#[test]
fn special_face_tied_to_x() {
    let g = special_fixture();
    let cls = classify(&g, 0, Hypotheses::Relaxed).unwrap();
    let q = face_with(&cls, &[5, 6, 7, 8, 9]);
    let gf = face_with(&cls, &[0, 5, 6, 1]);
    assert_eq!(cls.face(q).labels, BTreeSet::from([FaceLabel::Special]));
    assert_eq!(cls.face(q).tied, BTreeSet::from([0, 2, 3, 4]));
    let ledger = apply_rules(&g, &cls).unwrap();
    assert_eq!(transfers_of(&ledger, DischargeRule::R10), vec![(Element::Face(gf), Element::Face(q))]);
    assert_eq!(transfers_of(&ledger, DischargeRule::R11).len(), 3);
    assert_eq!(ledger.get(Element::Face(q)), r(1, 1));
}

#[test]
fn strict_classification_needs_pentagons() {
    let err = classify(&pentagon_patch(), 0, Hypotheses::Strict).unwrap_err();
    assert!(matches!(err, DischargeError::NotPentagonal { .. }));
    assert!(classify(&pentagon_patch(), 0, Hypotheses::Relaxed).is_ok());
    assert_eq!(classify(&pentagon_patch(), 7, Hypotheses::Relaxed).unwrap_err(), DischargeError::OffOuterFace(7));
}

#[test]
fn audit_of_the_dodecahedron_explains_its_violations() {
    let inst = instance(dodecahedron(), 0);
    let report = audit(&inst).unwrap();
    assert!(report.conserved);
    assert_eq!(report.final_total, "-8");
    assert_eq!(report.element(Element::Vertex(0)).unwrap().ch, "-3");
    assert!(!report.violations.is_empty());
    for e in &report.violations {
        let er = report.element(*e).unwrap();
        assert!(!er.failed_hypotheses.is_empty(), "{er:?}");
    }
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["elements"].as_array().unwrap().len(), 20 + 12);
}

/// Embeds a graph with a unique embedding and marks `outer` (in either
/// direction) as the outer face.
fn embedded(n: VertexId, edges: &[(VertexId, VertexId)], outer: &[VertexId]) -> PlaneGraph {
    let mut g = embed_by_rotations(&SimpleGraph::from_edges(0..n, edges)).unwrap();
    let rev: Vec<VertexId> = std::iter::once(outer[0]).chain(outer[1..].iter().rev().copied()).collect();
    if g.set_outer_walk(outer).is_err() {
        g.set_outer_walk(&rev).unwrap();
    }
    g
}

#[test]
fn audit_bounds_on_small_pentagulations() {
    let g = embedded(8, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 6), (5, 7), (6, 7)], &[0, 1, 4, 6, 2]);
    let report = audit(&instance(g, 0)).unwrap();
    assert!(report.conserved);
    let four = report.element(Element::Vertex(4)).unwrap();
    assert_eq!((four.bound, four.ch.as_str(), four.holds), (Some(Bound::OuterTwoVertex), "-5/3", true));

    let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 7), (3, 8), (4, 7), (4, 8), (5, 7), (6, 8)];
    let report = audit(&instance(embedded(9, &edges, &[3, 8, 4, 7]), 3)).unwrap();
    let hub = report.element(Element::Vertex(0)).unwrap();
    assert!(hub.incoming.is_empty() && hub.outgoing.is_empty());
    assert_eq!((hub.bound, hub.ch.as_str(), hub.holds), (Some(Bound::InteriorVertex), "0", true));
}

/// Every transfer is 1/3 or 1 and its guard label was assigned.
fn check_guards(g: &PlaneGraph, cls: &FaceClassification, ledger: &ChargeLedger) {
    use DischargeRule::*;
    use FaceLabel::*;
    for t in &ledger.log {
        assert!(t.amount == r(1, 3) || t.amount == r(1, 1), "{t:?}");
        let ok = match t.rule {
            R1 | R2 => matches!(t.from, Element::Face(_)) && matches!(t.to, Element::Vertex(_)),
            R3 => t.from == Element::Vertex(cls.x),
            R4 => cls.is(t.to, A3),
            R5 => cls.is(t.to, A1) || cls.is(t.to, A2),
            R6 => cls.is(t.from, B) && cls.is(t.to, A2) && matches!(t.to, Element::Face(f) if cls.face(f).tight),
            R7 => cls.is(t.from, C) && cls.is(t.to, A2),
            R8 => cls.is(t.from, D) && cls.is(t.to, A2),
            R9 => cls.is(t.from, F) && matches!(t.to, Element::Vertex(v) if g.degree(v) == 5),
            R10 => cls.is(t.to, Special),
            R11 => matches!(t.to, Element::Face(f) if matches!(t.from, Element::Vertex(z) if cls.face(f).tied.contains(&z))),
        };
        assert!(ok, "{t:?}");
    }
}

/// Labels keyed by the edge set of each face, so they can be compared
/// across relabelings.
type Canonical = BTreeMap<(BTreeSet<(VertexId, VertexId)>, bool), (BTreeSet<FaceLabel>, BTreeSet<VertexId>, bool)>;

fn canonical(cls: &FaceClassification, map: &dyn Fn(VertexId) -> VertexId) -> Canonical {
    cls.faces
        .iter()
        .map(|f| {
            let n = f.boundary.len();
            let edges = (0..n)
                .map(|i| {
                    let (a, b) = (map(f.boundary[i]), map(f.boundary[(i + 1) % n]));
                    (a.min(b), a.max(b))
                })
                .collect();
            ((edges, f.id == cls.outer), (f.labels.clone(), f.tied.iter().map(|&v| map(v)).collect(), f.tight))
        })
        .collect()
}

fn outer_least(g: &PlaneGraph) -> VertexId {
    *g.outer_walk().unwrap().iter().min().unwrap()
}

fn test_graphs() -> Vec<PlaneGraph> {
    let (c, e) = cd_fixture();
    vec![a1_fixture(), drawn(&c, &e, (1, 0)), special_fixture(), dodecahedron(), fullerene_like(2), pentagon_patch()]
}

#[test]
fn fixtures_conserve_and_respect_guards() {
    for g in test_graphs() {
        let x = outer_least(&g);
        let cls = classify(&g, x, Hypotheses::Relaxed).unwrap();
        let ledger = apply_rules(&g, &cls).unwrap();
        assert_eq!(ledger.total(), r(-8, 1));
        check_guards(&g, &cls, &ledger);
        assert_eq!(ledger.reversed().charge, initial_charges(&g).charge);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rules_conserve_charge(n in 3usize..26, seed in any::<u64>()) {
        let mut g = random_trifree_planar(n, seed);
        let first = g.edges()[0];
        g.set_outer_dart(Some(first)).unwrap();
        let x = outer_least(&g);
        let cls = classify(&g, x, Hypotheses::Relaxed).unwrap();
        let ledger = apply_rules(&g, &cls).unwrap();
        prop_assert_eq!(ledger.total(), initial_charges(&g).total());
        prop_assert_eq!(ledger.total(), r(-8, 1));
        check_guards(&g, &cls, &ledger);
        prop_assert_eq!(ledger.reversed().charge, initial_charges(&g).charge);
    }

    #[test]
    fn classification_ignores_names_and_orientation(which in 0usize..6, seed in any::<u64>(), mirror in any::<bool>()) {
        let g = test_graphs().swap_remove(which);
        let x = outer_least(&g);
        let mut ids = g.vertex_ids();
        ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let map: BTreeMap<VertexId, VertexId> = g.vertex_ids().into_iter().zip(ids).collect();
        let mut h = g.relabel(&map);
        if mirror {
            h = h.mirrored();
        }
        let a = classify(&g, x, Hypotheses::Relaxed).unwrap();
        let b = classify(&h, map[&x], Hypotheses::Relaxed).unwrap();
        prop_assert_eq!(canonical(&a, &|v| map[&v]), canonical(&b, &|v| v));
        prop_assert_eq!(a.connections.len(), b.connections.len());
        let ledger = apply_rules(&h, &b).unwrap();
        prop_assert_eq!(ledger.log.len(), apply_rules(&g, &a).unwrap().log.len());
    }
}
