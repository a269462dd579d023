use super::*;

fn square() -> PlaneGraph {
    let coords = BTreeMap::from([(0, (0.0, 0.0)), (1, (1.0, 0.0)), (2, (1.0, 1.0)), (3, (0.0, 1.0))]);
    PlaneGraph::from_straight_line(&coords, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}

fn cycle(n: u32) -> PlaneGraph {
    let rotation = (0..n).map(|i| (i, vec![(i + 1) % n, (i + n - 1) % n])).collect();
    PlaneGraph::from_rotations(rotation).unwrap()
}

#[test]
fn bounded_faces_run_clockwise() {
    let g = square();
    let faces = g.trace_faces();
    assert_eq!(faces.len(), 2);
    // The unbounded face is found first, from dart 0 -> 1.
    assert_eq!(faces[0].vertices, vec![0, 1, 2, 3]);
    assert_eq!(faces[1].vertices, vec![0, 3, 2, 1]);
    assert!(faces.iter().all(FacialWalk::is_cycle));
}

#[test]
fn rejects_malformed_rotations() {
    let bad = BTreeMap::from([(0, vec![1]), (1, vec![])]);
    assert_eq!(PlaneGraph::from_rotations(bad), Err(GraphError::MissingPartner(0, 1)));
    let lp = BTreeMap::from([(0, vec![0])]);
    assert_eq!(PlaneGraph::from_rotations(lp), Err(GraphError::Loop(0)));
    let unknown = BTreeMap::from([(0, vec![7])]);
    assert_eq!(PlaneGraph::from_rotations(unknown), Err(GraphError::UnknownVertex(7)));
}

#[test]
fn rejects_non_planar_rotation() {
    // K_{3,3} with an arbitrary rotation cannot satisfy Euler's formula.
    let rotation = (0..6u32)
        .map(|v| {
            let side = if v < 3 { 3..6 } else { 0..3 };
            (v, side.collect())
        })
        .collect();
    assert!(matches!(PlaneGraph::from_rotations(rotation), Err(GraphError::NotSpherical { .. })));
}

#[test]
fn isolated_vertices_get_a_face() {
    let g = PlaneGraph::from_rotations(BTreeMap::from([(4, vec![])])).unwrap();
    let faces = g.trace_faces();
    assert_eq!(faces.len(), 1);
    assert!(faces[0].is_empty());
    assert_eq!(faces[0].vertices, vec![4]);
}

#[test]
fn girth_and_triangles() {
    assert_eq!(cycle(5).girth(), Some(5));
    assert!(cycle(4).is_triangle_free());
    assert!(!cycle(3).is_triangle_free());
    let path = PlaneGraph::from_rotations(BTreeMap::from([(0, vec![1]), (1, vec![0])])).unwrap();
    assert_eq!(path.girth(), None);
}

#[test]
fn identify_opposite_corners_of_square() {
    let g = square();
    let face = g.trace_faces()[0].clone();
    let h = g.identify_vertices(0, 2, &face).unwrap();
    assert_eq!(h.num_vertices(), 3);
    assert_eq!(h.num_edges(), 2);
    h.check_euler().unwrap();
}

#[test]
fn identify_rejects_adjacent_and_stale() {
    let g = square();
    let face = g.trace_faces()[0].clone();
    assert_eq!(g.identify_vertices(0, 1, &face), Err(RewriteError::Adjacent(0, 1)));
    let h = g.add_edge_in_face(0, 2, &face).unwrap();
    assert_eq!(h.identify_vertices(1, 3, &face), Err(RewriteError::StaleFace));
}

#[test]
fn add_edge_splits_face() {
    let g = cycle(6);
    let face = g.trace_faces()[0].clone();
    let h = g.add_edge_in_face(0, 3, &face).unwrap();
    h.check_euler().unwrap();
    let mut lens: Vec<usize> = h.trace_faces().iter().map(FacialWalk::len).collect();
    lens.sort_unstable();
    assert_eq!(lens, vec![4, 4, 6]);
}

#[test]
fn split_vertex_cycle_lengths() {
    // Star K_{1,3} inside a hexagon: a wheel-like graph with hub 6.
    let coords: BTreeMap<u32, (f64, f64)> = (0..6)
        .map(|i| {
            let a = std::f64::consts::PI * i as f64 / 3.0;
            (i, (a.cos(), a.sin()))
        })
        .chain([(6, (0.0, 0.0))])
        .collect();
    let mut edges: Vec<(u32, u32)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(6, 0), (6, 2), (6, 4)]);
    let g = PlaneGraph::from_straight_line(&coords, &edges).unwrap();
    let (h, c) = g.split_vertex(6).unwrap();
    h.check_euler().unwrap();
    assert_eq!(c.len(), 6);
    let faces = h.trace_faces();
    assert!(faces.iter().any(|f| f.len() == 6 && f.vertex_set() == c.iter().copied().collect()));

    let (h2, c2) = cycle(5).split_vertex(0).unwrap();
    h2.check_euler().unwrap();
    assert_eq!(c2.len(), 5);
    assert!(h2.trace_faces().iter().any(|f| f.vertex_set() == c2.iter().copied().collect()));
}

#[test]
fn outer_face_survives_interior_rewrites() {
    let mut g = cycle(6);
    g.set_outer_walk(&g.trace_faces()[1].vertices.clone()).unwrap();
    let inner = g.trace_faces()[0].clone();
    let h = g.add_edge_in_face(1, 4, &inner).unwrap();
    assert_eq!(h.outer_walk(), g.outer_walk());
    assert_eq!(
        g.delete_vertices(&BTreeSet::from([2])),
        Err(RewriteError::OuterFaceDestroyed)
    );
}

#[test]
fn attach_cycle_becomes_outer() {
    let g = cycle(5);
    let face = g.trace_faces()[0].clone();
    let (h, new) = g.attach_outer_cycle(0, Some(&face), 4).unwrap();
    h.check_euler().unwrap();
    assert_eq!(new.len(), 3);
    let outer = h.outer_face().unwrap();
    assert_eq!(outer.len(), 4);
    assert!(outer.contains(0));
}

#[test]
fn json_round_trip() {
    let mut g = square();
    g.set_outer_walk(&[0, 3, 2, 1]).unwrap();
    g.set_marked([0]);
    let text = g.to_json();
    let back = PlaneGraph::from_json(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.to_json(), text);
    assert!(matches!(PlaneGraph::from_json("{\"vertices\": 3}"), Err(GraphError::Format(_))));
}

#[test]
fn connect_components_keeps_sphere() {
    let a = cycle(4);
    let b = cycle(5).relabel(&(0..5).map(|i| (i, i + 10)).collect());
    let mut rotation = a.rotations().clone();
    rotation.extend(b.rotations().clone());
    let g = PlaneGraph::from_rotations(rotation).unwrap();
    let fa = g.face_of_dart((0, 1));
    let fb = g.face_of_dart((10, 11));
    let h = g.connect_components(0, &fa, 10, &fb).unwrap();
    h.check_euler().unwrap();
    assert_eq!(h.trace_faces().len(), 3);
    assert_eq!(h.connect_components(1, &fa, 12, &fb), Err(RewriteError::SameComponent(1, 12)));
}
