use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::families::{cycle, path};
use crate::plane_graph::{Graph, PlaneGraph};

/// Random connected triangle-free plane graph on `n >= 3` vertices.
///
/// Starts from a 4-cycle (a 3-vertex path when `n = 3`) and repeatedly picks a
/// face and either hangs a new vertex off one or two of its vertices, or adds
/// a chord. Steps that would create a triangle are rejected. The loop stops
/// at `n` vertices or after `50 n` attempts.
pub fn random_trifree_planar(n: usize, seed: u64) -> PlaneGraph {
    assert!(n >= 3, "need at least 3 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = if n == 3 { path(3) } else { cycle(4) };
    let budget = 50 * n;
    for _ in 0..budget {
        if g.num_vertices() >= n {
            break;
        }
        let faces = g.trace_faces();
        let face = faces.choose(&mut rng).expect("a face").clone();
        let verts = &face.vertices;
        let u = *verts.choose(&mut rng).unwrap();
        let roll: f64 = rng.random();
        let next = if roll < 0.45 {
            g.add_pendant_in_face(u, &face).ok().map(|(h, _)| h)
        } else if roll < 0.8 {
            let v = *verts.choose(&mut rng).unwrap();
            if u == v || g.has_edge(u, v) {
                None
            } else {
                g.add_path_in_face(u, v, 1, &face).ok().map(|(h, _)| h)
            }
        } else {
            let v = *verts.choose(&mut rng).unwrap();
            let common = g.neighbors(u).iter().any(|w| g.neighbors(v).contains(w));
            if u == v || g.has_edge(u, v) || common {
                None
            } else {
                g.add_edge_in_face(u, v, &face).ok()
            }
        };
        if let Some(h) = next {
            if h.is_triangle_free() {
                g = h;
            }
        }
    }
    debug_assert!(g.check_euler().is_ok());
    g
}
