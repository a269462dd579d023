//! Triangle-free planar graphs with independence number `(n + 1) / 3`.
//!
//! Grown from `C5` by repeatedly taking the smallest degree-2 vertex `p` with
//! neighbors `q < r` and adding three vertices: `c` adjacent to `q` and `r`
//! (closing a 4-face `q p r c`), and a path `p a b c` drawn inside that 4-face.
//! Each step adds three vertices and raises the independence number by one.
//! The independence number is checked by the tests against exact search,
//! not proved here.

use std::collections::BTreeMap;

use super::families::cycle;
use super::GeneratorError;
use crate::plane_graph::{Graph, PlaneGraph, VertexId};

pub fn jones_like(n: usize) -> Result<PlaneGraph, GeneratorError> {
    if n < 5 || n % 3 != 2 {
        return Err(GeneratorError::Parameter {
            family: "jones",
            reason: format!("need n >= 5 and n = 2 (mod 3), got {n}"),
        });
    }
    let mut g = cycle(5);
    while g.num_vertices() < n {
        g = grow(&g);
    }
    Ok(g)
}

fn grow(g: &PlaneGraph) -> PlaneGraph {
    let p = g
        .vertex_ids()
        .into_iter()
        .find(|&v| g.degree(v) == 2)
        .expect("a degree-2 vertex always remains");
    let (q, r) = {
        let nb = g.neighbors(p);
        (nb[0].min(nb[1]), nb[0].max(nb[1]))
    };
    let face = g.face_of_dart((q, p));
    let (h, new) = g.add_path_in_face(q, r, 1, &face).expect("corner of p");
    let c = new[0];
    let quad = h
        .trace_faces()
        .into_iter()
        .find(|f| f.len() == 4 && f.contains(p) && f.contains(c))
        .expect("4-face q p r c");
    let (h, new) = h.add_path_in_face(p, c, 2, &quad).expect("inside the 4-face");
    let (a, b) = (new[0], new[1]);
    // Renumber so that a, b, c get consecutive ids in path order.
    let base = c;
    let map: BTreeMap<VertexId, VertexId> = h
        .vertex_ids()
        .into_iter()
        .map(|v| {
            let w = match v {
                v if v == a => base,
                v if v == b => base + 1,
                v if v == c => base + 2,
                v => v,
            };
            (v, w)
        })
        .collect();
    h.relabel(&map)
}
