//! Rules R1 to R11. All transfers are read off the classification of the
//! initial graph and only then applied, rule by rule.

use std::collections::BTreeSet;

use serde::Serialize;

use super::classify::{shared_x_edges, FaceClassification, FaceLabel, Frame, Relation};
use super::{initial_charges, one, third, ChargeLedger, DischargeError, Element};
use crate::plane_graph::{Graph, PlaneGraph};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DischargeRule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
}

impl DischargeRule {
    pub const ALL: [DischargeRule; 11] = [
        DischargeRule::R1,
        DischargeRule::R2,
        DischargeRule::R3,
        DischargeRule::R4,
        DischargeRule::R5,
        DischargeRule::R6,
        DischargeRule::R7,
        DischargeRule::R8,
        DischargeRule::R9,
        DischargeRule::R10,
        DischargeRule::R11,
    ];
}

/// Initial charges of `g` moved by every rule whose guard holds in `cls`.
/// `cls` must come from [`super::classify`] on the same graph.
pub fn apply_rules(g: &PlaneGraph, cls: &FaceClassification) -> Result<ChargeLedger, DischargeError> {
    let fr = Frame::new(g, cls.x)?;
    let mut ledger = initial_charges(g);
    for (rule, from, to, amount) in transfers(&fr, cls) {
        ledger.transfer(rule, from, to, amount);
    }
    Ok(ledger)
}

type Move = (DischargeRule, Element, Element, Rational);

fn transfers(fr: &Frame, cls: &FaceClassification) -> Vec<Move> {
    use DischargeRule::*;
    use FaceLabel::*;
    let (x, g) = (fr.x, fr.g);
    let mut out: Vec<Move> = Vec::new();
    let face = |i: usize| Element::Face(i);
    let vertex = Element::Vertex;
    let distinct = |i: usize| -> BTreeSet<_> { fr.faces[i].vertex_set() };

    for f in &cls.faces {
        if f.id == cls.outer {
            continue;
        }
        for v in distinct(f.id) {
            let d = g.degree(v);
            if (d == 2 && fr.in_c(v)) || (d == 3 && !fr.in_c(v)) {
                out.push((R1, face(f.id), vertex(v), third()));
            }
        }
    }
    for f in &cls.faces {
        for v in distinct(f.id) {
            if g.degree(v) == 2 && !fr.in_c(v) {
                out.push((R2, face(f.id), vertex(v), one()));
            }
        }
    }
    for f in &cls.faces {
        if f.id != cls.outer && distinct(f.id).contains(&x) {
            out.push((R3, vertex(x), face(f.id), one()));
        }
    }
    for f in cls.faces.iter().filter(|f| f.has(A3)) {
        for v in distinct(f.id) {
            if v != x && g.degree(v) >= 5 {
                out.push((R4, vertex(v), face(f.id), third()));
            }
        }
    }
    for c in cls.connected(Relation::VertexToA) {
        let Element::Vertex(v) = c.from else { unreachable!("vertex connection") };
        let to_a = cls.is(c.to, A1) || cls.is(c.to, A2);
        if v != x && to_a && (g.degree(v) >= 5 || fr.in_c(v)) {
            out.push((R5, c.from, c.to, third()));
        }
    }
    for b in cls.faces.iter().filter(|f| f.has(B)) {
        for a in cls.faces.iter().filter(|a| a.has(A2) && a.tight && a.id != b.id) {
            if !shared_x_edges(fr, b.id, a.id).is_empty() {
                out.push((R6, face(b.id), face(a.id), third()));
            }
        }
    }
    for (rule, relation, label) in [(R7, Relation::CToA2, C), (R8, Relation::DToA2, D)] {
        for c in cls.connected(relation) {
            if cls.is(c.from, label) && cls.is(c.to, A2) {
                out.push((rule, c.from, c.to, third()));
            }
        }
    }
    for c in cls.connected(Relation::FToVertex) {
        let Element::Vertex(v) = c.to else { unreachable!("vertex connection") };
        if cls.is(c.from, F) && g.degree(v) == 5 {
            out.push((R9, c.from, c.to, third()));
        }
    }
    for f in cls.faces.iter().filter(|f| f.has(Special)) {
        let me = face(f.id);
        let senders: Vec<Element> = cls
            .connected(Relation::EToFace)
            .filter(|c| c.to == me && cls.is(c.from, E))
            .map(|c| c.from)
            .collect();
        let senders = if senders.is_empty() {
            cls.connected(Relation::SpecialToFace).filter(|c| c.from == me).map(|c| c.to).collect()
        } else {
            senders
        };
        for s in senders {
            out.push((R10, s, me, third()));
        }
    }
    for &z in &cls.on_c {
        if z == x {
            continue;
        }
        for f in cls.faces.iter().filter(|f| f.tied.contains(&z)) {
            out.push((R11, vertex(z), face(f.id), third()));
        }
    }
    out
}
