//! Charge bookkeeping for the discharging argument on plane graphs whose
//! inner faces are 5-faces.
//!
//! Vertices start with `deg(v) - 4` and faces with `|f| - 4`, which sums to
//! `-8` on every connected plane graph. [`classify`] labels the faces around
//! the enhanced vertex, [`apply_rules`] moves charge along rules R1 to R11
//! computed from that labeling, and [`audit`] compares the final charges
//! with the bounds a minimal counterexample would satisfy.

mod audit;
mod classify;
mod rules;
#[cfg(test)]
mod tests;

pub use audit::{audit, AuditReport, Bound, ElementReport, TransferRecord};
pub use classify::{
    classify, classify_instance, Anomaly, AnomalyKind, Connection, FaceClassification, FaceInfo, FaceLabel,
    Hypotheses, Relation,
};
pub use rules::{apply_rules, DischargeRule};

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane_graph::{components, Graph, PlaneGraph, VertexId};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("the outer face is not marked")]
    NoOuterFace,
    #[error("the instance has no enhanced vertex")]
    NoEnhancedVertex,
    #[error("vertex {0} is not on the outer face")]
    OffOuterFace(VertexId),
    #[error("face {face} ({boundary:?}) is not bounded by a 5-cycle")]
    NotPentagonal { face: usize, boundary: Vec<VertexId> },
}

/// A vertex or a face (by id in [`PlaneGraph::trace_faces`] order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(VertexId),
    Face(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub rule: DischargeRule,
    pub from: Element,
    pub to: Element,
    pub amount: Rational,
}

/// Total initial charge of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTotal {
    /// Least vertex of the component.
    pub root: VertexId,
    pub total: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub charge: BTreeMap<Element, Rational>,
    pub log: Vec<Transfer>,
    /// Initial totals per component; each is `-8`.
    pub components: Vec<ComponentTotal>,
}

impl ChargeLedger {
    pub fn total(&self) -> Rational {
        self.charge.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn get(&self, e: Element) -> Rational {
        self.charge.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// More than one component; the overall total is then `-8` times the
    /// component count.
    pub fn disconnected(&self) -> bool {
        self.components.len() > 1
    }

    pub fn transfer(&mut self, rule: DischargeRule, from: Element, to: Element, amount: Rational) {
        *self.charge.entry(from).or_insert_with(Rational::zero) -= &amount;
        *self.charge.entry(to).or_insert_with(Rational::zero) += &amount;
        self.log.push(Transfer { rule, from, to, amount });
    }

    /// Undoes the logged transfers, newest first.
    pub fn reversed(&self) -> ChargeLedger {
        let mut charge = self.charge.clone();
        for t in self.log.iter().rev() {
            *charge.get_mut(&t.from).expect("logged element") += &t.amount;
            *charge.get_mut(&t.to).expect("logged element") -= &t.amount;
        }
        ChargeLedger { charge, log: Vec::new(), components: self.components.clone() }
    }
}

/// `deg(v) - 4` on vertices, `|f| - 4` on faces (walk length, so a bridge
/// counts twice and an isolated vertex has a face of length 0).
pub fn initial_charges(g: &PlaneGraph) -> ChargeLedger {
    let four = Rational::from_integer(4.into());
    let mut charge = BTreeMap::new();
    for v in g.vertex_ids() {
        charge.insert(Element::Vertex(v), Rational::from_integer(g.degree(v).into()) - &four);
    }
    let faces = g.trace_faces();
    let mut face_total: BTreeMap<VertexId, Rational> = BTreeMap::new();
    let comps = components(g);
    let root_of: BTreeMap<VertexId, VertexId> =
        comps.iter().flat_map(|c| c.iter().map(move |&v| (v, c[0]))).collect();
    for f in &faces {
        let ch = Rational::from_integer(f.len().into()) - &four;
        *face_total.entry(root_of[&f.vertices[0]]).or_insert_with(Rational::zero) += &ch;
        charge.insert(Element::Face(f.id), ch);
    }
    let components = comps
        .iter()
        .map(|c| {
            let vertices = c.iter().fold(Rational::zero(), |acc, v| acc + &charge[&Element::Vertex(*v)]);
            ComponentTotal { root: c[0], total: vertices + face_total.remove(&c[0]).unwrap_or_else(Rational::zero) }
        })
        .collect();
    ChargeLedger { charge, log: Vec::new(), components }
}

pub(crate) fn third() -> Rational {
    Rational::new(1.into(), 3.into())
}

pub(crate) fn one() -> Rational {
    Rational::from_integer(1.into())
}
