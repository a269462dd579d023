//! Final charges against the bounds that hold in a minimal counterexample.
//!
//! Concrete instances are not minimal counterexamples, so violations are
//! expected; each one is reported with the local facts that a minimal
//! counterexample would exclude (reducible configurations, low degrees and
//! classification anomalies touching the element).

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::classify::{classify_instance, Anomaly};
use super::rules::{apply_rules, DischargeRule};
use super::{initial_charges, DischargeError, Element};
use crate::plane_graph::{Graph, VertexId};
use crate::reduction::{configurations, Instance};
use crate::Rational;

/// The bound asserted for an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `ch >= 0` for a vertex off the outer cycle.
    InteriorVertex,
    /// `ch = -3` for the enhanced vertex.
    EnhancedVertex,
    /// `ch = -5/3` for another 2-vertex of the outer cycle.
    OuterTwoVertex,
    /// `ch >= 2/3 (deg - 5)` for another outer vertex of degree at least 3.
    OuterVertex,
    /// `ch >= 0` for an inner face avoiding the enhanced vertex.
    FaceAwayFromX,
    /// `ch >= 0` for an inner face through the enhanced vertex.
    FaceAtX,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferRecord {
    pub rule: DischargeRule,
    /// The other end of the transfer.
    pub with: Element,
    pub amount: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub element: Element,
    /// Degree of a vertex or length of a face.
    pub size: usize,
    pub ch0: String,
    pub incoming: Vec<TransferRecord>,
    pub outgoing: Vec<TransferRecord>,
    pub ch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Bound>,
    /// The bound in readable form, e.g. `>= 0` or `= -5/3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub holds: bool,
    /// For violations: what a minimal counterexample would not contain here.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed_hypotheses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub x: VertexId,
    pub initial_total: String,
    pub final_total: String,
    /// Final total equals initial total, which equals `-8` per component.
    pub conserved: bool,
    pub elements: Vec<ElementReport>,
    pub violations: Vec<Element>,
    pub anomalies: Vec<Anomaly>,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn element(&self, e: Element) -> Option<&ElementReport> {
        self.elements.iter().find(|r| r.element == e)
    }
}

pub fn audit(inst: &Instance) -> Result<AuditReport, DischargeError> {
    let cls = classify_instance(inst)?;
    let g = &inst.g;
    let x = cls.x;
    let initial = initial_charges(g);
    let ledger = apply_rules(g, &cls)?;
    let eight = Rational::from_integer((-8 * initial.components.len() as i64).into());
    let conserved = initial.total() == ledger.total() && initial.total() == eight;
    let configs = configurations(inst);
    let zero = Rational::zero();
    let thirds = |n: i64| Rational::new(n.into(), 3.into());

    let mut elements = Vec::new();
    let mut violations = Vec::new();
    let all = g.vertex_ids().into_iter().map(Element::Vertex).chain(cls.faces.iter().map(|f| Element::Face(f.id)));
    for e in all {
        let ch = ledger.get(e);
        let (size, touched): (usize, BTreeSet<VertexId>) = match e {
            Element::Vertex(v) => (g.degree(v), std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect()),
            Element::Face(f) => (cls.faces[f].boundary.len(), cls.faces[f].boundary.iter().copied().collect()),
        };
        let (bound, holds, expected) = match e {
            Element::Vertex(v) if v == x => (Some(Bound::EnhancedVertex), ch == thirds(-9), Some("= -3".to_string())),
            Element::Vertex(v) if cls.on_c.contains(&v) && size == 2 => {
                (Some(Bound::OuterTwoVertex), ch == thirds(-5), Some("= -5/3".to_string()))
            }
            Element::Vertex(v) if cls.on_c.contains(&v) => {
                let min = thirds(2 * (size as i64 - 5));
                let text = format!(">= {min}");
                (Some(Bound::OuterVertex), ch >= min, Some(text))
            }
            Element::Vertex(_) => (Some(Bound::InteriorVertex), ch >= zero, Some(">= 0".to_string())),
            Element::Face(f) if f == cls.outer => (None, true, None),
            Element::Face(_) if touched.contains(&x) => (Some(Bound::FaceAtX), ch >= zero, Some(">= 0".to_string())),
            Element::Face(_) => (Some(Bound::FaceAwayFromX), ch >= zero, Some(">= 0".to_string())),
        };
        let mut failed = Vec::new();
        if !holds {
            violations.push(e);
            for (rule, t) in &configs {
                if t.iter().any(|v| touched.contains(v)) {
                    failed.push(format!("configuration {rule} at {t:?}"));
                }
            }
            for &v in &touched {
                if !cls.on_c.contains(&v) && g.degree(v) < 2 {
                    failed.push(format!("vertex {v} off the outer cycle has degree {}", g.degree(v)));
                }
            }
            for a in &cls.anomalies {
                if a.elements.contains(&e) {
                    failed.push(format!("classification anomaly {:?}", a.kind));
                }
            }
        }
        let record = |t: &super::Transfer, with: Element| TransferRecord { rule: t.rule, with, amount: t.amount.to_string() };
        elements.push(ElementReport {
            element: e,
            size,
            ch0: initial.get(e).to_string(),
            incoming: ledger.log.iter().filter(|t| t.to == e).map(|t| record(t, t.from)).collect(),
            outgoing: ledger.log.iter().filter(|t| t.from == e).map(|t| record(t, t.to)).collect(),
            ch: ch.to_string(),
            bound,
            expected,
            holds,
            failed_hypotheses: failed,
        });
    }
    Ok(AuditReport {
        x,
        initial_total: initial.total().to_string(),
        final_total: ledger.total().to_string(),
        conserved,
        elements,
        violations,
        anomalies: cls.anomalies,
    })
}
