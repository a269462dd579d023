//! Reduction traces: enough to replay a run step by step.

use serde::{Deserialize, Serialize};

use super::normalize::Permutation;
use super::rules::Rule;
use crate::plane_graph::VertexId;
use crate::set_coloring::SetColoring;

/// How the coloring of an instance was obtained from its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMethod {
    /// The rule's recipe produced a valid coloring.
    Recipe,
    /// Search over the rewritten vertices only.
    Local,
    /// Search over the region grown by the matched vertices.
    LocalWide,
    /// Search over the whole instance.
    Solver,
    /// Union of the colorings of the two sides of a separating cycle.
    Union,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub rule: Rule,
    pub matched: Vec<VertexId>,
    pub lift: LiftMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    /// Color renaming the recipe worked in, `perm[c - 1]` being the image of
    /// `c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Permutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseReason {
    /// Small enough to solve directly.
    Threshold,
    /// No rule matched.
    NoRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceNode {
    Base {
        vertices: usize,
        reason: BaseReason,
        coloring: SetColoring,
    },
    /// With no enhanced vertex, `vertex` on the outer cycle is given the
    /// extra `color` and becomes enhanced.
    Promote {
        vertex: VertexId,
        color: u32,
        child: Box<TraceNode>,
    },
    Step {
        vertices: usize,
        edges: usize,
        #[serde(flatten)]
        step: ReductionStep,
        children: Vec<TraceNode>,
    },
}

impl TraceNode {
    /// Steps in the order they were taken (preorder).
    pub fn steps(&self) -> Vec<&ReductionStep> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a ReductionStep>) {
        match self {
            TraceNode::Base { .. } => {}
            TraceNode::Promote { child, .. } => child.collect(out),
            TraceNode::Step { step, children, .. } => {
                out.push(step);
                for c in children {
                    c.collect(out);
                }
            }
        }
    }

    /// The base cases, left to right.
    pub fn bases(&self) -> Vec<(BaseReason, &SetColoring)> {
        match self {
            TraceNode::Base { reason, coloring, .. } => vec![(*reason, coloring)],
            TraceNode::Promote { child, .. } => child.bases(),
            TraceNode::Step { children, .. } => children.iter().flat_map(|c| c.bases()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}
