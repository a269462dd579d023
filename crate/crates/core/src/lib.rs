//! Set colorings of triangle-free planar graphs.

pub mod composition;
pub mod discharging;
pub mod fractional;
pub mod generators;
pub mod plane_graph;
pub mod reduction;
pub mod scalar;
pub mod set_coloring;

pub use num_rational::BigRational as Rational;
pub use plane_graph::{FacialWalk, Graph, PlaneGraph, SimpleGraph, VertexId};
pub use scalar::Scalar;
pub use set_coloring::{solve, verify, ColorSet, ColoringSpec, SetColoring, SolveOptions, SolveOutcome};
