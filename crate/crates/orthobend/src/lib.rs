//! Bend-minimum planar orthogonal drawings for graphs of maximum degree 4.
//!
//! The crate decides whether a planar graph with maximum degree 4 admits a
//! planar orthogonal representation with at most `b` bends, produces a
//! bend-minimum representation and an integer grid drawing when it does, and
//! ships independent brute-force oracles used to validate the solver.
//!
//! The solver is fixed-parameter tractable in `k + b`, where `k` is the
//! number of vertices of degree at most 2 and `b` is the bend budget. It
//! works block by block: biconnected blocks are decomposed into
//! series/parallel/rigid components plus maximal chains of degree-2
//! vertices, per-component sets of feasible "spirality" values (how tightly a
//! component winds around its attachment poles) are combined bottom-up, and
//! each candidate is realized through a min-cost-flow formulation of the
//! bend-counting equations. Blocks are then merged at cutvertices under the
//! angle constraints that make the merge always possible.

pub mod cli;
pub mod decomp;
pub mod flow;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod ortho;
pub mod planar;
pub mod render;
pub mod solver;

pub use graph::{EdgeId, Graph, GraphError, VertexId};
pub use ortho::{Bend, OrthoError, OrthoRep, SpiralityContext, TwiceSpirality};
pub use planar::{DartId, Face, FaceId, PlanarError, PlaneGraph};
