//! Edge cones of connected bipartite graphs and the first-order deformations of
//! the toric varieties they define.
//!
//! The crate is layered:
//!
//! * [`lattice`] holds the quotient lattice `N = Z^{m+n}/(1,..,1,-1,..,-1)`, its
//!   dual `M`, and the Smith-form smoothness test.
//! * [`bigraph`] is the graph side: independent sets, associated subgraphs and
//!   first independent sets.
//! * [`oracle`] is a brute-force polyhedral engine (double description, face
//!   lattice, Hilbert-basis check) used as ground truth.
//! * [`edge_cone`] realizes the graph-theoretic face machinery on top of both.
//! * [`deformation`] computes crosscuts, `T^1(-R)` and rigidity verdicts.

pub mod bigraph;
pub mod bits;
pub mod deformation;
pub mod edge_cone;
pub mod lattice;
pub mod linalg;
pub mod oracle;

pub use bigraph::{BipartiteGraph, FirstIndependentSet, IndependentSet, SetKind, SpanningSubgraph, VertexSet};
pub use deformation::{
    classify_family, crosscut, degree_search, nonrigidity_certificate, rigidity_verdict, t1_dim, Certificate, Crosscut,
    CrosscutContext, DegreeT1, Family, RigidityVerdict, T1Result, Verdict,
};
pub use edge_cone::{build_edge_cone, dual_edge_cone, CaseTag, EdgeConePair, NonSimplicial3Face, PairClass};
pub use lattice::{MVector, NVector, QuotientContext};
pub use oracle::{Cone, FaceDescriptor};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vectors belong to different lattice contexts")]
    ContextMismatch,
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("rays are linearly dependent")]
    DependentRays,
    #[error("vector {0:?} is not in M: left and right coordinate sums differ")]
    NotInM(Vec<i64>),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge ({0}, {1}) is invalid: expected 1 <= i <= m < j <= m+n")]
    InvalidEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex set is not independent")]
    NotIndependent,
    #[error("independent set is not a first independent set")]
    NotFirstIndependent,
    #[error("cone needs at least one nonzero generator")]
    EmptyInput,
    #[error("cone contains a line")]
    NotStronglyConvex,
    #[error("cone is not smooth in codimension 2: 2-face on rays {0:?} is singular")]
    NotSmoothInCodim2(Vec<usize>),
    #[error("no certificate case matches the face on rays {0:?}")]
    NoCaseTag(Vec<usize>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
