use thiserror::Error;

use crate::recognize::WitnessViolation;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("edge {u}-{v} is not in the graph")]
    MissingEdge { u: usize, v: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(WitnessViolation),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(
        "instance too large for exhaustive search: m={edges}, k={budget} (limits: m<=40, k<=5)"
    )]
    InstanceTooLarge { edges: usize, budget: usize },
    #[error("cannot plant {requested} noise edges: only {available} non-edges exist")]
    NotEnoughNonEdges { requested: usize, available: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
