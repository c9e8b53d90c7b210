use thiserror::Error;

use crate::polytope::ValidationReport;
use crate::resolution::ResolutionTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot take primitive of zero")]
    ZeroVector,

    #[error("columns not independent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(ValidationReport),

    #[error("invalid characteristic data: {0}")]
    InvalidPair(ValidationReport),

    #[error("invalid face {0:?}: not contained in any vertex")]
    InvalidFace(Vec<usize>),

    #[error("codimension {codim} out of range 0..={dim}")]
    CodimOutOfRange { codim: usize, dim: usize },

    #[error("blowup along facet is a no-op, rejected")]
    BlowupAlongFacet,

    #[error("nothing to blow up: face {0:?} has order 1")]
    NothingToBlowUp(Vec<usize>),

    #[error("invalid lattice point: {0}")]
    InvalidPoint(String),

    #[error("vector {vector} is not transverse at vertex {vertex}")]
    NotTransverse { vertex: usize, vector: String },

    #[error("no transverse vector with sup-norm <= {0}")]
    SearchExhausted(u64),

    #[error("degenerate facet {facet}: {reason}")]
    DegenerateFacet { facet: usize, reason: String },

    #[error("step guard of {max_steps} exceeded")]
    GuardExceeded {
        max_steps: usize,
        partial: Box<ResolutionTrace>,
    },

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),

    #[error("internal consistency: {0}")]
    Internal(String),

    #[error("schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
