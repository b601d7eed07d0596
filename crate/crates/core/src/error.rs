use thiserror::Error;

use crate::vertex_set::VertexSet;

/// Errors raised by the library and mapped to CLI exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacError {
    /// Malformed input: vertex out of range, invalid family, bad parameters.
    #[error("input error: {0}")]
    Input(String),

    /// Vertex `v` is not a face, so `{v}` would be a minimal non-face of size 1.
    #[error("vertex {vertex} is not a face of the complex (ghost vertex); remove it first")]
    GhostVertex { vertex: u32 },

    /// The operation's precondition selects the other branch of the dichotomy.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A configured size limit would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
}

impl MacError {
    pub(crate) fn facet_out_of_range(facet: VertexSet, n: usize) -> Self {
        MacError::Input(format!("facet {facet} has a vertex outside 1..={n}"))
    }
}

pub type Result<T, E = MacError> = std::result::Result<T, E>;
