use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside the range where the object is defined.
    #[error("invalid parameters: {0}")]
    Domain(String),

    /// Grassmannian box larger than the configured limit.
    #[error("Grassmannian box {rows}x{cols} has {cells} cells, above the limit of {limit} (raise it with --max-box)")]
    Size {
        rows: usize,
        cols: usize,
        cells: usize,
        limit: usize,
    },

    /// Operands that must share an ambient space do not.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Two independent evaluation routes disagreed.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
