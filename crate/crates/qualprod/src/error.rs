use thiserror::Error;

/// Crate-wide error type.
///
/// The variants map onto the distinct failure classes surfaced by the CLI:
/// `Parse` for malformed input documents, `Resource` for exceeded search or
/// dimension bounds, `StatementHolds` for witness requests against statements
/// that in fact hold, and `Dimension`/`Index`/`Domain` for contract
/// violations in library calls.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("statement {0} holds for this pattern; no witness exists")]
    StatementHolds(crate::classify::Statement),

    /// An internal cross-check failed. These are build-breaking defects, not
    /// user errors: the two routes that must agree (leaf deletion vs. subtree
    /// search, stated vs. recomputed certificate values, ...) disagreed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
