//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by constructors, parsers, and the operations that can
/// reject their input.  Enumeration routines never error on valid inputs;
/// everything that validates input returns [`Result`].
#[derive(Debug, Error)]
pub enum Error {
    /// Graph construction or validation failed (loop edge, duplicate edge,
    /// undeclared endpoint, too few vertices, label out of range, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A vertex subset refers to labels the graph does not have, or is empty
    /// where a non-empty set is required.
    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),

    /// Two partitions over different ground sets were combined.
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),

    /// A partition is not in the Γ-connected partition poset of the graph
    /// at hand (some block induces a disconnected subgraph).
    #[error("partition not in the poset: {0}")]
    NotInPoset(String),

    /// A building-set element, ambient, or ordering is inconsistent with the
    /// graph or with the rest of the input.
    #[error("invalid building data: {0}")]
    InvalidBuilding(String),

    /// A list of numbers violates a precondition (repeated value, zero,
    /// wrong length, hook parameter out of range).
    #[error("invalid number list: {0}")]
    InvalidList(String),

    /// A forest or tree violates an admissibility or shape constraint.
    #[error("invalid forest: {0}")]
    InvalidForest(String),

    /// A truncated series operation was applied to incompatible operands
    /// (order mismatch, non-zero constant term, unit coefficient missing).
    #[error("series error: {0}")]
    Series(String),
}

pub type Result<T> = std::result::Result<T, Error>;
