//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by set, graph, skeleton and reaction-system operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} out of range for universe of size {universe}")]
    ElementOutOfRange { element: usize, universe: usize },

    #[error("mask width {found} does not match expected width {expected}")]
    WidthMismatch { found: usize, expected: usize },

    #[error("vertex {vertex} out of range for graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("duplicate base point {point}")]
    DuplicateBasePoint { point: String },

    /// A construction would materialize more state than the configured cap allows.
    #[error("size {requested} exceeds cap {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },

    /// An operation's precondition failed; the message names the check.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("cannot synthesize reaction system: {0}")]
    Synthesis(String),

    /// A value fails its structural invariants at construction time.
    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
