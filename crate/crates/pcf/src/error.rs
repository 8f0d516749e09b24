use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The caller handed us something outside an operation's contract:
    /// out-of-range vertices, self-loops, undersized lists, non-tree input
    /// to the tree solver, and so on.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A text file (edge list, list assignment, coloring) failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// `check_pcf` demands a total coloring; names the vertices missing one.
    #[error("coloring is partial; uncolored vertices: {0:?}")]
    PartialColoring(Vec<usize>),

    /// The tree solver ran out of moves on an instance the theorem says it
    /// must solve. Carries a dump of the offending instance so the report
    /// can be reproduced. This error firing means a bug (or a false
    /// theorem), never a property of the input.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// An internal invariant broke, e.g. the greedy pass found every list
    /// color forbidden even though the counting argument says one is free.
    #[error("internal contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
