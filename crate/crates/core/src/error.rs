use thiserror::Error;

/// Errors produced by the biclique toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed caller input: out-of-range vertices, bad orderings, unranked edges.
    #[error("invalid input: {0}")]
    Input(String),

    /// A graph that must be chordal is not. `position` is the first ordering
    /// position whose later neighbors fail to form a clique.
    #[error("graph is not chordal: later neighbors of vertex {vertex} (position {position}) do not form a clique")]
    NotChordal { vertex: usize, position: usize },

    /// A structural precondition that is not chordality (invalid clique tree, bad shape).
    #[error("precondition violated: {0}")]
    Domain(String),

    /// The instance exceeds a configured search cap.
    #[error("size limit exceeded: {0}")]
    Size(String),

    /// An exact search ran past its vertex, edge or time budget.
    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
