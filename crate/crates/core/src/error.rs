use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("graph is disconnected: `{unreachable}` is not reachable from `{from}`")]
    Disconnected { from: String, unreachable: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex declaration `{0}`")]
    DuplicateVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid generator `{spec}`: {message}")]
    InvalidGenerator { spec: String, message: String },
    #[error("simplex must be non-empty")]
    EmptySimplex,
    #[error("complex is not downward closed: face {face} of {simplex} is missing")]
    NotDownwardClosed { simplex: String, face: String },
    #[error("subcomplex is not contained in the total complex: {0}")]
    NotSubcomplex(String),
    #[error("length {0} is outside the supported range (need l >= 3)")]
    LengthTooSmall(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("invalid type labeling: {0}")]
    Labeling(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
