use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: duplicate vertex `{name}`")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: edge mentions unknown vertex `{name}`")]
    UnknownVertexInEdge { line: usize, name: String },
    #[error("line {line}: loop edge `{name}-{name}` is not allowed")]
    LoopEdge { line: usize, name: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("exact chromatic number is capped at {cap} vertices, graph has {vertices}")]
    TooLargeForExact { vertices: usize, cap: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word: {0}")]
    WordSyntax(String),
    #[error("word is not reduced")]
    NotReduced,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word is empty")]
    EmptyWord,
    #[error("element is trivial")]
    TrivialElement,

    #[error("half-space {0} does not belong to the context")]
    NotInContext(String),
    #[error("convex hull exceeds the cap of {cap} vertices")]
    HullTooLarge { cap: usize },
    #[error("half-spaces are not nested in the required direction")]
    NotNested,
    #[error("chain of length {0} has no midpoint")]
    ChainTooShort(usize),

    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),
    #[error("unknown face id {0}")]
    UnknownFace(u64),
    #[error("face side count {0} is below four")]
    SideCountBelowFour(usize),
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
