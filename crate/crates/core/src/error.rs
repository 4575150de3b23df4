use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed graph at {location}: {message}")]
    GraphSyntax { location: String, message: String },
    #[error("invalid vertex name {name:?} at {location}")]
    BadVertexName { name: String, location: String },
    #[error("duplicate vertex {name:?} at {location}")]
    DuplicateVertex { name: String, location: String },
    #[error("loop edge on {name:?} at {location}")]
    LoopEdge { name: String, location: String },
    #[error("undeclared endpoint {name:?} at {location}")]
    UndeclaredEndpoint { name: String, location: String },
    #[error("graph has {0} vertices, at most 64 are supported")]
    TooManyVertices(usize),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("bad token {token:?} at position {position}")]
    BadToken { token: String, position: usize },
    #[error("images of adjacent vertices {0} and {1} do not commute")]
    NotAHomomorphism(String, String),
    #[error("finite group order exceeds the cap of {0}")]
    OrderCap(usize),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GraphSyntax { .. } => "graph_syntax",
            Error::BadVertexName { .. } => "bad_vertex_name",
            Error::DuplicateVertex { .. } => "duplicate_vertex",
            Error::LoopEdge { .. } => "loop_edge",
            Error::UndeclaredEndpoint { .. } => "undeclared_endpoint",
            Error::TooManyVertices(_) => "too_many_vertices",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::BadToken { .. } => "bad_token",
            Error::NotAHomomorphism(..) => "not_a_homomorphism",
            Error::OrderCap(_) => "order_cap",
            Error::Budget(_) => "budget",
            Error::Precondition(_) => "precondition",
            Error::Invalid(_) => "invalid_input",
        }
    }
}
