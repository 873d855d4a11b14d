use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph `{name}`: {}", violations.join("; "))]
    InvalidGraph { name: String, violations: Vec<String> },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("point is not on graph `{0}`")]
    PointNotOnGraph(String),

    #[error("parameter {0} is outside the open unit interval")]
    ParameterOutOfRange(String),

    #[error("no vertex of degree >= 3 is reachable")]
    NoFork,

    #[error("degenerate overlap: maps agree on edge `{edge}` over [{from}, {to}]")]
    DegenerateOverlap { edge: String, from: String, to: String },

    #[error("maps do not share domain and codomain graphs")]
    GraphMismatch,

    #[error("graph `{0}` is not a circle")]
    NotCircle(String),

    #[error("graph `{0}` is not an interval")]
    NotInterval(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
