use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("infeasible switching times: {0}")]
    Infeasible(String),

    #[error("empty boundary: final time must be positive (got {0})")]
    EmptyBoundary(f64),

    #[error("pair cannot reach consensus: x1 gap {gap} exceeds 2*beta/b = {limit}")]
    InfeasiblePair { gap: f64, limit: f64 },

    #[error("consensus only in the limit t -> infinity: x1 gap {gap} equals 2*beta/b = {limit}")]
    NoFiniteTime { gap: f64, limit: f64 },

    #[error("triplet ({i}, {j}, {k}) violates the x1 spread condition: {reason}")]
    InfeasibleTriplet {
        i: usize,
        j: usize,
        k: usize,
        reason: String,
    },

    #[error("no feasible boundary intersection for triplet ({i}, {j}, {k}); {diagnostics}")]
    NoSolutionFound {
        i: usize,
        j: usize,
        k: usize,
        diagnostics: String,
    },

    #[error("point ({x1}, {x2}) is not reachable within the fuel budget")]
    NotReachable { x1: f64, x2: f64 },

    #[error("attainable sets do not intersect at the upper time bound {0}")]
    NoUpperBound(f64),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("elimination is degenerate: {0}")]
    DegenerateElimination(String),

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("singular linear system")]
    Singular,

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
