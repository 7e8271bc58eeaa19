use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {vertices} vertices; exact search is capped at {cap}")]
    Oversize { vertices: usize, cap: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("coloring is not a proper {k}-coloring of the graph")]
    ImproperColoring { k: usize },

    #[error("label {0:?} is not a prime")]
    NotPrime(String),

    #[error("no prime ≡ {residue} (mod {modulus}) found below {bound}")]
    DirichletExhausted { modulus: u64, residue: u64, bound: u64 },

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: u128, cap: u64 },

    #[error("invalid group spec: {0}")]
    InvalidGroup(String),

    #[error("invalid integer set: {0}")]
    InvalidSet(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
