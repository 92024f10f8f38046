use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown root system `{0}` (expected A2, B2 or G2)")]
    UnknownRootSystem(String),

    #[error("unknown Grassmannian vertex `{0}` (expected P1 or P2)")]
    UnknownVertex(String),

    #[error("polygons need at least 3 sides, got {0}")]
    TooFewSides(usize),

    #[error("{n} sides exceeds the configured limit of {limit}")]
    TooManySides { n: usize, limit: usize },

    #[error("non-integral structure constant a[{total}] / (a[{left}] * a[{right}])")]
    NonIntegralStructureConstant {
        left: usize,
        right: usize,
        total: usize,
    },

    #[error("side {side} is not in the Weyl chamber: {reason}")]
    NotDominant { side: usize, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid generator index {0} in Weyl word")]
    BadWord(usize),

    #[error("cone is not pointed; lineality space has dimension {}", .lineality.len())]
    NotPointed { lineality: Vec<Vec<num::BigInt>> },

    #[error("invalid subspace: {0}")]
    Subspace(String),

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("subspace lattice exceeded the cap of {0} members")]
    LatticeCapExceeded(usize),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
