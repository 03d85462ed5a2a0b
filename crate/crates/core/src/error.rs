use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: String,
        found: String,
    },
    #[error("{what} = {value} is out of range ({bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),
    #[error("invalid shift decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("incomplete coin specification: {0}")]
    IncompleteSpec(String),
    #[error("operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("unsupported decomposition: {0}")]
    UnsupportedDecomposition(String),
    #[error("circuit is not lowered: {0}")]
    NotLowered(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error(
        "validation failure for (n={n}, target={target}, coin={coin_init}, position={pos_init}): \
         {left} vs {right} deviate by {deviation:e}"
    )]
    Validation {
        n: usize,
        target: usize,
        coin_init: usize,
        pos_init: usize,
        left: &'static str,
        right: &'static str,
        deviation: f64,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(context: &'static str, expected: impl ToString, found: impl ToString) -> Error {
    Error::Dimension {
        context,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
