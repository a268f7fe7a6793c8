use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph realization is not connected")]
    Disconnected,
    #[error("subdivision factor {0} is too coarse, need at least 2")]
    SubdivisionTooCoarse(usize),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("region is not canonical: {0}")]
    NonCanonicalRegion(String),
    #[error("region is empty")]
    EmptyRegion,
    #[error("subgraph does not belong to this graph")]
    SubgraphGraphMismatch,
    #[error("subgraphs are not over the same graph")]
    GraphMismatch,
    #[error("graph with {0} elements does not fit a 64-bit subgraph mask")]
    GraphTooLarge(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("graph is not a tangle")]
    NotATangle,
    #[error("avoid point lies inside the start subcontinuum")]
    PointInsideA,
    #[error("graph is not in the FT family")]
    NotInFT,
    #[error("invalid start: {0}")]
    InvalidStart(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("parse error on line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
