use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("empty word not allowed here: {0}")]
    EmptyWord(&'static str),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("operation requires rank >= 2 (centre of a rank-1 free group is nontrivial)")]
    RankOne,
    #[error("family word is a proper power: {0}")]
    ProperPowerFamily(String),
    #[error("inconsistent path endpoints: {0}")]
    InconsistentPath(String),
    #[error("invalid graph of groups: {0}")]
    InvalidGraph(String),
    #[error("invalid graph-of-groups automorphism: {0}")]
    InvalidGogAut(String),
    #[error("graph map must fix the base vertex (or supply a connecting path)")]
    BaseMoved,
    #[error("operation requires a trivial graph map")]
    NontrivialGraphMap,
    #[error("graph of groups is not efficient ({0}); theorem-level checks refuse to run")]
    NotEfficient(String),
    #[error("could not eliminate relations to a free basis of the fundamental group: {0}")]
    NotRecognisedFree(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("unsupported vertex group type: {0}")]
    UnsupportedVertexGroup(String),
    #[error("tree ball radius {0} exceeds the configured cap {1}")]
    RadiusCap(usize, usize),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
