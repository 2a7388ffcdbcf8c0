//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("puncture count must be at least 3, got {0}")]
    DiskTooSmall(usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("non-essential curve: {0}")]
    NonEssential(String),

    #[error("empty multicurve")]
    EmptyMulticurve,

    #[error("not a multicurve vector: {0}")]
    NotAMulticurve(String),

    #[error("curves live on different disks ({0} vs {1} punctures)")]
    DiskMismatch(usize, usize),

    #[error("invalid curve diagram: {0}")]
    InvalidDiagram(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("zero twist power (use the identity explicitly)")]
    ZeroPower,

    #[error("unbound generator label: {0}")]
    UnboundGenerator(String),

    #[error("not opposite at region ({0}, {1})")]
    NotOpposite(usize, usize),

    #[error("incomplete partition: {0}")]
    IncompletePartition(String),

    #[error("family error: {0}")]
    Family(String),
}
