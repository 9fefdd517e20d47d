use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto documented exit codes:
/// `InvalidInstance` -> 2, parse/config/geometry errors -> 3,
/// `MasterBoundary` -> 4.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    MasterBoundary(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
