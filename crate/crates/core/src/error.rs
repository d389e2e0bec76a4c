use thiserror::Error;

/// Crate-wide error type.
///
/// `Inconsistency` is reserved for checks that are mathematically guaranteed
/// to pass; seeing one means the implementation (not the input) is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition {partition:?} does not fit in a {rows}x{cols} rectangle")]
    Containment {
        partition: Vec<usize>,
        rows: usize,
        cols: usize,
    },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Resource(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
