use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Elements and indices carried by the variants are 1-based, as everywhere
/// else in the public API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation of 1..{degree}: {reason}")]
    NotAPermutation { degree: usize, reason: String },

    #[error("empty table")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table of order {0} exceeds the supported maximum of 255")]
    TableTooLarge(usize),
    #[error("entry ({row},{column}) = {value} is outside 1..{order}")]
    EntryOutOfRange { row: usize, column: usize, value: i64, order: usize },
    #[error("not idempotent: {0}*{0} != {0}")]
    NotIdempotent(usize),
    #[error("column {column} is not a permutation: value {value} repeats")]
    ColumnNotPermutation { column: usize, value: usize },
    #[error("not right self-distributive at ({i},{j},{k}): (i*j)*k != (i*k)*(j*k)")]
    NotRightDistributive { i: usize, j: usize, k: usize },
    #[error("element {element} is outside 1..{order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("quandle is not connected ({blocks} orbits)")]
    NotConnected { blocks: usize },

    #[error("{t} is not a unit modulo {n}")]
    NotAUnit { n: usize, t: usize },
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("invalid construction spec {spec:?}: {reason}")]
    BadConstruction { spec: String, reason: String },

    #[error("order {order} exceeds the enumeration guard {guard}")]
    OrderTooLarge { order: usize, guard: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("cannot omit the fixed point of {0}: it does not have exactly one")]
    IllegalOmission(String),
    #[error("entry {0:?} has no Q_{{n,m}} catalog name")]
    MissingCatalogName(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
