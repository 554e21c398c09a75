use thiserror::Error;

use crate::element::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("excluded points must be positive integers, got 0")]
    ZeroPoint,

    #[error("shift {shift} moves min dom = {min_domain} outside the positive integers")]
    InvalidShift { shift: i64, min_domain: Point },

    #[error("offset {offset} is outside 2..={j}")]
    InvalidOffset { offset: u64, j: u64 },

    #[error("element {element} has noise {noise} > j = {j}")]
    OutsideClass { element: String, noise: u64, j: u64 },

    #[error("element {0} is not an idempotent")]
    NotIdempotent(String),

    #[error("{0} is not above the group identity 0")]
    NotInUpSet(String),

    #[error("sequence index {n} must exceed the largest kept offset {offset}")]
    OffsetOutOfRange { n: u64, offset: u64 },

    #[error("kept offset {offset} exceeds the noise bound j = {j}")]
    OutsideSpace { offset: u64, j: u64 },

    #[error("offset sets are equal; nothing to distinguish")]
    NotDistinct,

    #[error("window {window} is too small, need at least {required}")]
    WindowTooSmall { window: u64, required: u64 },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unexpected character {found:?} at column {column} in bicyclic word")]
    WordParse { column: usize, found: char },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
