use thiserror::Error;

/// Errors produced by the cell model, the counting functions and the object queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {value} exceeds the supported range (|c| <= {limit})")]
    CoordinateOutOfRange { value: i64, limit: i64 },

    #[error("cell dimension {index} out of range {min}..={max}")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("expected an n-voxel, found a {0}-cell")]
    NotAVoxel(usize),

    #[error("the two voxels are equal")]
    EqualVoxels,

    #[error("cell {0} is not a cell of the object")]
    NotACellOfObject(String),

    #[error("duplicate voxel {0}")]
    DuplicateVoxel(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("ambient dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("enumeration volume {volume} exceeds the cap {cap}")]
    VolumeTooLarge { volume: u64, cap: u64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
