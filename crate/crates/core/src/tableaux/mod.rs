//! Partitions, LR fillings and sequences, and the LR coefficient.

mod enumerate;
mod filling;
mod partition;

use thiserror::Error;

pub use enumerate::{enumerate_fillings, enumerate_fillings_in, lr_coefficient};
pub use filling::{
    render_skew, sequence_from_filling, validate_filling, Filling, LRSequence, ValidityReport, Violation,
};
pub use partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauxError {
    #[error("{parts:?} is not a partition: part {at} is smaller than part {}", at + 1)]
    NotAPartition { parts: Vec<u32>, at: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad filling shape: {0}")]
    BadShape(String),
    #[error("lambda^({i}) is not a partition at part {j}")]
    InvalidSequence { i: usize, j: usize },
}
