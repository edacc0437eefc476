use thiserror::Error;

use crate::complex::{GenId, GeneratorKey, ValidationReport};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structural problem with a complex or document (duplicate ids, dangling arrows, bad JSON).
    #[error("parse error: {0}")]
    Parse(String),

    /// The complex fails one of the checks in [`ValidationReport`].
    #[error("invalid complex: {}", .0.summary())]
    Invalid(Box<ValidationReport>),

    #[error("y-slice homology has rank {rank}, expected 1")]
    SliceRank { rank: usize },

    #[error("grading conflict at generator {generator}: derived {first} and {second}")]
    GradingConflict { generator: GenId, first: i64, second: i64 },

    #[error("truncation touches ungraded generator {0}")]
    UngradedTouched(GenId),

    #[error("chain term {0} is not in the truncation window")]
    KeyOutOfWindow(GeneratorKey),

    #[error("no tower class survives in the window")]
    NoTower,

    #[error("window {window} exhausted before the class died")]
    WindowExhausted { window: i64 },

    #[error("element is not a cycle")]
    NotACycle,

    #[error("element is zero in homology")]
    ZeroClass,

    #[error("computed correction term {value} is odd")]
    OddInvariant { value: i64 },

    #[error("signature {0} is odd")]
    OddSignature(i64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cone truncation b = {b} is below g + 2 = {min}")]
    TruncationTooSmall { b: i64, min: i64 },

    #[error("tower multiset changed between b = {b} and b = {}", .b + 2)]
    Unstable { b: i64 },
}
