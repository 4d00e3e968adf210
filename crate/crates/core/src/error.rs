use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition parts must be positive, got {0}")]
    NonPositivePart(i64),

    #[error("{what} must be at least {min}, got {value}")]
    IndexOutOfRange {
        what: &'static str,
        min: i64,
        value: i64,
    },

    #[error("part {0} does not occur in the partition")]
    MissingPart(u32),

    #[error("part {part} is not larger than the shift {shift}")]
    PartNotAboveShift { part: u32, shift: u32 },

    #[error("part {part} is smaller than the shift {shift}")]
    PartBelowShift { part: u32, shift: u32 },

    #[error("value {0} does not occur in the multiset")]
    MissingValue(String),

    #[error("multiset entries must be non-negative, got {0}")]
    NegativeEntry(String),

    #[error("weight {weight} exceeds the configured cap {cap}")]
    CapExceeded { weight: u64, cap: u32 },

    #[error("partition weight {weight} is smaller than r·s = {rs}")]
    WeightBelowShift { weight: u64, rs: u64 },

    #[error(
        "coefficient for {parts:?} (r={r}, s={s}) reduced to {value}, which is not an integer"
    )]
    NonIntegral {
        parts: Vec<u32>,
        r: u32,
        s: u32,
        value: String,
    },

    #[error("ψ-derivative symbols cannot be differentiated in composed mode")]
    IndependentSymbolInComposedMode,

    #[error("parse error: {0}")]
    Parse(String),
}
