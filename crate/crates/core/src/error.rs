use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input contains the reserved separator token `#`")]
    SeparatorInInput,
    #[error("pattern length k={k} must satisfy 0 < k < n={n}")]
    BadK { k: usize, n: usize },
    #[error("sensitive position {pos} exceeds n-k={max}")]
    BadPosition { pos: usize, max: usize },
    #[error("sensitive pattern has length {len}, expected k={k}")]
    BadPatternLength { len: usize, k: usize },
    #[error("token `{0}` is not part of the alphabet")]
    UnknownToken(String),
    #[error("interval [{start}, {end}] is out of bounds for a string of length {len}")]
    OutOfBounds { start: usize, end: usize, len: usize },
    #[error("block {block} has length {len}, need more than {overlap}")]
    BlockTooShort { block: usize, len: usize, overlap: usize },
    #[error("malformed sanitized string: {0}")]
    MalformedSanitized(&'static str),
    #[error("Z cannot be constructed: no admissible replacement for separator {separator}")]
    Infeasible { separator: usize },
    #[error("Z cannot be constructed: no selection fits the weight budget {theta}")]
    OverBudget { theta: u64 },
    #[error("the instance has no non-sensitive pattern")]
    NoNonSensitive,
    #[error("implausibility threshold must be non-positive, got {0}")]
    InvalidRho(f64),
    #[error("frequency threshold tau must be at least 1")]
    InvalidTau,
    #[error("relative error is undefined when the optimal edit distance is zero")]
    UndefinedWhenZero,
    #[error("oracle enumeration budget exceeded ({0})")]
    BudgetExceeded(&'static str),
}

impl Error {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible { .. } | Error::OverBudget { .. })
    }
}
