use thiserror::Error;

/// Errors produced by the group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Level parameter outside the supported range `2 ..= MAX_LEVEL`.
    #[error("unsupported level k = {k} (supported: 2 ..= {max})")]
    UnsupportedLevel { k: u32, max: u32 },

    /// A generator or series index outside its valid range.
    #[error("index {index} out of range for {what} (valid: {lo} ..= {hi})")]
    IndexOutOfRange {
        what: &'static str,
        index: u64,
        lo: u64,
        hi: u64,
    },

    /// Two elements from different group contexts were combined.
    #[error("context mismatch: elements from G_{lhs} and G_{rhs}")]
    ContextMismatch { lhs: u32, rhs: u32 },

    /// An operand that must be normal in G_k is not.
    #[error("operand subgroup is not normal in G_k")]
    NotNormal,

    /// An exhaustive enumeration would exceed the configured cap.
    #[error("enumeration of 2^{log_size} elements exceeds cap 2^{log_cap}")]
    Capacity { log_size: u32, log_cap: u32 },

    /// Parameters violate a documented constraint.
    #[error("constraint violation: {0}")]
    Constraint(String),

    /// A Hausdorff-dimension ratio was requested at a term of index 0.
    #[error("undefined ratio: series term equals the whole group")]
    UndefinedRatio,
}

pub type Result<T> = std::result::Result<T, Error>;
