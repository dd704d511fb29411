use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    /// The arguments are well formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The caller supplied an argument that violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{what} has {size} elements, above the cap of {cap}; use sampling instead")]
    TooLarge { what: String, size: String, cap: u64 },
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::Error::Domain(alloc::format!($($arg)*)) };
}

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::Error::InvalidArgument(alloc::format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use invalid;
