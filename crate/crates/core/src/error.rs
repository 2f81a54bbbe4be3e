use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported prime {0}; expected one of 2, 3, 5, 7")]
    UnsupportedPrime(u32),
    #[error("inexact division: divisor does not divide dividend")]
    InexactDivision,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial is not symmetric under the transposition of variables {0} and {1}")]
    NotSymmetric(usize, usize),
    #[error("operands belong to different Witt contexts")]
    ContextMismatch,
    #[error("slot {slot} out of range for Witt vectors of length {length}")]
    SlotOutOfRange { slot: usize, length: usize },
    #[error("Witt length {length} exceeds the configured cap {cap}")]
    LengthCap { length: usize, cap: usize },
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("corrupt cache file {path}: {msg} (run `cache clear` then `cache build` to rebuild)")]
    CorruptCache { path: PathBuf, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
