//! Exact arithmetic for Artin–Schreier–Witt characters of equal-characteristic
//! local fields: truncated Witt vectors, Swan conductors certified through the
//! refined Swan conductor, and the symmetric-power / blow-up conductor calculus
//! (pushforwards `λ`, `μ`, the `ω_i` log-basis, product blow-ups).
//!
//! Everything is exact over prime fields `F_p`, `p ∈ {2, 3, 5, 7}`.

pub mod algebra;
pub mod asw;
mod error;
pub mod format;
pub mod sympow;
pub mod valuation;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
pub use valuation::Valuation;
