//! Truncated Witt vectors `W_{m+1}(A)` built from universal integral
//! polynomials, with the valuation `v(a) = min p^{m−i} v(a_i)` and its
//! filtration.

pub mod cache;
mod context;
mod intpoly;
mod vector;

pub use context::{UniversalKind, UniversalPoly, WittContext, DEFAULT_LENGTH_CAP};
pub use intpoly::IntPoly;
pub use vector::{ghost_components, WittVector};

#[cfg(test)]
mod tests;
