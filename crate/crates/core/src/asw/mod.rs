//! Artin–Schreier–Witt characters of `F_p((t))` presented as Witt vectors
//! modulo `(F − 1)`, their Swan conductors, and certification through the
//! refined Swan conductor `F^m d`.

mod character;
mod differential;
mod swan;

pub use character::{reduce_representative, AswCharacter, Reduction, ReductionStep};
pub use differential::{fmd, v_log_local, LogBasis, LogDifferential, LogRing};
pub use swan::{certify, rsw_class, swan_conductor, Certification, SwanCertificate};
