//! Exact arithmetic over prime fields: Laurent polynomials in one or several
//! variables, symmetric rewriting into elementary symmetric functions, and the
//! monomial valuations built on top of them.

mod field;
mod laurent;
mod multi;
mod ring;
mod sfraction;
mod symmetric;

pub use field::{check_prime, FieldElem, SUPPORTED_PRIMES};
pub use laurent::LaurentPoly;
pub use multi::{pullback_i, MultiLaurentPoly};
pub use ring::Ring;
pub use sfraction::{sfrac_normalize, SFraction};
pub use symmetric::{elementary, expand_elementary, sym_to_elementary};

/// Reduces a signed integer into `[0, p)`.
pub(crate) fn reduce_i64(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

pub(crate) fn reduce_bigint(n: &num_bigint::BigInt, p: u32) -> u32 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    n.mod_floor(&num_bigint::BigInt::from(p)).to_u32().expect("residue fits in u32")
}
