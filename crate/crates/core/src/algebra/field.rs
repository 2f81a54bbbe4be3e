use std::fmt;

use num_bigint::BigInt;

use super::Ring;
use crate::{Error, Result};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

pub fn check_prime(p: u32) -> Result<u32> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(p)
    } else {
        Err(Error::UnsupportedPrime(p))
    }
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    p: u32,
    value: u32,
}

impl FieldElem {
    pub fn new(p: u32, value: i64) -> Self {
        FieldElem { p, value: super::reduce_i64(value, p) }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn inverse(self) -> Option<FieldElem> {
        if self.value == 0 {
            return None;
        }
        // a^(p-2)
        Some(self.pow(self.p as u64 - 2))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for FieldElem {
    fn zero_like(&self) -> Self {
        FieldElem { p: self.p, value: 0 }
    }

    fn one_like(&self) -> Self {
        FieldElem { p: self.p, value: 1 % self.p }
    }

    fn embed_integer(&self, n: &BigInt) -> Self {
        FieldElem { p: self.p, value: super::reduce_bigint(n, self.p) }
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        FieldElem { p: self.p, value: (self.value + other.value) % self.p }
    }

    fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        FieldElem { p: self.p, value: (self.value + self.p - other.value) % self.p }
    }

    fn neg(&self) -> Self {
        FieldElem { p: self.p, value: (self.p - self.value) % self.p }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        FieldElem { p: self.p, value: self.value * other.value % self.p }
    }
}
