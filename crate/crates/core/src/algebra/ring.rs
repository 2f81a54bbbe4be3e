use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative ring whose elements know enough about their parent ring to
/// manufacture constants (`zero_like`, `embed_integer`). Witt vector
/// arithmetic is generic over this trait.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Image of an integer under the structure map `Z → R`.
    fn embed_integer(&self, n: &BigInt) -> Self;
    /// `0` for the integers, `p` for `F_p`-algebras.
    fn characteristic(&self) -> u32;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn one_like(&self) -> Self {
        BigInt::one()
    }

    fn embed_integer(&self, n: &BigInt) -> Self {
        n.clone()
    }

    fn characteristic(&self) -> u32 {
        0
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn pow(&self, e: u64) -> Self {
        num_traits::Pow::pow(self, e)
    }
}
