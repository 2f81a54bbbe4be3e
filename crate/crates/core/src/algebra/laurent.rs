use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{reduce_bigint, reduce_i64, FieldElem, Ring};
use crate::{Error, Result, Valuation};

/// A Laurent polynomial in one variable `t` over `F_p`, stored sparsely.
///
/// No zero coefficients are stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    p: u32,
    terms: BTreeMap<i64, u32>,
}

fn accumulate(terms: &mut BTreeMap<i64, u32>, e: i64, c: u32, p: u32) {
    if c == 0 {
        return;
    }
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = (*o.get() + c) % p;
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl LaurentPoly {
    pub fn zero(p: u32) -> Self {
        LaurentPoly { p, terms: BTreeMap::new() }
    }

    pub fn constant(p: u32, c: i64) -> Self {
        Self::monomial(p, 0, c)
    }

    pub fn monomial(p: u32, exp: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, exp, reduce_i64(c, p), p);
        LaurentPoly { p, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(p: u32, terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut map, e, reduce_i64(c, p), p);
        }
        LaurentPoly { p, terms: map }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> u32 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `t`-adic order: the minimal exponent with nonzero coefficient.
    pub fn ord_t(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&e) => Valuation::Finite(e),
            None => Valuation::Infinity,
        }
    }

    pub fn lowest_term(&self) -> Option<(i64, u32)> {
        self.terms.iter().next().map(|(&e, &c)| (e, c))
    }

    pub fn highest_term(&self) -> Option<(i64, u32)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p);
        }
        let terms = self.terms.iter().map(|(&e, &a)| (e, a * c % self.p)).collect();
        LaurentPoly { p: self.p, terms }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(&e, &c)| (e + k, c)).collect();
        LaurentPoly { p: self.p, terms }
    }

    /// `t · df/dt`, the coefficient of `f` against `dlog t`.
    pub fn log_derivative(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&e, &c) in &self.terms {
            accumulate(&mut terms, e, (reduce_i64(e, self.p) * c) % self.p, self.p);
        }
        LaurentPoly { p: self.p, terms }
    }

    /// `f^(p^k)`: exponents scale by `p^k`, coefficients are fixed by Frobenius on `F_p`.
    pub fn frobenius_power(&self, k: u32) -> Self {
        let q = (self.p as i64).pow(k);
        let terms = self.terms.iter().map(|(&e, &c)| (e * q, c)).collect();
        LaurentPoly { p: self.p, terms }
    }

    /// Exact division in `F_p[t, t^-1]`.
    pub fn divexact(&self, divisor: &Self) -> Result<Self> {
        assert_eq!(self.p, divisor.p, "mismatched characteristics");
        let Some((low_b, _)) = divisor.lowest_term() else {
            return Err(Error::Domain("division by zero".into()));
        };
        let Some((low_a, _)) = self.lowest_term() else {
            return Ok(Self::zero(self.p));
        };
        // Units of the Laurent ring are monomials; divide the polynomial parts.
        let mut rem = self.shift(-low_a);
        let b = divisor.shift(-low_b);
        let (deg_b, lead_b) = b.highest_term().expect("nonzero");
        let inv = FieldElem::new(self.p, lead_b as i64).inverse().expect("unit").value();
        let mut quot = BTreeMap::new();
        while let Some((deg_r, lead_r)) = rem.highest_term() {
            if deg_r < deg_b {
                return Err(Error::InexactDivision);
            }
            let c = lead_r * inv % self.p;
            let e = deg_r - deg_b;
            accumulate(&mut quot, e, c, self.p);
            rem = rem.sub(&b.shift(e).scale(c));
        }
        Ok(LaurentPoly { p: self.p, terms: quot }.shift(low_a - low_b))
    }

    pub fn negate_exponents(&self) -> Self {
        let terms = self.terms.iter().map(|(&e, &c)| (-e, c)).collect();
        LaurentPoly { p: self.p, terms }
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.p, 1)
    }

    fn embed_integer(&self, n: &BigInt) -> Self {
        Self::monomial(self.p, 0, reduce_bigint(n, self.p) as i64)
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            accumulate(&mut terms, e, c, self.p);
        }
        LaurentPoly { p: self.p, terms }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&e, &c)| (e, self.p - c)).collect();
        LaurentPoly { p: self.p, terms }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        let mut terms = BTreeMap::new();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                accumulate(&mut terms, ea + eb, ca * cb % self.p, self.p);
            }
        }
        LaurentPoly { p: self.p, terms }
    }

    fn pow(&self, e: u64) -> Self {
        let p = self.p as u64;
        let mut acc = self.one_like();
        let mut rest = e;
        let mut k = 0;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let frob = self.frobenius_power(k);
                for _ in 0..digit {
                    acc = acc.mul(&frob);
                }
            }
            rest /= p;
            k += 1;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, c) => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[F_{}]({})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: u32, terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(p, terms.iter().copied())
    }

    #[test]
    fn frobenius_on_binomial_char_two() {
        let f = lp(2, &[(0, 1), (1, 1)]);
        assert_eq!(f.mul(&f), lp(2, &[(0, 1), (2, 1)]));
    }

    #[test]
    fn additive_inverse() {
        let f = lp(5, &[(-3, 2), (4, 1)]);
        assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn divexact_matches_long_division() {
        // (t^2 - 1) / (t - 1) = t + 1 over F_3
        let a = lp(3, &[(2, 1), (0, -1)]);
        let b = lp(3, &[(1, 1), (0, -1)]);
        assert_eq!(a.divexact(&b).unwrap(), lp(3, &[(1, 1), (0, 1)]));
        // Laurent shifts are units.
        let a = lp(3, &[(-1, 1), (-3, -1)]);
        assert_eq!(a.divexact(&b).unwrap(), lp(3, &[(-2, 1), (-3, 1)]));
    }

    #[test]
    fn divexact_rejects_remainder() {
        let a = lp(3, &[(2, 1), (0, 1)]);
        let b = lp(3, &[(1, 1), (0, -1)]);
        assert!(matches!(a.divexact(&b), Err(Error::InexactDivision)));
        assert!(a.divexact(&LaurentPoly::zero(3)).is_err());
    }

    #[test]
    fn ord_t_examples() {
        assert_eq!(lp(2, &[(-3, 1), (2, 1)]).ord_t(), Valuation::Finite(-3));
        assert_eq!(LaurentPoly::zero(3).ord_t(), Valuation::Infinity);
        assert_eq!(LaurentPoly::constant(7, 3).ord_t(), Valuation::Finite(0));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for p in [2u32, 3, 5] {
            let f = lp(p, &[(-2, 1), (0, 2), (1, 1)]);
            let mut naive = f.one_like();
            for e in 0..13u64 {
                assert_eq!(f.pow(e), naive, "p={p} e={e}");
                naive = naive.mul(&f);
            }
        }
    }

    #[test]
    fn log_derivative_kills_p_th_powers() {
        let f = lp(3, &[(-3, 1), (6, 2), (1, 1)]);
        assert_eq!(f.log_derivative(), lp(3, &[(1, 1)]));
    }

    #[test]
    fn constants_from_integers() {
        let z = LaurentPoly::zero(5);
        assert_eq!(z.embed_integer(&BigInt::from(-7)), LaurentPoly::constant(5, 3));
    }
}
