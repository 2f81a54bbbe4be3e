use std::fmt;

use num_bigint::BigInt;

use super::{expand_elementary, reduce_bigint, MultiLaurentPoly, Ring};
use crate::{Error, Result, Valuation};

/// A rational function `N(S_1, …, S_d) / S_d^M` in the symmetric chart.
///
/// Canonical form: `N` has nonnegative exponents, and `S_d` divides `N` only
/// when `N = 0` (stored as `0 / S_d^0`) or `M = 0`. `S_d` is a uniformizer of
/// the exceptional valuation, so `v(N / S_d^M) = ord_0(N) − M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SFraction {
    num: MultiLaurentPoly,
    den_pow: u64,
}

/// Cancels common powers of `S_d` between numerator and denominator.
pub fn sfrac_normalize(num: MultiLaurentPoly, den_pow: i64) -> Result<SFraction> {
    if den_pow < 0 {
        return Err(Error::Domain(format!("negative denominator exponent {den_pow}")));
    }
    if num.has_negative_exponent() {
        return Err(Error::Domain("SFraction numerator must be a polynomial".into()));
    }
    if num.nvars() == 0 {
        return Err(Error::Domain("SFraction needs at least one variable".into()));
    }
    if num.is_zero() {
        return Ok(SFraction { num, den_pow: 0 });
    }
    let d = num.nvars();
    let divisible = num.min_exponents()[d - 1];
    let k = divisible.min(den_pow);
    let num = if k > 0 {
        let mut shift = vec![0; d];
        shift[d - 1] = -k;
        num.shift(&shift)
    } else {
        num
    };
    Ok(SFraction { num, den_pow: (den_pow - k) as u64 })
}

impl SFraction {
    pub fn from_poly(num: MultiLaurentPoly) -> Result<Self> {
        sfrac_normalize(num, 0)
    }

    pub fn zero(p: u32, d: usize) -> Self {
        SFraction { num: MultiLaurentPoly::zero(p, d), den_pow: 0 }
    }

    /// `S_k` (1-based).
    pub fn s_var(p: u32, d: usize, k: usize) -> Self {
        SFraction { num: MultiLaurentPoly::variable(p, d, k - 1), den_pow: 0 }
    }

    pub fn numerator(&self) -> &MultiLaurentPoly {
        &self.num
    }

    pub fn den_pow(&self) -> u64 {
        self.den_pow
    }

    pub fn d(&self) -> usize {
        self.num.nvars()
    }

    pub fn p(&self) -> u32 {
        self.num.p()
    }

    /// Division by `S_d^k`.
    pub fn div_sd_pow(&self, k: u64) -> Self {
        sfrac_normalize(self.num.clone(), (self.den_pow + k) as i64).expect("canonical input")
    }

    /// The exceptional-divisor valuation `ord_0(N) − M`.
    pub fn v_exceptional(&self) -> Valuation {
        self.num
            .mindeg_total()
            .expect("canonical numerator")
            .shift(-(self.den_pow as i64))
    }

    /// Substitutes `S_k ↦ e_k(t_1, …, t_d)`: the element of `K''` this represents.
    pub fn expand(&self) -> MultiLaurentPoly {
        let d = self.d();
        expand_elementary(&self.num).shift(&vec![-(self.den_pow as i64); d])
    }

    /// Coefficients against the log basis `dS_1/S_d, …, dS_d/S_d`, i.e.
    /// `S_d · ∂f/∂S_k` for each `k`.
    pub fn log_partials(&self) -> Vec<SFraction> {
        let d = self.d();
        let m = self.den_pow as i64;
        let mut shift = vec![0; d];
        shift[d - 1] = 1;
        (0..d)
            .map(|k| {
                let mut n = self.num.partial(k).shift(&shift);
                if k == d - 1 && m != 0 {
                    n = n.sub(&self.num.scale(super::reduce_i64(m, self.p())));
                }
                sfrac_normalize(n, m).expect("polynomial numerator")
            })
            .collect()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        SFractionDisplay { f: self, names }
    }

    pub fn s_names(d: usize) -> Vec<String> {
        MultiLaurentPoly::default_names("S", d)
    }
}

struct SFractionDisplay<'a> {
    f: &'a SFraction,
    names: &'a [String],
}

impl fmt::Display for SFractionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display_with(self.names);
        let sd = &self.names[self.names.len() - 1];
        match self.f.den_pow {
            0 => write!(f, "{num}"),
            1 => write!(f, "({num})/{sd}"),
            m => write!(f, "({num})/{sd}^{m}"),
        }
    }
}

impl fmt::Display for SFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::s_names(self.d());
        write!(f, "{}", self.display_with(&names))?;
        Ok(())
    }
}

impl fmt::Debug for SFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SFraction[F_{}]({})", self.p(), self)
    }
}

impl Ring for SFraction {
    fn zero_like(&self) -> Self {
        SFraction::zero(self.p(), self.d())
    }

    fn one_like(&self) -> Self {
        SFraction { num: self.num.one_like(), den_pow: 0 }
    }

    fn embed_integer(&self, n: &BigInt) -> Self {
        let c = reduce_bigint(n, self.p()) as i64;
        sfrac_normalize(MultiLaurentPoly::constant(self.p(), self.d(), c), 0).unwrap()
    }

    fn characteristic(&self) -> u32 {
        self.p()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        let d = self.d();
        let m = self.den_pow.max(other.den_pow);
        let lift = |x: &SFraction| {
            let mut shift = vec![0; d];
            shift[d - 1] = (m - x.den_pow) as i64;
            x.num.shift(&shift)
        };
        sfrac_normalize(lift(self).add(&lift(other)), m as i64).unwrap()
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        SFraction { num: self.num.neg(), den_pow: self.den_pow }
    }

    fn mul(&self, other: &Self) -> Self {
        sfrac_normalize(self.num.mul(&other.num), (self.den_pow + other.den_pow) as i64).unwrap()
    }

    fn pow(&self, e: u64) -> Self {
        if self.is_zero() {
            return if e == 0 { self.one_like() } else { self.clone() };
        }
        sfrac_normalize(self.num.pow(e), (self.den_pow * e) as i64).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u32, d: usize, terms: &[(&[i64], i64)]) -> MultiLaurentPoly {
        MultiLaurentPoly::from_terms(p, d, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let f = sfrac_normalize(s(3, 2, &[(&[1, 1], 1)]), 2).unwrap();
        assert_eq!(f.numerator(), &s(3, 2, &[(&[1, 0], 1)]));
        assert_eq!(f.den_pow(), 1);
        let g = sfrac_normalize(s(3, 2, &[(&[1, 0], 1)]), 0).unwrap();
        assert_eq!(g.den_pow(), 0);
        let z = sfrac_normalize(MultiLaurentPoly::zero(3, 2), 3).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.den_pow(), 0);
    }

    #[test]
    fn normalize_rejects_negative_denominator() {
        assert!(matches!(sfrac_normalize(s(3, 2, &[(&[1, 0], 1)]), -1), Err(Error::Domain(_))));
        assert!(sfrac_normalize(s(3, 2, &[(&[-1, 0], 1)]), 0).is_err());
    }

    #[test]
    fn exceptional_valuation_examples() {
        // S_1/S_2 -> 0, (S_1^3 + S_1 S_2)/S_2^3 -> -1, S_2 -> 1
        let a = sfrac_normalize(s(2, 2, &[(&[1, 0], 1)]), 1).unwrap();
        assert_eq!(a.v_exceptional(), Valuation::Finite(0));
        let b = sfrac_normalize(s(2, 2, &[(&[3, 0], 1), (&[1, 1], 1)]), 3).unwrap();
        assert_eq!(b.v_exceptional(), Valuation::Finite(-1));
        assert_eq!(SFraction::s_var(2, 2, 2).v_exceptional(), Valuation::Finite(1));
        assert_eq!(SFraction::zero(2, 2).v_exceptional(), Valuation::Infinity);
    }

    #[test]
    fn ring_ops_cancel_denominators() {
        let p = 5;
        let s1 = SFraction::s_var(p, 2, 1);
        let s2 = SFraction::s_var(p, 2, 2);
        let q = s1.div_sd_pow(1); // S1/S2
        assert_eq!(q.mul(&s2), s1);
        assert!(q.sub(&q).is_zero());
        assert_eq!(q.pow(3).den_pow(), 3);
    }

    #[test]
    fn log_partials_of_quotient() {
        // f = S1/S2: dS1 coefficient S2 * (1/S2) = 1, dS2 coefficient S2 * (-S1/S2^2) = -S1/S2.
        let p = 7;
        let f = SFraction::s_var(p, 2, 1).div_sd_pow(1);
        let parts = f.log_partials();
        assert_eq!(parts[0], f.one_like());
        assert_eq!(parts[1], f.neg());
    }
}
