use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A polynomial with integer coefficients and nonnegative exponents, used for
/// the universal Witt polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    pub(crate) fn from_raw(nvars: usize, terms: BTreeMap<Vec<u32>, BigInt>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        IntPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        IntPoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::constant(self.nvars, BigInt::one());
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

    /// Divides every coefficient by `k`, failing if any division is inexact.
    pub fn div_exact(&self, k: &BigInt) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "ghost division by {k} left remainder {r} on a coefficient"
                )));
            }
            terms.insert(e.clone(), q);
        }
        Ok(IntPoly { nvars: self.nvars, terms })
    }

    pub fn eval_integers(&self, values: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::Pow::pow(v, k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Renders with variable names; ascending total degree, descending lex
    /// order within a degree.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        IntPolyDisplay { poly: self, names }
    }
}

struct IntPolyDisplay<'a> {
    poly: &'a IntPoly,
    names: &'a [String],
}

impl fmt::Display for IntPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = self
                .names
                .iter()
                .zip(e.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}
