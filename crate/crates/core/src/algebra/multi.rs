use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use super::{reduce_bigint, reduce_i64, FieldElem, LaurentPoly, Ring};
use crate::{Error, Result, Valuation};

/// A sparse Laurent polynomial over `F_p` in a fixed number of variables.
///
/// Variables are positional; the caller decides whether they are
/// `t_1..t_d`, `S_1..S_d` or `x, y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiLaurentPoly {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Vec<i64>, u32>,
}

fn accumulate(terms: &mut BTreeMap<Vec<i64>, u32>, e: Vec<i64>, c: u32, p: u32) {
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

impl MultiLaurentPoly {
    pub fn zero(p: u32, nvars: usize) -> Self {
        MultiLaurentPoly { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u32, nvars: usize, c: i64) -> Self {
        Self::monomial(p, vec![0; nvars], c)
    }

    pub fn monomial(p: u32, exps: Vec<i64>, c: i64) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, exps, reduce_i64(c, p), p);
        MultiLaurentPoly { p, nvars, terms }
    }

    /// The `i`-th variable (0-based).
    pub fn variable(p: u32, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(p, e, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, i64)>>(
        p: u32,
        nvars: usize,
        terms: I,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Domain(format!(
                    "exponent vector of length {} in a polynomial with {nvars} variables",
                    e.len()
                )));
            }
            accumulate(&mut map, e, reduce_i64(c, p), p);
        }
        Ok(MultiLaurentPoly { p, nvars, terms: map })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], u32)> + '_ {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i64]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&[i64], u32)> {
        self.terms.iter().next_back().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    /// Order of vanishing at the origin: the minimal total degree of a
    /// monomial. Only defined for genuine polynomials.
    pub fn mindeg_total(&self) -> Result<Valuation> {
        if self.has_negative_exponent() {
            return Err(Error::Domain("mindeg_total needs nonnegative exponents".into()));
        }
        Ok(self.monomial_order())
    }

    /// Minimal total degree over all monomials, negative exponents allowed.
    /// This is the monomial valuation with every variable of weight one.
    pub fn monomial_order(&self) -> Valuation {
        self.terms
            .keys()
            .map(|e| Valuation::Finite(e.iter().sum()))
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    /// Componentwise minimum of the exponent vectors (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut mins: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            mins = Some(match mins {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        mins.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e.swap(i, j);
                (e, c)
            })
            .collect();
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    /// Checks invariance under every transposition of variables; adjacent
    /// transpositions generate the symmetric group.
    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.nvars.saturating_sub(1) {
            if self.swap_vars(i, i + 1) != *self {
                return Err(Error::NotSymmetric(i + 1, i + 2));
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    /// `x_j ∂f/∂x_j`: the coefficient of `f` against `dlog x_j`.
    pub fn euler_partial(&self, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let k = reduce_i64(e[j], self.p);
            accumulate(&mut terms, e.clone(), k * c % self.p, self.p);
        }
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    /// `∂f/∂x_j`.
    pub fn partial(&self, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let k = reduce_i64(e[j], self.p);
            if k == 0 {
                continue;
            }
            let mut e = e.clone();
            e[j] -= 1;
            accumulate(&mut terms, e, k * c % self.p, self.p);
        }
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    /// Multiplication by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c))
            .collect();
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p, self.nvars);
        }
        let terms = self.terms.iter().map(|(e, &a)| (e.clone(), a * c % self.p)).collect();
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    pub fn frobenius_power(&self, k: u32) -> Self {
        let q = (self.p as i64).pow(k);
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.iter().map(|x| x * q).collect(), c))
            .collect();
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    /// Exact division in `F_p[x_1^±1, …, x_n^±1]`.
    pub fn divexact(&self, divisor: &Self) -> Result<Self> {
        assert_eq!(self.p, divisor.p, "mismatched characteristics");
        assert_eq!(self.nvars, divisor.nvars, "mismatched variable counts");
        if divisor.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Strip monomial factors (units); then the quotient is a polynomial
        // and lex leading-term division terminates.
        let ma = self.min_exponents();
        let mb = divisor.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&ma));
        let b = divisor.shift(&neg(&mb));
        let (lead_b_exp, lead_b) = b.leading_term().map(|(e, c)| (e.to_vec(), c)).unwrap();
        let inv = FieldElem::new(self.p, lead_b as i64).inverse().unwrap().value();
        let mut quot = BTreeMap::new();
        while let Some((lead_r_exp, lead_r)) = rem.leading_term() {
            let e: Vec<i64> = lead_r_exp.iter().zip(&lead_b_exp).map(|(a, b)| a - b).collect();
            if e.iter().any(|&x| x < 0) {
                return Err(Error::InexactDivision);
            }
            let c = lead_r * inv % self.p;
            let step = b.shift(&e).scale(c);
            accumulate(&mut quot, e, c, self.p);
            rem = rem.sub(&step);
        }
        let q = MultiLaurentPoly { p: self.p, nvars: self.nvars, terms: quot };
        let offset: Vec<i64> = ma.iter().zip(&mb).map(|(a, b)| a - b).collect();
        Ok(q.shift(&offset))
    }

    /// Evaluates at ring elements, one per variable. Exponents must be
    /// nonnegative.
    pub fn evaluate<R: Ring>(&self, values: &[R]) -> Result<R> {
        assert_eq!(values.len(), self.nvars);
        if self.has_negative_exponent() {
            return Err(Error::Domain("cannot evaluate negative exponents".into()));
        }
        let like = values.first().expect("at least one variable");
        let mut cache: Vec<HashMap<i64, R>> = vec![HashMap::new(); self.nvars];
        let mut acc = like.zero_like();
        for (e, &c) in &self.terms {
            let mut term = like.embed_integer(&BigInt::from(c));
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = cache[j].entry(k).or_insert_with(|| values[j].pow(k as u64));
                term = term.mul(pw);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Graded-lexicographic listing of terms (ascending total degree, then
    /// ascending exponent vectors).
    pub fn sorted_terms(&self) -> Vec<(Vec<i64>, u32)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        v
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MultiDisplay { poly: self, names }
    }

    pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

struct MultiDisplay<'a> {
    poly: &'a MultiLaurentPoly,
    names: &'a [String],
}

impl fmt::Display for MultiDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            for (name, &k) in self.names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    k => factors.push(format!("{name}^{k}")),
                }
            }
            match (factors.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, c) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::default_names("x", self.nvars);
        write!(f, "MultiLaurentPoly[F_{}]({})", self.p, self.display_with(&names))?;
        Ok(())
    }
}

impl Ring for MultiLaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.nvars)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.p, self.nvars, 1)
    }

    fn embed_integer(&self, n: &BigInt) -> Self {
        Self::constant(self.p, self.nvars, reduce_bigint(n, self.p) as i64)
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        assert_eq!(self.nvars, other.nvars, "mismatched variable counts");
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            accumulate(&mut terms, e.clone(), c, self.p);
        }
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), self.p - c)).collect();
        MultiLaurentPoly { p: self.p, nvars: self.nvars, terms }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mismatched characteristics");
        assert_eq!(self.nvars, other.nvars, "mismatched variable counts");
        let p = self.p;
        let mut acc: HashMap<Vec<i64>, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca * cb) % p;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        MultiLaurentPoly { p, nvars: self.nvars, terms }
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

/// `pr_i^*`: substitutes `t ↦ t_i` (1-based `i`) into a polynomial in `d` variables.
pub fn pullback_i(f: &LaurentPoly, i: usize, d: usize) -> Result<MultiLaurentPoly> {
    if i == 0 || i > d {
        return Err(Error::Domain(format!("projection index {i} outside 1..={d}")));
    }
    let terms = f.terms().map(|(e, c)| {
        let mut v = vec![0; d];
        v[i - 1] = e;
        (v, c as i64)
    });
    MultiLaurentPoly::from_terms(f.p(), d, terms)
}
