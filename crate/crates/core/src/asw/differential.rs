use std::fmt;

use serde::Serialize;

use crate::algebra::{LaurentPoly, MultiLaurentPoly, Ring, SFraction};
use crate::witt::WittVector;
use crate::{Error, Result, Valuation};

/// The declared basis of a module of log differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LogBasis {
    /// `dlog t` on the local field `F_p((t))`.
    DlogT,
    /// `dlog x_1, …, dlog x_n` on a field of Laurent polynomials (`x, y` for
    /// the product chart, `t_1..t_d` upstairs of the symmetric chart).
    DlogVars { n: usize },
    /// `dS_1/S_d, …, dS_d/S_d` at the exceptional divisor of the symmetric power.
    Symmetric { d: usize },
}

impl LogBasis {
    pub fn rank(self) -> usize {
        match self {
            LogBasis::DlogT => 1,
            LogBasis::DlogVars { n } => n,
            LogBasis::Symmetric { d } => d,
        }
    }

    pub fn names(self) -> Vec<String> {
        match self {
            LogBasis::DlogT => vec!["dlog t".into()],
            LogBasis::DlogVars { n: 2 } => vec!["dlog x".into(), "dlog y".into()],
            LogBasis::DlogVars { n } => (1..=n).map(|i| format!("dlog t{i}")).collect(),
            LogBasis::Symmetric { d } => (1..=d).map(|k| format!("dS{k}/S{d}")).collect(),
        }
    }
}

/// Coefficient rings carrying a log-differential structure and the valuation
/// used to measure it.
pub trait LogRing: Ring {
    fn log_basis(&self) -> LogBasis;
    /// Coefficients of `d(self)` in [`LogRing::log_basis`].
    fn log_partials(&self) -> Vec<Self>;
    /// The discrete valuation of the chart (`ord_t`, order at the origin, or
    /// the exceptional valuation).
    fn chart_valuation(&self) -> Valuation;
}

impl LogRing for LaurentPoly {
    fn log_basis(&self) -> LogBasis {
        LogBasis::DlogT
    }

    fn log_partials(&self) -> Vec<Self> {
        vec![self.log_derivative()]
    }

    fn chart_valuation(&self) -> Valuation {
        self.ord_t()
    }
}

impl LogRing for MultiLaurentPoly {
    fn log_basis(&self) -> LogBasis {
        LogBasis::DlogVars { n: self.nvars() }
    }

    fn log_partials(&self) -> Vec<Self> {
        (0..self.nvars()).map(|j| self.euler_partial(j)).collect()
    }

    fn chart_valuation(&self) -> Valuation {
        self.monomial_order()
    }
}

impl LogRing for SFraction {
    fn log_basis(&self) -> LogBasis {
        LogBasis::Symmetric { d: self.d() }
    }

    fn log_partials(&self) -> Vec<Self> {
        SFraction::log_partials(self)
    }

    fn chart_valuation(&self) -> Valuation {
        self.v_exceptional()
    }
}

/// `Σ_k c_k · b_k` for a declared log basis `b_1, …, b_r`.
#[derive(Clone, PartialEq, Debug)]
pub struct LogDifferential<R> {
    basis: LogBasis,
    coeffs: Vec<R>,
}

impl<R: LogRing> LogDifferential<R> {
    pub fn new(basis: LogBasis, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.len() != basis.rank() {
            return Err(Error::Domain(format!(
                "basis of rank {} needs {} coefficients, got {}",
                basis.rank(),
                basis.rank(),
                coeffs.len()
            )));
        }
        Ok(LogDifferential { basis, coeffs })
    }

    pub fn zero(like: &R) -> Self {
        let basis = like.log_basis();
        LogDifferential { basis, coeffs: vec![like.zero_like(); basis.rank()] }
    }

    /// `d(f)` in the log basis of `f`'s ring.
    pub fn exact(f: &R) -> Self {
        LogDifferential { basis: f.log_basis(), coeffs: f.log_partials() }
    }

    pub fn basis(&self) -> LogBasis {
        self.basis
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "mismatched log bases");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        LogDifferential { basis: self.basis, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "mismatched log bases");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        LogDifferential { basis: self.basis, coeffs }
    }

    pub fn scale(&self, f: &R) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.mul(f)).collect();
        LogDifferential { basis: self.basis, coeffs }
    }

    /// Largest `n` with `ω ∈ π^n Ω(log)`: the minimum valuation of the
    /// coefficients against the free basis.
    pub fn v_log(&self) -> Valuation {
        self.coeffs.iter().map(LogRing::chart_valuation).min().unwrap_or(Valuation::Infinity)
    }
}

impl fmt::Display for LogDifferential<LaurentPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·dlog t", self.coeffs[0])
    }
}

impl fmt::Display for LogDifferential<SFraction> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.basis.names();
        let mut first = true;
        for (c, b) in self.coeffs.iter().zip(&names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})·{b}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `v^log` on the local field: `ord_t` of the `dlog t` coefficient.
pub fn v_log_local(omega: &LogDifferential<LaurentPoly>) -> Valuation {
    omega.v_log()
}

/// `F^m d (a_0, …, a_m) = Σ_i a_i^{p^{m−i} − 1} da_i`.
pub fn fmd<R: LogRing>(alpha: &WittVector<R>) -> LogDifferential<R> {
    let p = alpha.ctx().p() as u64;
    let m = alpha.ctx().m() as u32;
    let comps = alpha.components();
    let mut acc = LogDifferential::zero(&comps[0]);
    for (i, a) in comps.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let weight = a.pow(p.pow(m - i as u32) - 1);
        acc = acc.add(&LogDifferential::exact(a).scale(&weight));
    }
    acc
}
