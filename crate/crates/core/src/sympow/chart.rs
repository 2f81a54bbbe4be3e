use std::sync::Arc;

use crate::algebra::{
    elementary, pullback_i, sym_to_elementary, LaurentPoly, MultiLaurentPoly, Ring, SFraction,
};
use crate::asw::{fmd, swan_conductor, AswCharacter, LogBasis, LogDifferential, SwanCertificate};
use crate::witt::{WittContext, WittVector, DEFAULT_LENGTH_CAP};
use crate::{Error, Result, Valuation};

/// Default cap on the symmetric-power arity `d`.
pub const DEFAULT_ARITY_CAP: usize = 3;

/// A differential `Σ c_k dS_k/S_d` on the symmetric power near the
/// exceptional divisor.
pub type OmegaForm = LogDifferential<SFraction>;

/// The chart of `C^(d)` near `dP`: upstairs variables `t_1..t_d`, local
/// coordinates `S_1..S_d` (elementary symmetric functions), and the
/// exceptional valuation in which `S_d` is a uniformizer.
#[derive(Clone, Debug)]
pub struct SymmetricChart {
    p: u32,
    d: usize,
    ctx: Arc<WittContext>,
}

/// Sympow conductor result: the upstream certificate, the certificate at the
/// exceptional divisor, and the expected `⌊n/d⌋`.
#[derive(Clone, Debug)]
pub struct SympowCertificate {
    pub upstairs: SwanCertificate<LaurentPoly>,
    pub exceptional: SwanCertificate<SFraction>,
    pub expected: i64,
    /// `v(λα) ≥ −⌊n/d⌋` held for the reduced representative.
    pub lambda_bound_holds: bool,
}

#[derive(Clone, Debug)]
pub struct AnbasisReport {
    pub d: usize,
    pub j: i64,
    /// Row `r`: coefficients of `S_d^j · ω_{jd+1+r}` against `dS_k/S_d`.
    pub matrix: Vec<Vec<SFraction>>,
    pub det: SFraction,
    pub entries_integral: bool,
    pub det_valuation: Valuation,
    pub routes_agree: bool,
    pub pass: bool,
}

fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].zero_like();
    for col in 0..n {
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][col].mul(&determinant(&minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Minor of `m` with row `r` and column `c` removed.
fn minor<R: Ring>(m: &[Vec<R>], r: usize, c: usize) -> Vec<Vec<R>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

impl SymmetricChart {
    pub fn new(p: u32, m: usize, d: usize) -> Result<Self> {
        Self::with_caps(p, m, d, DEFAULT_LENGTH_CAP, DEFAULT_ARITY_CAP, None)
    }

    pub fn with_caps(
        p: u32,
        m: usize,
        d: usize,
        length_cap: usize,
        arity_cap: usize,
        cache_dir: Option<&std::path::Path>,
    ) -> Result<Self> {
        if d < 2 || d > arity_cap {
            return Err(Error::Domain(format!("arity d = {d} outside 2..={arity_cap}")));
        }
        let ctx = WittContext::shared_with(p, m, length_cap, cache_dir)?;
        Ok(SymmetricChart { p, d, ctx })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ctx(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    fn s_const(&self, c: i64) -> SFraction {
        SFraction::from_poly(MultiLaurentPoly::constant(self.p, self.d, c)).expect("constant")
    }

    /// `S_k` for `0 ≤ k ≤ d` (`S_0 = 1`).
    fn s(&self, k: usize) -> SFraction {
        if k == 0 {
            self.s_const(1)
        } else {
            SFraction::s_var(self.p, self.d, k)
        }
    }

    /// `dS_k` as a form: `S_d` against `dS_k/S_d`.
    fn d_s(&self, k: usize) -> OmegaForm {
        let mut coeffs = vec![SFraction::zero(self.p, self.d); self.d];
        coeffs[k - 1] = self.s(self.d);
        LogDifferential::new(LogBasis::Symmetric { d: self.d }, coeffs).expect("rank d")
    }

    fn zero_form(&self) -> OmegaForm {
        LogDifferential::zero(&SFraction::zero(self.p, self.d))
    }

    /// `pr_1^*α ⊞ ⋯ ⊞ pr_d^*α` in `W_{m+1}(K'')`, before descending to `K'`.
    pub fn lambda_upstairs(&self, alpha: &WittVector<LaurentPoly>) -> Result<WittVector<MultiLaurentPoly>> {
        if *alpha.ctx().as_ref() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut acc: Option<WittVector<MultiLaurentPoly>> = None;
        for i in 1..=self.d {
            let pulled = alpha.try_map(|a| pullback_i(a, i, self.d))?;
            acc = Some(match acc {
                None => pulled,
                Some(a) => a.add(&pulled)?,
            });
        }
        Ok(acc.expect("d >= 2"))
    }

    /// `λ(α)`, with every component rewritten in `S_1..S_d`.
    pub fn lambda_pushforward(&self, alpha: &WittVector<LaurentPoly>) -> Result<WittVector<SFraction>> {
        self.lambda_upstairs(alpha)?.try_map(|c| {
            sym_to_elementary(c).map_err(|e| match e {
                Error::NotSymmetric(..) => Error::Internal(format!("λ produced a non-symmetric component: {e}")),
                other => other,
            })
        })
    }

    /// Jacobian data: `B_{jk} = t_j ∂e_k/∂t_j`, so that
    /// `dS_k/S_d = Σ_j (B_{jk}/S_d) dlog t_j`.
    fn jacobian(&self) -> Vec<Vec<MultiLaurentPoly>> {
        let es: Vec<_> = (1..=self.d).map(|k| elementary(self.p, self.d, k)).collect();
        (0..self.d).map(|j| es.iter().map(|e| e.euler_partial(j)).collect()).collect()
    }

    /// Converts a symmetric form `Σ_j g_j dlog t_j` into the basis
    /// `dS_k/S_d` by solving `B h = S_d g` with the adjugate of `B`.
    pub fn descend_form(&self, upstairs: &[MultiLaurentPoly]) -> Result<OmegaForm> {
        assert_eq!(upstairs.len(), self.d);
        let b = self.jacobian();
        let det = determinant(&b);
        if det.is_zero() {
            return Err(Error::Internal("singular Jacobian".into()));
        }
        let ed = elementary(self.p, self.d, self.d);
        let rhs: Vec<_> = upstairs.iter().map(|g| g.mul(&ed)).collect();
        let mut coeffs = Vec::with_capacity(self.d);
        for k in 0..self.d {
            // (adj B)_{kj} = (−1)^{j+k} det(minor(B, j, k))
            let mut num = MultiLaurentPoly::zero(self.p, self.d);
            for (j, r) in rhs.iter().enumerate() {
                let cof = determinant(&minor(&b, j, k)).mul(r);
                num = if (j + k) % 2 == 0 { num.add(&cof) } else { num.sub(&cof) };
            }
            let h = num.divexact(&det)?;
            coeffs.push(sym_to_elementary(&h).map_err(|e| Error::Internal(format!("μ descent: {e}")))?);
        }
        LogDifferential::new(LogBasis::Symmetric { d: self.d }, coeffs)
    }

    /// `μ(ω) = Σ_i pr_i^* ω`, expressed against `dS_k/S_d`.
    pub fn mu_pushforward(&self, omega: &LogDifferential<LaurentPoly>) -> Result<OmegaForm> {
        if omega.basis() != LogBasis::DlogT {
            return Err(Error::Domain("μ expects a form in the dlog t basis".into()));
        }
        let c = &omega.coeffs()[0];
        let g = (1..=self.d).map(|i| pullback_i(c, i, self.d)).collect::<Result<Vec<_>>>()?;
        self.descend_form(&g)
    }

    /// `μ(ω)` via `c·t^e dlog t = c·ω_{1−e}` and the recursion for `ω_i`.
    pub fn mu_via_omega_basis(&self, omega: &LogDifferential<LaurentPoly>) -> Result<OmegaForm> {
        let c = &omega.coeffs()[0];
        let (Some((lo, _)), Some((hi, _))) = (c.lowest_term(), c.highest_term()) else {
            return Ok(self.zero_form());
        };
        let table = self.omega_range(1 - hi, 1 - lo);
        let mut acc = self.zero_form();
        for (e, coeff) in c.terms() {
            let w = &table[(1 - e - (1 - hi)) as usize];
            acc = acc.add(&w.scale(&self.s_const(coeff as i64)));
        }
        Ok(acc)
    }

    /// `ω_lo, …, ω_hi` from the generating-function recursions.
    fn omega_range(&self, lo: i64, hi: i64) -> Vec<OmegaForm> {
        let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        let pos = if hi >= 1 { self.omega_positive(hi as usize) } else { Vec::new() };
        let neg = if lo <= 0 { self.omega_nonpositive((1 - lo) as usize) } else { Vec::new() };
        for i in lo..=hi {
            if i >= 1 {
                out.push(pos[(i - 1) as usize].clone());
            } else {
                out.push(neg[(-i) as usize].clone());
            }
        }
        out
    }

    /// `ω_1, …, ω_n` from `dF = F Σ_{r≥0} ω_{r+1} T^r`, `F = Π (T − t_i)`:
    /// `(−1)^d S_d ω_{r+1} = [T^r]dF − Σ_{q=1}^{min(r,d)} (−1)^{d−q} S_{d−q} ω_{r+1−q}`.
    fn omega_positive(&self, n: usize) -> Vec<OmegaForm> {
        let d = self.d;
        let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
        let mut out: Vec<OmegaForm> = Vec::with_capacity(n);
        for r in 0..n {
            let mut acc = if r < d {
                let ds = self.d_s(d - r);
                if sign(d - r) > 0 { ds } else { ds.scale(&self.s_const(-1)) }
            } else {
                self.zero_form()
            };
            for q in 1..=r.min(d) {
                let term = out[r - q].scale(&self.s(d - q));
                acc = if sign(d - q) > 0 { acc.sub(&term) } else { acc.add(&term) };
            }
            let acc = if sign(d) > 0 { acc } else { acc.scale(&self.s_const(-1)) };
            let coeffs = acc.coeffs().iter().map(|c| c.div_sd_pow(1)).collect();
            out.push(LogDifferential::new(LogBasis::Symmetric { d }, coeffs).expect("rank d"));
        }
        out
    }

    /// `ω_0, ω_{−1}, …, ω_{1−n}` from `F = Π (1 − t_i T)`:
    /// `ω_{1−s} = −(−1)^s dS_s − Σ_{k=1}^{min(d,s−1)} (−1)^k S_k ω_{1−s+k}`.
    fn omega_nonpositive(&self, n: usize) -> Vec<OmegaForm> {
        let d = self.d;
        let mut out: Vec<OmegaForm> = Vec::with_capacity(n);
        for s in 1..=n {
            let mut acc = if s <= d {
                let ds = self.d_s(s);
                if s % 2 == 0 { ds.scale(&self.s_const(-1)) } else { ds }
            } else {
                self.zero_form()
            };
            for k in 1..=d.min(s - 1) {
                // ω_{1−s+k} sits at index s−1−k.
                let term = out[s - 1 - k].scale(&self.s(k));
                acc = if k % 2 == 0 { acc.sub(&term) } else { acc.add(&term) };
            }
            out.push(acc);
        }
        out
    }

    /// `ω_i` from the recursion alone.
    pub fn omega_recursion(&self, i: i64) -> OmegaForm {
        self.omega_range(i, i).pop().expect("one form")
    }

    /// `ω_i = Σ_j t_j^{1−i} dlog t_j` descended through the Jacobian.
    pub fn omega_jacobian(&self, i: i64) -> Result<OmegaForm> {
        let g = (1..=self.d)
            .map(|j| pullback_i(&LaurentPoly::monomial(self.p, 1 - i, 1), j, self.d))
            .collect::<Result<Vec<_>>>()?;
        self.descend_form(&g)
    }

    /// `ω_i`, computed by both routes; disagreement is an internal error.
    pub fn omega_basis(&self, i: i64) -> Result<OmegaForm> {
        let rec = self.omega_recursion(i);
        let jac = self.omega_jacobian(i)?;
        if rec != jac {
            return Err(Error::Internal(format!("ω_{i}: recursion {rec} differs from Jacobian route {jac}")));
        }
        Ok(rec)
    }

    /// `v^log` at the exceptional divisor against `dS_k/S_d`.
    pub fn v_log_exceptional(omega: &OmegaForm) -> Valuation {
        omega.v_log()
    }

    /// Checks that `ω_{jd+1}, …, ω_{(j+1)d}` is a basis of `S_d^{−j} Ω(log)`:
    /// the matrix of `S_d^j ω_{jd+1+r}` against `dS_k/S_d` must have integral
    /// entries and a unit determinant.
    pub fn anbasis_check(&self, j: i64) -> Result<AnbasisReport> {
        let d = self.d as i64;
        let lo = j * d + 1;
        let hi = (j + 1) * d;
        let rec = self.omega_range(lo, hi);
        let mut routes_agree = true;
        for (i, w) in (lo..=hi).zip(&rec) {
            routes_agree &= *w == self.omega_jacobian(i)?;
        }
        let factor = if j >= 0 {
            self.s(self.d).pow(j as u64)
        } else {
            self.s_const(1).div_sd_pow((-j) as u64)
        };
        let matrix: Vec<Vec<SFraction>> =
            rec.iter().map(|w| w.coeffs().iter().map(|c| c.mul(&factor)).collect()).collect();
        let det = determinant(&matrix);
        let entries_integral = matrix.iter().flatten().all(|c| c.v_exceptional() >= Valuation::Finite(0));
        let det_valuation = det.v_exceptional();
        let pass = routes_agree && entries_integral && det_valuation == Valuation::Finite(0);
        Ok(AnbasisReport { d: self.d, j, matrix, det, entries_integral, det_valuation, routes_agree, pass })
    }

    /// Swan conductor of `χ^(d)` at the exceptional divisor, certified by
    /// `F^m d λα = μ F^m d α`.
    pub fn sympow_swan(&self, chi: &AswCharacter) -> Result<SympowCertificate> {
        let upstairs = swan_conductor(chi)?;
        if !upstairs.certified {
            return Err(Error::Domain("upstream Swan conductor is not certified".into()));
        }
        let n = upstairs.n;
        let expected = n.div_euclid(self.d as i64);
        let lambda = self.lambda_pushforward(&upstairs.reduced)?;
        let lambda_bound_holds = lambda.in_fil(expected, SFraction::v_exceptional);
        let witness = if n == 0 {
            self.zero_form()
        } else {
            self.mu_pushforward(&fmd(&upstairs.reduced))?
        };
        let mut exceptional = SwanCertificate::from_representative(lambda, witness);
        if n == 0 {
            // An unramified character stays unramified on the symmetric power.
            exceptional.n = 0;
            exceptional.certified = true;
            exceptional.bounds = (0, 0);
        }
        Ok(SympowCertificate { upstairs, exceptional, expected, lambda_bound_holds })
    }
}
