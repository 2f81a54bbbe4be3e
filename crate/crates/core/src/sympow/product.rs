use std::sync::Arc;

use crate::algebra::{LaurentPoly, MultiLaurentPoly, Ring};
use crate::asw::{fmd, swan_conductor, AswCharacter, LogBasis, LogDifferential, SwanCertificate};
use crate::witt::{WittContext, WittVector};
use crate::{Error, Result, Valuation};

/// `X × Y` near `(P, Q)` with coordinates `x`, `y`. The blow-up along
/// `D × E` has exceptional valuation `v(x) = v(y) = 1`.
#[derive(Clone, Debug)]
pub struct ProductChart {
    p: u32,
    ctx: Arc<WittContext>,
}

#[derive(Clone, Debug)]
pub struct BlprodCertificate {
    pub first: SwanCertificate<LaurentPoly>,
    pub second: SwanCertificate<LaurentPoly>,
    pub product: SwanCertificate<MultiLaurentPoly>,
    /// The bivariate witness equals `F^m d α_1(x) + F^m d α_2(y)`.
    pub witness_splits: bool,
}

impl BlprodCertificate {
    pub fn expected(&self) -> i64 {
        self.first.n.max(self.second.n)
    }
}

/// `ω = f dlog x + g dlog y` with fil levels at the exceptional divisor;
/// `None` stands for level `−∞` (a zero part).
#[derive(Clone, Debug, PartialEq)]
pub struct DprodSplit {
    pub part_x: LogDifferential<MultiLaurentPoly>,
    pub part_y: LogDifferential<MultiLaurentPoly>,
    pub level_x: Option<i64>,
    pub level_y: Option<i64>,
    pub level: Option<i64>,
}

impl DprodSplit {
    pub fn recombine(&self) -> LogDifferential<MultiLaurentPoly> {
        self.part_x.add(&self.part_y)
    }
}

impl ProductChart {
    pub fn new(p: u32, m: usize) -> Result<Self> {
        Ok(ProductChart { p, ctx: WittContext::shared(p, m)? })
    }

    pub fn from_context(ctx: Arc<WittContext>) -> Self {
        ProductChart { p: ctx.p(), ctx }
    }

    pub fn ctx(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    /// Order of vanishing at the origin, extended to Laurent monomials.
    pub fn valuation(f: &MultiLaurentPoly) -> Valuation {
        f.monomial_order()
    }

    fn embed(&self, f: &LaurentPoly, slot: usize) -> MultiLaurentPoly {
        let terms = f.terms().map(|(e, c)| {
            let mut exps = vec![0, 0];
            exps[slot] = e;
            (exps, c as i64)
        });
        MultiLaurentPoly::from_terms(self.p, 2, terms).expect("arity 2")
    }

    fn embed_vector(&self, alpha: &WittVector<LaurentPoly>, slot: usize) -> Result<WittVector<MultiLaurentPoly>> {
        if *alpha.ctx().as_ref() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(alpha.map(|a| self.embed(a, slot)))
    }

    fn embed_form(&self, omega: &LogDifferential<LaurentPoly>, slot: usize) -> LogDifferential<MultiLaurentPoly> {
        let mut coeffs = vec![MultiLaurentPoly::zero(self.p, 2); 2];
        coeffs[slot] = self.embed(&omega.coeffs()[0], slot);
        LogDifferential::new(LogBasis::DlogVars { n: 2 }, coeffs).expect("rank 2")
    }

    /// Swan conductor of `χ_1 ⊠ χ_2 = δ(α_1(x) ⊞ α_2(y))` at the exceptional
    /// divisor of the blow-up along `D × E`.
    pub fn blprod_swan(&self, chi1: &AswCharacter, chi2: &AswCharacter) -> Result<BlprodCertificate> {
        let first = swan_conductor(chi1)?;
        let second = swan_conductor(chi2)?;
        if !first.certified || !second.certified {
            return Err(Error::Domain("factor Swan conductors must be certified".into()));
        }
        let sum = self.embed_vector(&first.reduced, 0)?.add(&self.embed_vector(&second.reduced, 1)?)?;
        let witness = fmd(&sum);
        let split = self.embed_form(&fmd(&first.reduced), 0).add(&self.embed_form(&fmd(&second.reduced), 1));
        let witness_splits = witness == split;
        let product = SwanCertificate::from_representative(sum, witness);
        Ok(BlprodCertificate { first, second, product, witness_splits })
    }

    /// Splits `ω = f dlog x + g dlog y` and reads off fil levels `−v(f)`, `−v(g)`.
    pub fn dprod_decompose(omega: &LogDifferential<MultiLaurentPoly>) -> Result<DprodSplit> {
        if omega.basis() != (LogBasis::DlogVars { n: 2 }) {
            return Err(Error::Domain("dprod_decompose expects a form in dlog x, dlog y".into()));
        }
        let c = omega.coeffs();
        let zero = c[0].zero_like();
        let part_x = LogDifferential::new(omega.basis(), vec![c[0].clone(), zero.clone()])?;
        let part_y = LogDifferential::new(omega.basis(), vec![zero, c[1].clone()])?;
        let level = |f: &MultiLaurentPoly| Self::valuation(f).level();
        let (level_x, level_y) = (level(&c[0]), level(&c[1]));
        Ok(DprodSplit { part_x, part_y, level_x, level_y, level: level_x.max(level_y) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mlp(terms: &[([i64; 2], i64)]) -> MultiLaurentPoly {
        MultiLaurentPoly::from_terms(3, 2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn form(f: MultiLaurentPoly, g: MultiLaurentPoly) -> LogDifferential<MultiLaurentPoly> {
        LogDifferential::new(LogBasis::DlogVars { n: 2 }, vec![f, g]).unwrap()
    }

    fn chi(chart: &ProductChart, e: i64) -> AswCharacter {
        let a = LaurentPoly::monomial(chart.ctx().p(), e, 1);
        AswCharacter::from_witt(WittVector::teichmuller(chart.ctx().clone(), a))
    }

    #[test]
    fn blprod_examples() {
        let c = ProductChart::new(2, 1).unwrap();
        for (n1, n2) in [(3, 2), (0, 0), (2, 2)] {
            let r = c.blprod_swan(&chi(&c, -n1), &chi(&c, -n2)).unwrap();
            assert!(r.witness_splits);
            assert_eq!(r.product.value(), Some(r.expected()));
        }
    }

    #[test]
    fn dprod_examples() {
        let s = ProductChart::dprod_decompose(&form(mlp(&[([-2, 0], 1)]), mlp(&[([0, -1], 1)]))).unwrap();
        assert_eq!((s.level_x, s.level_y, s.level), (Some(2), Some(1), Some(2)));
        let z = mlp(&[]);
        let s = ProductChart::dprod_decompose(&form(z.clone(), z.clone())).unwrap();
        assert_eq!(s.level, None);
        let dx = form(mlp(&[([1, 0], 1)]), z);
        let s = ProductChart::dprod_decompose(&dx).unwrap();
        assert_eq!(s.part_x, dx);
        assert_eq!(s.level, Some(-1));
        assert_eq!(s.recombine(), dx);
    }
}
