use crate::algebra::LaurentPoly;
use crate::witt::WittVector;
use crate::{Result, Valuation};

/// One reduction move: `(F − 1)(V^slot b)` was subtracted.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub slot: usize,
    pub b: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: WittVector<LaurentPoly>,
    pub history: Vec<ReductionStep>,
}

impl Reduction {
    /// Witt sum of the recorded `(F − 1)` terms; `alpha ⊟ reduced` equals this.
    pub fn replay(&self) -> Result<WittVector<LaurentPoly>> {
        let ctx = self.reduced.ctx().clone();
        let p = self.reduced.components()[0].p();
        let mut acc = WittVector::zero(ctx.clone(), &LaurentPoly::zero(p));
        for step in &self.history {
            let v = WittVector::verschiebung_shift(ctx.clone(), step.b.clone(), step.slot)?;
            acc = acc.add(&v.frobenius_minus_one()?)?;
        }
        Ok(acc)
    }
}

/// Brings a representative into reduced form: every component has
/// nonnegative `t`-order or an order prime to `p`.
///
/// Slots are processed in increasing order. Within a slot the leading term
/// `c·t^{−pk}` is cancelled by subtracting `(F − 1)(V^i(c·t^{−k}))`, which
/// leaves lower slots untouched and replaces the leading term by `c·t^{−k}`.
pub fn reduce_representative(alpha: &WittVector<LaurentPoly>) -> Result<Reduction> {
    let ctx = alpha.ctx().clone();
    let p = ctx.p() as i64;
    let mut cur = alpha.clone();
    let mut history = Vec::new();
    for slot in 0..ctx.length() {
        while let Some((e, c)) = cur.components()[slot].lowest_term() {
            if e >= 0 || e % p != 0 {
                break;
            }
            let b = LaurentPoly::monomial(ctx.p(), e / p, c as i64);
            let term = WittVector::verschiebung_shift(ctx.clone(), b.clone(), slot)?.frobenius_minus_one()?;
            cur = cur.sub(&term)?;
            history.push(ReductionStep { slot, b });
        }
    }
    Ok(Reduction { reduced: cur, history })
}

/// A `p`-power-order character `δ(α)` of `F_p((t))`, i.e. the class of `α`
/// in `W_{m+1}(K)/(F − 1)`.
#[derive(Clone, Debug)]
pub struct AswCharacter {
    alpha: WittVector<LaurentPoly>,
}

impl AswCharacter {
    pub fn from_witt(alpha: WittVector<LaurentPoly>) -> Self {
        AswCharacter { alpha }
    }

    pub fn alpha(&self) -> &WittVector<LaurentPoly> {
        &self.alpha
    }

    pub fn p(&self) -> u32 {
        self.alpha.ctx().p()
    }

    pub fn reduce(&self) -> Result<Reduction> {
        reduce_representative(&self.alpha)
    }

    /// A reduced representative is trivial exactly when all components have
    /// strictly positive order: `W(tF_p[[t]]) ⊂ (F − 1)W` and `F − 1` is zero on
    /// `W(F_p) ≅ Z/p^{m+1}`, so the constant-term vector must vanish.
    pub fn is_trivial(&self) -> Result<bool> {
        let reduced = self.reduce()?.reduced;
        Ok(reduced.components().iter().all(|a| a.ord_t() > Valuation::Finite(0)))
    }

    pub fn equals(&self, other: &AswCharacter) -> Result<bool> {
        AswCharacter::from_witt(self.alpha.sub(&other.alpha)?).is_trivial()
    }

    pub fn add(&self, other: &AswCharacter) -> Result<AswCharacter> {
        Ok(AswCharacter::from_witt(self.alpha.add(&other.alpha)?))
    }

    /// `p · α = V F α` in characteristic `p`.
    fn times_p(alpha: &WittVector<LaurentPoly>) -> WittVector<LaurentPoly> {
        let f = alpha.frobenius();
        let mut comps = vec![LaurentPoly::zero(alpha.ctx().p())];
        comps.extend(f.components()[..f.components().len() - 1].iter().cloned());
        WittVector::new(alpha.ctx().clone(), comps).expect("same length")
    }

    /// Order of the character as an element of `H^1(K, Z/p^{m+1})`.
    pub fn order(&self) -> Result<u64> {
        let mut cur = self.alpha.clone();
        let mut order = 1u64;
        for _ in 0..=self.alpha.ctx().length() {
            if AswCharacter::from_witt(cur.clone()).is_trivial()? {
                return Ok(order);
            }
            cur = Self::times_p(&cur);
            order *= self.p() as u64;
        }
        unreachable!("p^(m+1) kills W_(m+1)")
    }
}
