use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use super::{UniversalKind, WittContext};
use crate::algebra::Ring;
use crate::{Error, Result, Valuation};

/// A truncated Witt vector `(a_0, …, a_m)` over a coefficient ring `R`.
#[derive(Clone, Debug)]
pub struct WittVector<R> {
    ctx: Arc<WittContext>,
    comps: Vec<R>,
}

impl<R: PartialEq> PartialEq for WittVector<R> {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.comps == other.comps
    }
}

impl<R: Ring> WittVector<R> {
    pub fn new(ctx: Arc<WittContext>, comps: Vec<R>) -> Result<Self> {
        if comps.len() != ctx.length() {
            return Err(Error::Domain(format!(
                "expected {} Witt components, got {}",
                ctx.length(),
                comps.len()
            )));
        }
        Ok(WittVector { ctx, comps })
    }

    pub fn zero(ctx: Arc<WittContext>, like: &R) -> Self {
        let comps = vec![like.zero_like(); ctx.length()];
        WittVector { ctx, comps }
    }

    /// Teichmüller lift `(a, 0, …, 0)`.
    pub fn teichmuller(ctx: Arc<WittContext>, a: R) -> Self {
        let mut comps = vec![a.zero_like(); ctx.length()];
        comps[0] = a;
        WittVector { ctx, comps }
    }

    /// `b` placed in component `slot`, zeros elsewhere.
    pub fn verschiebung_shift(ctx: Arc<WittContext>, b: R, slot: usize) -> Result<Self> {
        if slot >= ctx.length() {
            return Err(Error::SlotOutOfRange { slot, length: ctx.length() });
        }
        let mut comps = vec![b.zero_like(); ctx.length()];
        comps[slot] = b;
        Ok(WittVector { ctx, comps })
    }

    pub fn ctx(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    pub fn components(&self) -> &[R] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<R> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Ring::is_zero)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn binary(&self, other: &Self, kind: UniversalKind) -> Result<Self> {
        self.check_ctx(other)?;
        let inputs: Vec<&R> = self.comps.iter().chain(other.comps.iter()).collect();
        let comps = self.ctx.eval_all(kind, &inputs);
        Ok(WittVector { ctx: self.ctx.clone(), comps })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, UniversalKind::Sum)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, UniversalKind::Product)
    }

    pub fn neg(&self) -> Self {
        let inputs: Vec<&R> = self.comps.iter().collect();
        let comps = self.ctx.eval_all(UniversalKind::Negation, &inputs);
        WittVector { ctx: self.ctx.clone(), comps }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Componentwise `p`-th power; the Frobenius endomorphism when the
    /// coefficient ring has characteristic `p`.
    pub fn frobenius(&self) -> Self {
        debug_assert_eq!(self.comps[0].characteristic(), self.ctx.p());
        let p = self.ctx.p() as u64;
        let comps = self.comps.iter().map(|a| a.pow(p)).collect();
        WittVector { ctx: self.ctx.clone(), comps }
    }

    /// `(F − 1)(self)`.
    pub fn frobenius_minus_one(&self) -> Result<Self> {
        self.frobenius().sub(self)
    }

    /// `min_i p^{m−i} v(a_i)`, `+∞` for the zero vector.
    pub fn v_witt<F: Fn(&R) -> Valuation>(&self, v: F) -> Valuation {
        let p = self.ctx.p() as i64;
        let m = self.ctx.m() as u32;
        self.comps
            .iter()
            .enumerate()
            .map(|(i, a)| v(a).scale(p.pow(m - i as u32)))
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    /// Membership in `fil_n`: `v_witt ≥ −n`.
    pub fn in_fil<F: Fn(&R) -> Valuation>(&self, n: i64, v: F) -> bool {
        self.v_witt(v).in_fil(n)
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, f: F) -> WittVector<S> {
        WittVector { ctx: self.ctx.clone(), comps: self.comps.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring, F: FnMut(&R) -> Result<S>>(&self, f: F) -> Result<WittVector<S>> {
        let comps = self.comps.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(WittVector { ctx: self.ctx.clone(), comps })
    }

    /// Repeated addition; `n · self`.
    pub fn times(&self, n: u64) -> Result<Self> {
        let mut acc = WittVector::zero(self.ctx.clone(), &self.comps[0]);
        for _ in 0..n {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }
}

/// Ghost components `w_n = Σ_{i≤n} p^i a_i^{p^{n−i}}` of an integer Witt vector.
pub fn ghost_components(a: &WittVector<BigInt>) -> Vec<BigInt> {
    let p = BigInt::from(a.ctx.p());
    (0..a.ctx.length())
        .map(|n| {
            (0..=n)
                .map(|i| {
                    p.clone().pow(i as u32) * a.comps[i].clone().pow((a.ctx.p() as u64).pow((n - i) as u32))
                })
                .sum()
        })
        .collect()
}
