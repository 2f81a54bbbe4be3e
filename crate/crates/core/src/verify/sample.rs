//! Seeded samplers for the verification grids.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{LaurentPoly, MultiLaurentPoly};
use crate::asw::{LogBasis, LogDifferential};
use crate::witt::{WittContext, WittVector};

/// Integer Witt vector with entries in `[-bound, bound]`.
pub fn integer_vector<G: Rng>(rng: &mut G, ctx: &Arc<WittContext>, bound: i64) -> WittVector<BigInt> {
    let comps = (0..ctx.length()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    WittVector::new(ctx.clone(), comps).expect("length matches")
}

fn unit<G: Rng>(rng: &mut G, p: u32) -> i64 {
    rng.gen_range(1..p as i64)
}

/// A Laurent polynomial with up to `terms` monomials, exponents in `lo..=hi`.
pub fn laurent<G: Rng>(rng: &mut G, p: u32, lo: i64, hi: i64, terms: usize) -> LaurentPoly {
    let k = rng.gen_range(0..=terms);
    LaurentPoly::from_terms(p, (0..k).map(|_| (rng.gen_range(lo..=hi), rng.gen_range(0..p as i64))))
}

/// A Witt vector over `F_p[t, t^-1]` whose slot `i` has exponents at least
/// `-⌊bound / p^{m-i}⌋`, so that `v_witt ≥ -bound`.
pub fn witt_in_fil<G: Rng>(rng: &mut G, ctx: &Arc<WittContext>, bound: i64, top: i64) -> WittVector<LaurentPoly> {
    let (p, m) = (ctx.p(), ctx.m());
    let comps = (0..=m)
        .map(|i| {
            let w = (p as i64).pow((m - i) as u32);
            laurent(rng, p, -(bound / w), top, 2)
        })
        .collect();
    WittVector::new(ctx.clone(), comps).expect("length matches")
}

/// `v_p(n)`, for `n > 0`.
fn p_adic_order(mut n: i64, p: i64) -> u32 {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Whether `n` is the Swan conductor of some character of `W_{m+1}`:
/// `n = 0` or `v_p(n) ≤ m`.
pub fn conductor_attainable(p: u32, m: usize, n: i64) -> bool {
    n == 0 || p_adic_order(n, p as i64) as usize <= m
}

/// A representative with `v_witt = -n` exactly whose leading term cannot be
/// reduced: slot `m - v_p(n)` carries `c·t^{-e}` with `p ∤ e`, the remaining
/// terms stay inside `fil_n` with nonpositive-or-`top` exponents.
pub fn witt_with_conductor<G: Rng>(
    rng: &mut G,
    ctx: &Arc<WittContext>,
    n: i64,
    top: i64,
) -> Option<WittVector<LaurentPoly>> {
    let (p, m) = (ctx.p(), ctx.m());
    if !conductor_attainable(p, m, n) {
        return None;
    }
    if n == 0 {
        let comps = (0..=m).map(|_| laurent(rng, p, 0, top, 2)).collect();
        return Some(WittVector::new(ctx.clone(), comps).expect("length matches"));
    }
    let slot = m - p_adic_order(n, p as i64) as usize;
    let e = n / (p as i64).pow((m - slot) as u32);
    let base = witt_in_fil(rng, ctx, n - 1, top);
    let mut comps = base.into_components();
    let lead = LaurentPoly::monomial(p, -e, unit(rng, p));
    comps[slot] = crate::algebra::Ring::add(&comps[slot], &lead);
    if comps[slot].coeff(-e) == 0 {
        comps[slot] = lead;
    }
    Some(WittVector::new(ctx.clone(), comps).expect("length matches"))
}

/// `c·dlog t` with `ord_t c = -e` exactly; the other terms have exponents in
/// `(-e, top]`.
pub fn form_with_level<G: Rng>(rng: &mut G, p: u32, e: i64, top: i64) -> LogDifferential<LaurentPoly> {
    let tail = laurent(rng, p, -e + 1, top.max(-e + 1), 3);
    let c = crate::algebra::Ring::add(&tail, &LaurentPoly::monomial(p, -e, unit(rng, p)));
    LogDifferential::new(LogBasis::DlogT, vec![c]).expect("rank 1")
}

/// A bivariate Laurent polynomial with exponents in `lo..=hi` in each variable.
pub fn bivariate<G: Rng>(rng: &mut G, p: u32, lo: i64, hi: i64, terms: usize) -> MultiLaurentPoly {
    let k = rng.gen_range(0..=terms);
    let terms = (0..k).map(|_| {
        (vec![rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)], rng.gen_range(0..p as i64))
    });
    MultiLaurentPoly::from_terms(p, 2, terms).expect("arity 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asw::{swan_conductor, AswCharacter};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_conductors_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m) in [(2, 0), (2, 1), (3, 1), (2, 2)] {
            let ctx = WittContext::shared(p, m).unwrap();
            for n in 0..=9 {
                let Some(a) = witt_with_conductor(&mut rng, &ctx, n, 1) else {
                    assert!(!conductor_attainable(p, m, n));
                    continue;
                };
                let cert = swan_conductor(&AswCharacter::from_witt(a)).unwrap();
                assert_eq!(cert.value(), Some(n), "p={p} m={m} n={n}");
            }
        }
    }
}
