//! Rewriting symmetric Laurent polynomials in terms of elementary symmetric
//! functions `S_k = e_k(t_1, …, t_d)`.

use std::collections::{BTreeMap, HashMap};

use super::{sfrac_normalize, MultiLaurentPoly, Ring, SFraction};
use crate::Result;

/// `e_k(t_1, …, t_d)` for `0 ≤ k ≤ d` (`e_0 = 1`).
pub fn elementary(p: u32, d: usize, k: usize) -> MultiLaurentPoly {
    assert!(k <= d, "e_{k} undefined in {d} variables");
    let mut terms = Vec::new();
    // Subsets of size k as 0/1 exponent vectors.
    for mask in 0u32..(1 << d) {
        if mask.count_ones() as usize == k {
            let e = (0..d).map(|i| ((mask >> i) & 1) as i64).collect();
            terms.push((e, 1));
        }
    }
    MultiLaurentPoly::from_terms(p, d, terms).expect("well-formed")
}

/// Substitutes `S_k ↦ e_k(t)` into a polynomial in `S_1..S_d`.
pub fn expand_elementary(num: &MultiLaurentPoly) -> MultiLaurentPoly {
    let d = num.nvars();
    let es: Vec<_> = (1..=d).map(|k| elementary(num.p(), d, k)).collect();
    num.evaluate(&es).expect("nonnegative exponents")
}

fn is_sorted_desc(e: &[i64]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1])
}

/// Products `e_1^{a_1} ⋯ e_{d-1}^{a_{d-1}}`, built incrementally from smaller
/// products. `e_d` factors are handled as monomial shifts.
struct ElementaryProducts {
    basis: Vec<MultiLaurentPoly>,
    memo: HashMap<Vec<i64>, MultiLaurentPoly>,
}

impl ElementaryProducts {
    fn new(p: u32, d: usize) -> Self {
        let basis = (1..d).map(|k| elementary(p, d, k)).collect();
        let mut memo = HashMap::new();
        memo.insert(vec![0; d - 1], MultiLaurentPoly::constant(p, d, 1));
        ElementaryProducts { basis, memo }
    }

    fn get(&mut self, a: &[i64]) -> &MultiLaurentPoly {
        if !self.memo.contains_key(a) {
            let k = a.iter().position(|&x| x > 0).expect("nonzero key is memoized");
            let mut smaller = a.to_vec();
            smaller[k] -= 1;
            let prev = self.get(&smaller).clone();
            let value = prev.mul(&self.basis[k]);
            self.memo.insert(a.to_vec(), value);
        }
        &self.memo[a]
    }
}

/// Rewrites a symmetric Laurent polynomial in `t_1..t_d` as
/// `N(S_1, …, S_d) / S_d^M`.
///
/// Negative exponents are cleared by multiplying with `(t_1⋯t_d)^M = S_d^M`;
/// the resulting polynomial is reduced by repeatedly subtracting
/// `c · e_1^{λ_1-λ_2} ⋯ e_d^{λ_d}` for its lex-leading monomial `c t^λ`.
/// Only monomials with nonincreasing exponents are tracked, since they
/// determine a symmetric polynomial.
pub fn sym_to_elementary(f: &MultiLaurentPoly) -> Result<SFraction> {
    f.check_symmetric()?;
    let p = f.p();
    let d = f.nvars();
    let m = (-f.min_exponents().into_iter().min().unwrap_or(0)).max(0);
    let cleared = f.shift(&vec![m; d]);

    let mut rest: BTreeMap<Vec<i64>, u32> = cleared
        .terms()
        .filter(|(e, _)| is_sorted_desc(e))
        .map(|(e, c)| (e.to_vec(), c))
        .collect();
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut products = ElementaryProducts::new(p, d);

    while let Some((lam, c)) = rest.iter().next_back().map(|(e, &c)| (e.clone(), c)) {
        let a: Vec<i64> = (0..d)
            .map(|k| lam[k] - if k + 1 < d { lam[k + 1] } else { 0 })
            .collect();
        out.push((a.clone(), c as i64));
        let shift = a[d - 1];
        let prod = products.get(&a[..d - 1]);
        for (e, pc) in prod.terms() {
            if !is_sorted_desc(e) {
                continue;
            }
            let key: Vec<i64> = e.iter().map(|x| x + shift).collect();
            let sub = (pc * c) % p;
            let slot = rest.entry(key).or_insert(0);
            *slot = (*slot + p - sub) % p;
            if *slot == 0 {
                let key: Vec<i64> = e.iter().map(|x| x + shift).collect();
                rest.remove(&key);
            }
        }
        debug_assert!(!rest.contains_key(&lam));
    }
    let num = MultiLaurentPoly::from_terms(p, d, out)?;
    sfrac_normalize(num, m)
}
