use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use swancond::algebra::{
    elementary, expand_elementary, sym_to_elementary, LaurentPoly, MultiLaurentPoly, Ring, SFraction,
};
use swancond::asw::{fmd, reduce_representative, swan_conductor, AswCharacter};
use swancond::format::{laurent_to_text, multi_to_text, parse_laurent, parse_multi, parse_witt, witt_to_text};
use swancond::sympow::SymmetricChart;
use swancond::witt::{ghost_components, WittContext, WittVector};
use swancond::Valuation;

const PRIMES: [u32; 3] = [2, 3, 5];

fn laurent(p: u32, lo: i64, hi: i64, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((lo..=hi, 0..p as i64), 0..=terms).prop_map(move |t| LaurentPoly::from_terms(p, t))
}

fn multi(p: u32, n: usize, lo: i64, hi: i64, terms: usize) -> impl Strategy<Value = MultiLaurentPoly> {
    prop::collection::vec((prop::collection::vec(lo..=hi, n), 0..p as i64), 0..=terms)
        .prop_map(move |t| MultiLaurentPoly::from_terms(p, n, t).unwrap())
}

fn permutations(e: &[i64]) -> BTreeSet<Vec<i64>> {
    if e.len() <= 1 {
        return BTreeSet::from([e.to_vec()]);
    }
    let mut out = BTreeSet::new();
    for i in 0..e.len() {
        let mut rest = e.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.insert(tail);
        }
    }
    out
}

/// Sum of monomial symmetric functions built from random exponent vectors.
fn symmetric(p: u32, d: usize, lo: i64, hi: i64) -> impl Strategy<Value = MultiLaurentPoly> {
    prop::collection::vec((prop::collection::vec(lo..=hi, d), 1..p as i64), 0..=3).prop_map(move |t| {
        let mut acc = MultiLaurentPoly::zero(p, d);
        for (e, c) in t {
            let orbit = permutations(&e).into_iter().map(|x| (x, c));
            acc = acc.add(&MultiLaurentPoly::from_terms(p, d, orbit).unwrap());
        }
        acc
    })
}

fn ctx(p: u32, m: usize) -> Arc<WittContext> {
    WittContext::shared(p, m).unwrap()
}

fn witt_laurent(p: u32, m: usize, lo: i64, hi: i64) -> impl Strategy<Value = WittVector<LaurentPoly>> {
    prop::collection::vec(laurent(p, lo, hi, 2), m + 1).prop_map(move |c| WittVector::new(ctx(p, m), c).unwrap())
}

fn witt_int(p: u32, m: usize) -> impl Strategy<Value = WittVector<BigInt>> {
    prop::collection::vec(-40i64..=40, m + 1)
        .prop_map(move |c| WittVector::new(ctx(p, m), c.into_iter().map(BigInt::from).collect()).unwrap())
}

fn pm() -> impl Strategy<Value = (u32, usize)> {
    (prop::sample::select(PRIMES.to_vec()), 0usize..=2)
}

/// `(p, m)` with a pair of Laurent Witt vectors, exponents in `lo..=hi`.
fn witt_pair(lo: i64, hi: i64) -> impl Strategy<Value = (WittVector<LaurentPoly>, WittVector<LaurentPoly>)> {
    pm().prop_flat_map(move |(p, m)| (witt_laurent(p, m, lo, hi), witt_laurent(p, m, lo, hi)))
}

fn min(a: Valuation, b: Valuation) -> Valuation {
    a.min(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ord_t_is_a_valuation(
        (f, g) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (laurent(p, -6, 6, 4), laurent(p, -6, 6, 4)))
    ) {
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(f.mul(&g).ord_t(), f.ord_t().shift(match g.ord_t() { Valuation::Finite(v) => v, _ => 0 }));
        }
        prop_assert!(f.add(&g).ord_t() >= min(f.ord_t(), g.ord_t()));
    }

    #[test]
    fn mindeg_is_a_valuation(
        (f, g) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (multi(p, 3, 0, 4, 4), multi(p, 3, 0, 4, 4)))
    ) {
        let (vf, vg) = (f.mindeg_total().unwrap(), g.mindeg_total().unwrap());
        if let (Valuation::Finite(a), Valuation::Finite(b)) = (vf, vg) {
            prop_assert_eq!(f.mul(&g).mindeg_total().unwrap(), Valuation::Finite(a + b));
        }
        prop_assert!(f.add(&g).mindeg_total().unwrap() >= min(vf, vg));
    }

    #[test]
    fn laurent_ring_axioms(
        (a, b, c) in prop::sample::select(PRIMES.to_vec())
            .prop_flat_map(|p| (laurent(p, -5, 5, 4), laurent(p, -5, 5, 4), laurent(p, -5, 5, 4)))
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.zero_like()), a.clone());
        prop_assert_eq!(a.mul(&a.one_like()), a.clone());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn sym_to_elementary_round_trips(
        f in (prop::sample::select(PRIMES.to_vec()), 2usize..=3).prop_flat_map(|(p, d)| symmetric(p, d, -3, 3))
    ) {
        let s = sym_to_elementary(&f).unwrap();
        prop_assert_eq!(s.expand(), f);
    }

    #[test]
    fn ghost_map_is_a_ring_map((a, b) in pm().prop_flat_map(|(p, m)| (witt_int(p, m), witt_int(p, m)))) {
        let (ga, gb) = (ghost_components(&a), ghost_components(&b));
        let gs = ghost_components(&a.add(&b).unwrap());
        let gp = ghost_components(&a.mul(&b).unwrap());
        for k in 0..ga.len() {
            prop_assert_eq!(&gs[k], &(&ga[k] + &gb[k]));
            prop_assert_eq!(&gp[k], &(&ga[k] * &gb[k]));
        }
        let gn = ghost_components(&a.neg());
        for k in 0..ga.len() {
            prop_assert_eq!(&gn[k], &(-&ga[k]));
        }
    }

    #[test]
    fn filtration_is_a_subgroup((a, b) in witt_pair(-8, 3)) {
        let v = |x: &WittVector<LaurentPoly>| x.v_witt(LaurentPoly::ord_t);
        prop_assert!(v(&a.add(&b).unwrap()) >= min(v(&a), v(&b)));
        prop_assert!(v(&a.sub(&b).unwrap()) >= min(v(&a), v(&b)));
    }

    #[test]
    fn fmd_is_additive_and_respects_filtrations((a, b) in witt_pair(-8, 3)) {
        let s = a.add(&b).unwrap();
        prop_assert_eq!(fmd(&s), fmd(&a).add(&fmd(&b)));
        for x in [&a, &b, &s] {
            prop_assert!(x.v_witt(LaurentPoly::ord_t) <= fmd(x).v_log());
        }
    }

    #[test]
    fn reduction_history_replays(a in pm().prop_flat_map(|(p, m)| witt_laurent(p, m, -12, 2))) {
        let r = reduce_representative(&a).unwrap();
        prop_assert_eq!(a.sub(&r.reduced).unwrap(), r.replay().unwrap());
    }

    #[test]
    fn conductor_is_well_defined((a, b) in witt_pair(-6, 2)) {
        let perturbed = a.add(&b.frobenius_minus_one().unwrap()).unwrap();
        let (x, y) = (AswCharacter::from_witt(a), AswCharacter::from_witt(perturbed));
        let (cx, cy) = (swan_conductor(&x).unwrap(), swan_conductor(&y).unwrap());
        prop_assert!(cx.certified && cy.certified);
        prop_assert_eq!(cx.n, cy.n);
        prop_assert!(x.equals(&y).unwrap());
    }

    #[test]
    fn certified_conductor_is_the_filtration_jump(a in pm().prop_flat_map(|(p, m)| witt_laurent(p, m, -9, 2))) {
        let c = swan_conductor(&AswCharacter::from_witt(a)).unwrap();
        prop_assert!(c.certified);
        prop_assert!(c.reduced.in_fil(c.n, LaurentPoly::ord_t));
        if c.n > 0 {
            prop_assert!(!c.reduced.in_fil(c.n - 1, LaurentPoly::ord_t));
        }
    }

    #[test]
    fn text_format_round_trips(
        (f, g, w) in prop::sample::select(PRIMES.to_vec())
            .prop_flat_map(|p| (laurent(p, -9, 9, 5), multi(p, 3, -4, 4, 4), prop::collection::vec(laurent(p, -4, 4, 3), 1..4)))
    ) {
        let p = f.p();
        prop_assert_eq!(parse_laurent(p, &laurent_to_text(&f)).unwrap(), f);
        prop_assert_eq!(parse_multi(p, Some(3), &multi_to_text(&g)).unwrap(), g);
        prop_assert_eq!(parse_witt(p, &witt_to_text(&w)).unwrap(), w);
    }

    #[test]
    fn parser_never_panics(s in "\\PC{0,40}", t in "[\\[\\],0-9 -]{0,40}") {
        let _ = parse_witt(3, &s);
        let _ = parse_multi(3, None, &t);
        let _ = parse_laurent(3, &t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witt_ring_axioms((a, b) in witt_pair(-2, 2), c0 in laurent(2, -2, 2, 2)) {
        let (p, ctx) = (a.ctx().p(), a.ctx().clone());
        let c = WittVector::teichmuller(ctx.clone(), LaurentPoly::from_terms(p, c0.terms().map(|(e, k)| (e, k as i64))));
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        let zero = WittVector::zero(ctx.clone(), &LaurentPoly::zero(p));
        let one = WittVector::teichmuller(ctx, LaurentPoly::constant(p, 1));
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn frobenius_is_a_ring_map((a, b) in witt_pair(-3, 3)) {
        prop_assert_eq!(a.add(&b).unwrap().frobenius(), a.frobenius().add(&b.frobenius()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().frobenius(), a.frobenius().mul(&b.frobenius()).unwrap());
    }

    #[test]
    fn lambda_is_additive_and_symmetric(
        (d, (a, b)) in (2usize..=3, witt_pair(-4, 1))
    ) {
        let ctx = a.ctx();
        let chart = SymmetricChart::new(ctx.p(), ctx.m(), d).unwrap();
        for x in chart.lambda_upstairs(&a).unwrap().components() {
            prop_assert!(x.is_symmetric());
        }
        let lhs = chart.lambda_pushforward(&a.add(&b).unwrap()).unwrap();
        let rhs = chart.lambda_pushforward(&a).unwrap().add(&chart.lambda_pushforward(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mu_commutes_with_fmd((d, a) in (2usize..=3, pm().prop_flat_map(|(p, m)| witt_laurent(p, m, -5, 1)))) {
        let ctx = a.ctx();
        let chart = SymmetricChart::new(ctx.p(), ctx.m(), d).unwrap();
        let down = chart.mu_pushforward(&fmd(&a)).unwrap();
        prop_assert_eq!(&down, &fmd(&chart.lambda_pushforward(&a).unwrap()));
        prop_assert_eq!(down, chart.mu_via_omega_basis(&fmd(&a)).unwrap());
    }
}

/// Newton's identities, solved for `p_k` in terms of `e_1..e_d` directly in
/// the polynomial ring `F_p[S_1..S_d]`.
#[test]
fn power_sums_match_newton_recurrence() {
    for p in PRIMES {
        for d in 2..=3usize {
            let s = |k: usize| {
                if k > d {
                    MultiLaurentPoly::zero(p, d)
                } else {
                    MultiLaurentPoly::variable(p, d, k - 1)
                }
            };
            let mut power: Vec<MultiLaurentPoly> = vec![MultiLaurentPoly::constant(p, d, d as i64)];
            for k in 1..=12usize {
                let mut acc = s(k).scale((k % p as usize) as u32);
                if k % 2 == 0 {
                    acc = acc.neg();
                }
                for i in 1..k {
                    let term = s(i).mul(&power[k - i]);
                    acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
                }
                let sum: MultiLaurentPoly = (0..d)
                    .map(|j| MultiLaurentPoly::variable(p, d, j).pow(k as u64))
                    .fold(MultiLaurentPoly::zero(p, d), |x, y| x.add(&y));
                let rewritten = sym_to_elementary(&sum).unwrap();
                assert_eq!(rewritten, SFraction::from_poly(acc.clone()).unwrap(), "p={p} d={d} k={k}");
                assert_eq!(expand_elementary(&acc), sum);
                power.push(acc);
            }
        }
    }
}

#[test]
fn elementary_symmetric_rewrite_to_variables() {
    for d in 2..=3 {
        for k in 1..=d {
            assert_eq!(sym_to_elementary(&elementary(5, d, k)).unwrap(), SFraction::s_var(5, d, k));
        }
    }
}
