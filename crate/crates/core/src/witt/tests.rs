use num_bigint::BigInt;

use super::*;
use crate::algebra::{FieldElem, LaurentPoly, Ring};
use crate::{Error, Valuation};

fn int_poly(nvars: usize, terms: &[(&[u32], i64)]) -> IntPoly {
    let mut p = IntPoly::zero(nvars);
    for (e, c) in terms {
        let mut m = IntPoly::constant(nvars, BigInt::from(*c));
        for (i, &k) in e.iter().enumerate() {
            m = m.mul(&IntPoly::variable(nvars, i).pow(k as u64));
        }
        p = p.add(&m);
    }
    p
}

#[test]
fn universal_polys_p2_m1() {
    let ctx = WittContext::build(2, 1).unwrap();
    // Variables X0, X1, Y0, Y1.
    let s = ctx.polys(UniversalKind::Sum);
    assert_eq!(s[0].poly(), &int_poly(4, &[(&[1, 0, 0, 0], 1), (&[0, 0, 1, 0], 1)]));
    // (X0^2 + 2X1 + Y0^2 + 2Y1 - (X0 + Y0)^2) / 2
    assert_eq!(
        s[1].poly(),
        &int_poly(4, &[(&[0, 1, 0, 0], 1), (&[0, 0, 0, 1], 1), (&[1, 0, 1, 0], -1)])
    );
    let p = ctx.polys(UniversalKind::Product);
    assert_eq!(p[0].poly(), &int_poly(4, &[(&[1, 0, 1, 0], 1)]));
    let names = ctx.variable_names(UniversalKind::Sum);
    assert_eq!(s[1].poly().display_with(&names).to_string(), "X1 + Y1 - X0*Y0");
}

#[test]
fn negation_odd_prime_is_componentwise() {
    let ctx = WittContext::build(3, 2).unwrap();
    for (i, n) in ctx.polys(UniversalKind::Negation).iter().enumerate() {
        let mut e = vec![0; 3];
        e[i] = 1;
        assert_eq!(n.poly(), &int_poly(3, &[(&e, -1)]));
    }
}

#[test]
fn length_cap_enforced() {
    assert!(matches!(WittContext::build(2, 4), Err(Error::LengthCap { length: 5, cap: 4 })));
    assert!(WittContext::build_with_cap(2, 4, 5).is_ok());
    assert!(matches!(WittContext::build(6, 1), Err(Error::UnsupportedPrime(6))));
}

fn fp_vec(ctx: &std::sync::Arc<WittContext>, vals: &[i64]) -> WittVector<FieldElem> {
    let comps = vals.iter().map(|&v| FieldElem::new(ctx.p(), v)).collect();
    WittVector::new(ctx.clone(), comps).unwrap()
}

#[test]
fn w2_f2_is_z_mod_4() {
    let ctx = WittContext::shared(2, 1).unwrap();
    let one = fp_vec(&ctx, &[1, 0]);
    let two = fp_vec(&ctx, &[0, 1]);
    assert_eq!(one.add(&one).unwrap(), two);
    assert_eq!(one.mul(&two).unwrap(), two);
    assert!(two.mul(&two).unwrap().is_zero());
    assert!(one.times(4).unwrap().is_zero());
    assert_eq!(one.neg(), fp_vec(&ctx, &[1, 1])); // -1 = 3 = (1,1)
}

#[test]
fn laurent_sum_example() {
    // (t^-1, 0) + (t^-1, 0) = (0, t^-2) over F_2
    let ctx = WittContext::shared(2, 1).unwrap();
    let a = WittVector::teichmuller(ctx.clone(), LaurentPoly::monomial(2, -1, 1));
    let s = a.add(&a).unwrap();
    assert_eq!(s.components(), &[LaurentPoly::zero(2), LaurentPoly::monomial(2, -2, 1)]);
}

#[test]
fn teichmuller_is_multiplicative() {
    let ctx = WittContext::shared(3, 2).unwrap();
    let a = LaurentPoly::from_terms(3, [(-1, 1), (2, 2)]);
    let b = LaurentPoly::from_terms(3, [(0, 1), (1, 1)]);
    let prod = WittVector::teichmuller(ctx.clone(), a.clone())
        .mul(&WittVector::teichmuller(ctx.clone(), b.clone()))
        .unwrap();
    assert_eq!(prod, WittVector::teichmuller(ctx, a.mul(&b)));
}

#[test]
fn ghost_component_examples() {
    let ctx = WittContext::shared(2, 1).unwrap();
    let v = |a: i64, b: i64| WittVector::new(ctx.clone(), vec![BigInt::from(a), BigInt::from(b)]).unwrap();
    assert_eq!(ghost_components(&v(1, 0)), vec![BigInt::from(1), BigInt::from(1)]);
    assert_eq!(ghost_components(&v(0, 1)), vec![BigInt::from(0), BigInt::from(2)]);
    assert_eq!(ghost_components(&v(0, 0)), vec![BigInt::from(0), BigInt::from(0)]);
}

#[test]
fn frobenius_examples() {
    let ctx = WittContext::shared(2, 1).unwrap();
    let t = LaurentPoly::monomial(2, 1, 1);
    let one = LaurentPoly::constant(2, 1);
    let a = WittVector::new(ctx.clone(), vec![t.clone(), one.clone()]).unwrap();
    assert_eq!(a.frobenius().components(), &[LaurentPoly::monomial(2, 2, 1), one.clone()]);
    let c = WittVector::teichmuller(ctx.clone(), one.clone());
    assert!(c.frobenius_minus_one().unwrap().is_zero());
    let ctx3 = WittContext::shared(3, 0).unwrap();
    let b = WittVector::teichmuller(ctx3, LaurentPoly::monomial(3, -1, 1));
    assert_eq!(b.frobenius().components()[0], LaurentPoly::monomial(3, -3, 1));
}

#[test]
fn verschiebung_slots() {
    let ctx = WittContext::shared(2, 1).unwrap();
    let b = LaurentPoly::monomial(2, -5, 1);
    let v0 = WittVector::verschiebung_shift(ctx.clone(), b.clone(), 0).unwrap();
    assert_eq!(v0.components(), &[b.clone(), LaurentPoly::zero(2)]);
    let v1 = WittVector::verschiebung_shift(ctx.clone(), b.clone(), 1).unwrap();
    assert_eq!(v1.components(), &[LaurentPoly::zero(2), b.clone()]);
    assert!(WittVector::verschiebung_shift(ctx.clone(), LaurentPoly::zero(2), 1).unwrap().is_zero());
    assert!(matches!(
        WittVector::verschiebung_shift(ctx, b, 2),
        Err(Error::SlotOutOfRange { slot: 2, length: 2 })
    ));
}

#[test]
fn v_witt_examples() {
    let ctx = WittContext::shared(2, 1).unwrap();
    let v = |a: LaurentPoly, b: LaurentPoly| WittVector::new(ctx.clone(), vec![a, b]).unwrap();
    let a = v(LaurentPoly::monomial(2, -3, 1), LaurentPoly::monomial(2, -1, 1));
    assert_eq!(a.v_witt(LaurentPoly::ord_t), Valuation::Finite(-6));
    assert!(a.in_fil(6, LaurentPoly::ord_t));
    assert!(!a.in_fil(5, LaurentPoly::ord_t));
    let z = WittVector::zero(ctx.clone(), &LaurentPoly::zero(2));
    assert_eq!(z.v_witt(LaurentPoly::ord_t), Valuation::Infinity);
    let b = v(LaurentPoly::monomial(2, 2, 1), LaurentPoly::monomial(2, -1, 1));
    assert_eq!(b.v_witt(LaurentPoly::ord_t), Valuation::Finite(-1));
}

#[test]
fn context_mismatch() {
    let a = WittVector::teichmuller(WittContext::shared(2, 1).unwrap(), FieldElem::new(2, 1));
    let b = WittVector::teichmuller(WittContext::shared(2, 0).unwrap(), FieldElem::new(2, 1));
    assert!(matches!(a.add(&b), Err(Error::ContextMismatch)));
}

#[test]
fn self_check_passes_for_built_contexts() {
    for (p, m) in [(2, 0), (2, 2), (3, 2), (5, 1)] {
        WittContext::shared(p, m).unwrap().self_check().unwrap();
    }
}

#[test]
fn integer_vectors_need_integer_constants() {
    let ctx = WittContext::shared(3, 1).unwrap();
    let x = WittVector::new(ctx.clone(), vec![BigInt::from(2), BigInt::from(-1)]).unwrap();
    let z = WittVector::zero(ctx, &BigInt::from(0));
    assert_eq!(x.add(&z).unwrap(), x);
    assert_eq!(x.sub(&x).unwrap(), z);
    assert!(Ring::is_zero(&BigInt::from(0)));
}
