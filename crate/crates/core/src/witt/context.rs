use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Pow;

use super::IntPoly;
use crate::algebra::{check_prime, reduce_bigint, Ring};
use crate::{Error, Result};

/// Default cap on the Witt length `m + 1`.
pub const DEFAULT_LENGTH_CAP: usize = 4;

/// Which family of universal polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UniversalKind {
    Sum,
    Product,
    Negation,
}

impl UniversalKind {
    pub fn letter(self) -> char {
        match self {
            UniversalKind::Sum => 'S',
            UniversalKind::Product => 'P',
            UniversalKind::Negation => 'N',
        }
    }
}

/// One universal polynomial together with its reduction mod `p`.
#[derive(Clone, Debug)]
pub struct UniversalPoly {
    poly: IntPoly,
    mod_p: Vec<(Vec<u32>, u32)>,
}

impl UniversalPoly {
    pub(crate) fn new(poly: IntPoly, p: u32) -> Self {
        let mod_p = poly
            .terms()
            .map(|(e, c)| (e.to_vec(), reduce_bigint(c, p)))
            .filter(|(_, c)| *c != 0)
            .collect();
        UniversalPoly { poly, mod_p }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }
}

/// Universal polynomials `S_n, P_n, N_n` (`0 ≤ n ≤ m`) for `W_{m+1}` at a
/// prime `p`. Immutable once built.
pub struct WittContext {
    p: u32,
    length: usize,
    sum: Vec<UniversalPoly>,
    prod: Vec<UniversalPoly>,
    neg: Vec<UniversalPoly>,
}

impl fmt::Debug for WittContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittContext(p={}, length={})", self.p, self.length)
    }
}

impl PartialEq for WittContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.length == other.length
    }
}

/// Ghost polynomial `w_n(Z) = Σ_{i≤n} p^i Z_{offset+i}^{p^{n-i}}`.
fn ghost_poly(p: u32, n: usize, nvars: usize, offset: usize) -> IntPoly {
    let mut w = IntPoly::zero(nvars);
    for i in 0..=n {
        let coeff = BigInt::from(p).pow(i as u32);
        let var = IntPoly::variable(nvars, offset + i);
        w = w.add(&var.pow((p as u64).pow((n - i) as u32)).scale(&coeff));
    }
    w
}

/// Solves `w_n(U) = target_n` recursively for the `U_n`, checking each
/// division by `p^n`.
fn solve_ghost(p: u32, targets: &[IntPoly]) -> Result<Vec<IntPoly>> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(targets.len());
    for (n, target) in targets.iter().enumerate() {
        let mut rest = target.clone();
        for (i, u) in out.iter().enumerate() {
            let coeff = BigInt::from(p).pow(i as u32);
            rest = rest.sub(&u.pow((p as u64).pow((n - i) as u32)).scale(&coeff));
        }
        out.push(rest.div_exact(&BigInt::from(p).pow(n as u32))?);
    }
    Ok(out)
}

/// Shared contexts keyed by `(p, length)`.
type Registry = HashMap<(u32, usize), Arc<WittContext>>;

impl WittContext {
    /// Builds the universal polynomials for `W_{m+1}` with the default length cap.
    pub fn build(p: u32, m: usize) -> Result<Self> {
        Self::build_with_cap(p, m, DEFAULT_LENGTH_CAP)
    }

    pub fn build_with_cap(p: u32, m: usize, cap: usize) -> Result<Self> {
        check_prime(p)?;
        let length = m + 1;
        if length > cap {
            return Err(Error::LengthCap { length, cap });
        }
        let two = 2 * length;
        let sum_targets: Vec<_> = (0..length)
            .map(|n| ghost_poly(p, n, two, 0).add(&ghost_poly(p, n, two, length)))
            .collect();
        let prod_targets: Vec<_> = (0..length)
            .map(|n| ghost_poly(p, n, two, 0).mul(&ghost_poly(p, n, two, length)))
            .collect();
        let neg_targets: Vec<_> = (0..length)
            .map(|n| ghost_poly(p, n, length, 0).scale(&BigInt::from(-1)))
            .collect();
        let wrap = |v: Vec<IntPoly>| v.into_iter().map(|q| UniversalPoly::new(q, p)).collect();
        Ok(WittContext {
            p,
            length,
            sum: wrap(solve_ghost(p, &sum_targets)?),
            prod: wrap(solve_ghost(p, &prod_targets)?),
            neg: wrap(solve_ghost(p, &neg_targets)?),
        })
    }

    pub(crate) fn from_parts(
        p: u32,
        length: usize,
        sum: Vec<IntPoly>,
        prod: Vec<IntPoly>,
        neg: Vec<IntPoly>,
    ) -> Self {
        let wrap = |v: Vec<IntPoly>| v.into_iter().map(|q| UniversalPoly::new(q, p)).collect();
        WittContext { p, length, sum: wrap(sum), prod: wrap(prod), neg: wrap(neg) }
    }

    /// Process-wide shared context for `(p, m)`, built on first use. When a
    /// cache directory is given, the polynomials are read from (or written
    /// to) it.
    pub fn shared(p: u32, m: usize) -> Result<Arc<WittContext>> {
        Self::shared_with(p, m, DEFAULT_LENGTH_CAP, None)
    }

    pub fn shared_with(
        p: u32,
        m: usize,
        cap: usize,
        cache_dir: Option<&Path>,
    ) -> Result<Arc<WittContext>> {
        static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();
        check_prime(p)?;
        if m + 1 > cap {
            return Err(Error::LengthCap { length: m + 1, cap });
        }
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = registry.lock().expect("registry lock").get(&(p, m + 1)) {
            return Ok(ctx.clone());
        }
        // Built outside the lock; a racing builder produces an identical value.
        let ctx = match cache_dir {
            Some(dir) => super::cache::load_or_build(dir, p, m, cap)?,
            None => WittContext::build_with_cap(p, m, cap)?,
        };
        let ctx = Arc::new(ctx);
        let mut guard = registry.lock().expect("registry lock");
        Ok(guard.entry((p, m + 1)).or_insert(ctx).clone())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `m + 1`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// `m`.
    pub fn m(&self) -> usize {
        self.length - 1
    }

    pub fn polys(&self, kind: UniversalKind) -> &[UniversalPoly] {
        match kind {
            UniversalKind::Sum => &self.sum,
            UniversalKind::Product => &self.prod,
            UniversalKind::Negation => &self.neg,
        }
    }

    pub fn variable_names(&self, kind: UniversalKind) -> Vec<String> {
        let xs = (0..self.length).map(|i| format!("X{i}"));
        match kind {
            UniversalKind::Negation => xs.collect(),
            _ => xs.chain((0..self.length).map(|i| format!("Y{i}"))).collect(),
        }
    }

    /// Evaluates every polynomial of `kind` at `inputs`, sharing power caches.
    pub(crate) fn eval_all<R: Ring>(&self, kind: UniversalKind, inputs: &[&R]) -> Vec<R> {
        let like = inputs[0];
        let char_p = like.characteristic();
        let mut cache: Vec<HashMap<u32, R>> = vec![HashMap::new(); inputs.len()];
        let mut power = |j: usize, k: u32| -> R {
            cache[j].entry(k).or_insert_with(|| inputs[j].pow(k as u64)).clone()
        };
        let mut out = Vec::with_capacity(self.length);
        for up in self.polys(kind) {
            let mut acc = like.zero_like();
            if char_p == self.p {
                for (e, c) in &up.mod_p {
                    let mut term: Option<R> = None;
                    for (j, &k) in e.iter().enumerate() {
                        if k == 0 {
                            continue;
                        }
                        if inputs[j].is_zero() {
                            term = Some(like.zero_like());
                            break;
                        }
                        let pw = power(j, k);
                        term = Some(match term {
                            None => pw,
                            Some(t) => t.mul(&pw),
                        });
                    }
                    let scalar = like.embed_integer(&BigInt::from(*c));
                    let term = match term {
                        None => scalar,
                        Some(t) if *c == 1 => t,
                        Some(t) => t.mul(&scalar),
                    };
                    acc = acc.add(&term);
                }
            } else {
                for (e, c) in up.poly.terms() {
                    let mut term = like.embed_integer(c);
                    for (j, &k) in e.iter().enumerate() {
                        if k > 0 {
                            term = term.mul(&power(j, k));
                        }
                    }
                    acc = acc.add(&term);
                }
            }
            out.push(acc);
        }
        out
    }

    /// Spot-checks the ghost identities on small integer vectors.
    pub fn self_check(&self) -> Result<()> {
        let p = BigInt::from(self.p);
        let ghost = |v: &[BigInt]| -> Vec<BigInt> {
            (0..self.length)
                .map(|n| {
                    (0..=n)
                        .map(|i| Pow::pow(&p, i as u32) * Pow::pow(&v[i], (self.p as u64).pow((n - i) as u32)))
                        .sum()
                })
                .collect()
        };
        let samples: [[i64; 2]; 4] = [[1, -2], [2, 3], [-1, 1], [0, 5]];
        for (k, pair) in samples.iter().enumerate() {
            let x: Vec<BigInt> = (0..self.length).map(|i| BigInt::from(pair[0] + i as i64 * (k as i64 - 1))).collect();
            let y: Vec<BigInt> = (0..self.length).map(|i| BigInt::from(pair[1] - i as i64)).collect();
            let xy: Vec<BigInt> = x.iter().chain(y.iter()).cloned().collect();
            let s: Vec<BigInt> = self.sum.iter().map(|u| u.poly.eval_integers(&xy)).collect();
            let pr: Vec<BigInt> = self.prod.iter().map(|u| u.poly.eval_integers(&xy)).collect();
            let ng: Vec<BigInt> = self.neg.iter().map(|u| u.poly.eval_integers(&x)).collect();
            let (gx, gy) = (ghost(&x), ghost(&y));
            let ok = (0..self.length).all(|n| {
                ghost(&s)[n] == &gx[n] + &gy[n]
                    && ghost(&pr)[n] == &gx[n] * &gy[n]
                    && ghost(&ng)[n] == -&gx[n]
            });
            if !ok {
                return Err(Error::Internal(format!(
                    "universal polynomials for p={}, length={} violate the ghost identities",
                    self.p, self.length
                )));
            }
        }
        Ok(())
    }
}
