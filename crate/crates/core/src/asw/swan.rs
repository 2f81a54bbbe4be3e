use super::{fmd, AswCharacter, LogDifferential, LogRing};
use crate::algebra::LaurentPoly;
use crate::witt::WittVector;
use crate::{Result, Valuation};

/// Outcome of comparing a filtration upper bound with the level of the
/// `F^m d` witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certification {
    pub certified: bool,
    pub lower: i64,
    pub upper: i64,
}

impl Certification {
    pub fn value(&self) -> Option<i64> {
        self.certified.then_some(self.upper)
    }
}

/// Certifies a Swan conductor from an upper bound `upper` (the representative
/// lies in `fil_upper`) and the witness valuation `v^log(F^m d α)`.
///
/// The map `fil_n/fil_i → fil_n Ω/fil_i Ω` is injective for
/// `⌊n/p⌋ ≤ i ≤ n`. A witness of exact level `L` with `L − 1 ≥ ⌊upper/p⌋`
/// therefore proves `Sw ≥ L`; `L = upper` pins the conductor. `upper = 0`
/// means the character is unramified.
pub fn certify(upper: i64, witness: Valuation, p: u32) -> Certification {
    if upper <= 0 {
        return Certification { certified: true, lower: 0, upper: 0 };
    }
    match witness.level() {
        Some(level) if level == upper => Certification { certified: true, lower: upper, upper },
        Some(level) if level >= 1 && level < upper && level > upper / p as i64 => {
            Certification { certified: false, lower: level, upper }
        }
        _ => Certification { certified: false, lower: 0, upper },
    }
}

/// A Swan conductor value with the reduced representative and the refined
/// Swan conductor witness that certify it.
#[derive(Clone, Debug)]
pub struct SwanCertificate<R> {
    /// The conductor when certified, otherwise the upper bound.
    pub n: i64,
    pub certified: bool,
    pub bounds: (i64, i64),
    pub reduced: WittVector<R>,
    pub witness: LogDifferential<R>,
}

impl<R: LogRing> SwanCertificate<R> {
    /// Certificate for a representative with no further reduction available.
    pub fn from_representative(reduced: WittVector<R>, witness: LogDifferential<R>) -> Self {
        let upper = reduced.v_witt(R::chart_valuation).conductor_bound();
        let c = certify(upper, witness.v_log(), reduced.ctx().p());
        SwanCertificate { n: c.upper, certified: c.certified, bounds: (c.lower, c.upper), reduced, witness }
    }

    pub fn value(&self) -> Option<i64> {
        self.certified.then_some(self.n)
    }
}

/// The refined Swan conductor class: `n` and the witness `F^m d` of the
/// reduced representative, which represents `rsw(χ)` in `fil_n Ω / fil_{⌊n/p⌋} Ω`.
pub fn rsw_class(chi: &AswCharacter) -> Result<(i64, LogDifferential<LaurentPoly>)> {
    let reduced = chi.reduce()?.reduced;
    let n = reduced.v_witt(LaurentPoly::ord_t).conductor_bound();
    if n == 0 {
        return Ok((0, LogDifferential::zero(&reduced.components()[0])));
    }
    Ok((n, fmd(&reduced)))
}

pub fn swan_conductor(chi: &AswCharacter) -> Result<SwanCertificate<LaurentPoly>> {
    let reduced = chi.reduce()?.reduced;
    let witness = fmd(&reduced);
    Ok(SwanCertificate::from_representative(reduced, witness))
}
