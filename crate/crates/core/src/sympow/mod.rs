//! The symmetric-power conductor calculus: the pushforwards `λ` (Witt
//! vectors) and `μ` (differentials) from a curve to its `d`-th symmetric
//! power, the exceptional valuation of the blow-up at `dP`, the `ω_i`
//! log-basis, and the product blow-up of `X × Y` along `D × E`.

mod chart;
mod product;

pub use chart::{AnbasisReport, OmegaForm, SymmetricChart, SympowCertificate, DEFAULT_ARITY_CAP};
pub use product::{BlprodCertificate, DprodSplit, ProductChart};

use crate::{Error, Result};

/// The lower bound `max{2g − 1 + deg m, deg m}` on `d` for a curve of genus
/// `g` and modulus of degree `deg m`.
pub fn min_degree_bound(genus: i64, deg_mod: i64) -> Result<i64> {
    if genus < 0 || deg_mod < 0 {
        return Err(Error::Domain("genus and modulus degree must be nonnegative".into()));
    }
    Ok((2 * genus - 1 + deg_mod).max(deg_mod))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree_bound(0, 2).unwrap(), 2);
        assert_eq!(min_degree_bound(1, 1).unwrap(), 2);
        assert_eq!(min_degree_bound(0, 0).unwrap(), 0);
        assert_eq!(min_degree_bound(3, 4).unwrap(), 9);
        assert!(min_degree_bound(-1, 0).is_err());
    }
}
