use std::fmt;

use serde::{Serialize, Serializer};

/// A discrete valuation value: an integer or `+∞` (the valuation of zero).
///
/// `Finite(_) < Infinity`, so `min` over a set of terms behaves as expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }

    /// Multiplies by a positive integer; `∞` stays `∞`.
    pub fn scale(self, k: i64) -> Valuation {
        debug_assert!(k > 0);
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }

    pub fn shift(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }

    /// The filtration level `-v`, or `None` for `-∞`.
    pub fn level(self) -> Option<i64> {
        self.finite().map(|v| -v)
    }

    /// `v ≥ -n`, i.e. membership in `fil_n`.
    pub fn in_fil(self, n: i64) -> bool {
        self >= Valuation::Finite(-n)
    }

    /// The conductor-style upper bound `max(0, -v)`.
    pub fn conductor_bound(self) -> i64 {
        match self {
            Valuation::Finite(v) => (-v).max(0),
            Valuation::Infinity => 0,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinity);
        assert_eq!(
            [Valuation::Infinity, Valuation::Finite(-3)].iter().min(),
            Some(&Valuation::Finite(-3))
        );
    }

    #[test]
    fn fil_membership() {
        assert!(Valuation::Finite(-2).in_fil(2));
        assert!(!Valuation::Finite(-2).in_fil(1));
        assert!(Valuation::Infinity.in_fil(-100));
        assert_eq!(Valuation::Finite(3).conductor_bound(), 0);
        assert_eq!(Valuation::Finite(-3).conductor_bound(), 3);
    }
}
