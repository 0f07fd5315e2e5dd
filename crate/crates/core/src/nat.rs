//! Natural numbers that stay machine-sized until they cannot.

use rug::Integer;
use std::fmt;
use std::sync::Arc;

/// A natural number. `Big` is only used above `u64::MAX`, so the derived
/// ordering agrees with numeric ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nat {
    Small(u64),
    Big(Arc<Integer>),
}

impl Nat {
    pub const ZERO: Nat = Nat::Small(0);
    pub const ONE: Nat = Nat::Small(1);

    pub fn from_integer(n: Integer) -> Nat {
        match n.to_u64() {
            Some(v) => Nat::Small(v),
            None => {
                assert!(n >= 0, "negative natural");
                Nat::Big(Arc::new(n))
            }
        }
    }

    pub fn to_integer(&self) -> Integer {
        match self {
            Nat::Small(v) => Integer::from(*v),
            Nat::Big(b) => (**b).clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Nat::Small(v) => Some(*v),
            Nat::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Nat::Small(0))
    }

    pub fn succ(&self) -> Nat {
        match self {
            Nat::Small(v) if *v < u64::MAX => Nat::Small(v + 1),
            _ => Nat::from_integer(self.to_integer() + 1u32),
        }
    }

    /// Predecessor, with `P(0) = 0`.
    pub fn pred(&self) -> Nat {
        match self {
            Nat::Small(0) => Nat::ZERO,
            Nat::Small(v) => Nat::Small(v - 1),
            Nat::Big(b) => Nat::from_integer((**b).clone() - 1u32),
        }
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Nat {
        Nat::Small(v)
    }
}

impl From<Integer> for Nat {
    fn from(v: Integer) -> Nat {
        Nat::from_integer(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Small(v) => write!(f, "{v}"),
            Nat::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn succ_crosses_into_big() {
        let n = Nat::Small(u64::MAX).succ();
        assert!(matches!(n, Nat::Big(_)));
        assert_eq!(n.pred(), Nat::Small(u64::MAX));
        assert!(Nat::Small(u64::MAX) < n);
    }

    #[test]
    fn pred_of_zero_is_zero() {
        assert_eq!(Nat::ZERO.pred(), Nat::ZERO);
    }
}
