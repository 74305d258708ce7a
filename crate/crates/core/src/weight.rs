//! Path weights with an absorbing negative-infinity sentinel.

use std::fmt;

/// Total overlap weight of a path, or `NEG_INF` when no such path exists.
///
/// Addition is absorbing: `NEG_INF + x = NEG_INF`. The sentinel compares
/// below every finite weight, so `max` ignores infeasible terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(i64);

impl Weight {
    pub const NEG_INF: Weight = Weight(i64::MIN);
    pub const ZERO: Weight = Weight(0);

    pub fn finite(value: i64) -> Weight {
        assert!(value != i64::MIN, "reserved sentinel");
        Weight(value)
    }

    pub fn is_finite(self) -> bool {
        self.0 != i64::MIN
    }

    /// Finite value, or `None` for the sentinel.
    pub fn value(self) -> Option<i64> {
        self.is_finite().then_some(self.0)
    }

    /// Finite value; panics on the sentinel.
    pub fn expect_finite(self) -> i64 {
        self.value().expect("infeasible weight")
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        if !self.is_finite() || !rhs.is_finite() {
            Weight::NEG_INF
        } else {
            Weight(self.0.checked_add(rhs.0).expect("weight overflow"))
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "-inf"),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
