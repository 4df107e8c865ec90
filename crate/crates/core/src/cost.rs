//! Integral cost values with an explicit infeasibility sentinel.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A cost in minor currency units, or [`Cost::INFEASIBLE`].
///
/// `INFEASIBLE` absorbs under addition and compares greater than every
/// finite value, so `min` over a mix of the two picks the finite one.
/// Finite values may be negative: intermediate keys such as
/// `p * inventory + F` go below zero under backlog.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(i64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFEASIBLE: Cost = Cost(i64::MAX);

    /// Wraps a finite amount.
    ///
    /// # Panics
    /// Panics if `value` collides with the sentinel.
    #[inline]
    pub fn finite(value: i64) -> Cost {
        assert!(value != i64::MAX, "cost value collides with the infeasible sentinel");
        Cost(value)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0 != i64::MAX
    }

    #[inline]
    pub fn is_infeasible(self) -> bool {
        self.0 == i64::MAX
    }

    /// The finite amount, if any.
    #[inline]
    pub fn value(self) -> Option<i64> {
        self.is_finite().then_some(self.0)
    }

    /// Adds a plain amount; infeasibility is preserved.
    #[inline]
    pub fn plus(self, amount: i64) -> Cost {
        self + Cost::finite(amount)
    }
}

impl Add for Cost {
    type Output = Cost;

    #[inline]
    fn add(self, rhs: Cost) -> Cost {
        if self.is_infeasible() || rhs.is_infeasible() {
            return Cost::INFEASIBLE;
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v != i64::MAX => Cost(v),
            _ => panic!("cost overflow: {} + {}", self.0, rhs.0),
        }
    }
}

impl AddAssign for Cost {
    #[inline]
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl From<i64> for Cost {
    fn from(value: i64) -> Cost {
        Cost::finite(value)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "Cost({v})"),
            None => f.write_str("Cost(INFEASIBLE)"),
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("infeasible"),
        }
    }
}

// Serialized as a number, or `null` for the sentinel.
impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Cost, D::Error> {
        let raw = Option::<i64>::deserialize(deserializer)?;
        match raw {
            Some(i64::MAX) => Err(serde::de::Error::custom("cost out of range")),
            Some(v) => Ok(Cost(v)),
            None => Ok(Cost::INFEASIBLE),
        }
    }
}
