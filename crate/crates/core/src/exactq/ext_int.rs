use std::cmp::Ordering;
use std::fmt;

/// An integer extended by a single absorbing `Infinity`.
///
/// Only used for the rigging sentinel above the last column of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

impl ExtInt {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtInt::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(n) => Some(n),
            ExtInt::Infinity => None,
        }
    }

    /// `Infinity + d == Infinity` for every finite `d`.
    pub fn offset(self, d: i64) -> ExtInt {
        match self {
            ExtInt::Finite(n) => ExtInt::Finite(n + d),
            ExtInt::Infinity => ExtInt::Infinity,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Finite(n)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::Infinity, ExtInt::Infinity) => Ordering::Equal,
            (ExtInt::Infinity, _) => Ordering::Greater,
            (_, ExtInt::Infinity) => Ordering::Less,
            (ExtInt::Finite(a), ExtInt::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(n) => write!(f, "{n}"),
            ExtInt::Infinity => write!(f, "inf"),
        }
    }
}
