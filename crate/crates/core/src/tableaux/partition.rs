use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TableauxError;

/// A weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are dropped on construction, so `(3, 1, 0)` and `(3, 1)`
/// are the same partition. Parts are addressed 1-based via [`Partition::part`],
/// which returns 0 past the length.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, TableauxError> {
        if let Some(k) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(TableauxError::NotAPartition {
                parts: parts.clone(),
                at: k + 1,
            });
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts arbitrary nonnegative values into decreasing order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted input is a partition")
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `k`-th part (1-based); zero beyond the length.
    pub fn part(&self, k: usize) -> u32 {
        assert!(k >= 1, "partition parts are 1-based");
        self.parts.get(k - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The first `r` parts, zero-padded.
    pub fn padded(&self, r: usize) -> Vec<u32> {
        (1..=r).map(|k| self.part(k)).collect()
    }

    /// `self ⊆ other`: every part of `self` is at most the matching part of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.length() <= other.length() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Sum of the last `s` of the first `r` parts (`μ_{r-s+1} + ... + μ_r`).
    pub fn tail_sum(&self, r: usize, s: usize) -> u64 {
        (r - s + 1..=r).map(|k| self.part(k) as u64).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = TableauxError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

/// Shorthand for building a partition from literal parts; panics if they are
/// not weakly decreasing.
#[macro_export]
macro_rules! partition {
    () => { $crate::tableaux::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::tableaux::Partition::new(vec![$($p),+]).expect("not a partition")
    };
}
