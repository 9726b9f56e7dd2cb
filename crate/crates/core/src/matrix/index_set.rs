use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MatrixError;
use crate::tableaux::Partition;

/// A strictly increasing sequence of 1-based row or column indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates strict increase and the range `1..=r`.
    pub fn new(indices: Vec<usize>, r: usize) -> Result<Self, MatrixError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MatrixError::BadIndexSet(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        if indices.iter().any(|&i| i == 0 || i > r) {
            return Err(MatrixError::BadIndexSet(format!(
                "{indices:?} leaves the range 1..={r}"
            )));
        }
        Ok(IndexSet(indices))
    }

    /// Unchecked constructor for internally generated index sets.
    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.first().is_none_or(|&i| i >= 1));
        IndexSet(indices)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `(a, a+1, ..., b)`; empty when `a > b`.
    pub fn range(a: usize, b: usize) -> Self {
        assert!(a >= 1, "index sets are 1-based");
        IndexSet((a..=b).collect())
    }

    pub fn full(r: usize) -> Self {
        IndexSet::range(1, r)
    }

    /// The `k` right-most indices `(r-k+1, ..., r)`.
    pub fn right_most(r: usize, k: usize) -> Self {
        IndexSet::range(r - k + 1, r)
    }

    /// All index sets of size `k` in `1..=r`, in lexicographic order.
    pub fn all(r: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if k > r {
            return out;
        }
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(IndexSet(cur.clone()));
            let Some(pos) = (0..k).rev().find(|&p| cur[p] < r - (k - 1 - p)) else {
                return out;
            };
            cur[pos] += 1;
            for q in pos + 1..k {
                cur[q] = cur[q - 1] + 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// The partial order `I ⊆ H`: equal sizes and `i_s <= h_s` for every `s`.
    pub fn precedes(&self, other: &IndexSet) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(i, h)| i <= h)
    }

    /// `|μ_I| = μ_{i_1} + ... + μ_{i_k}`.
    pub fn weight(&self, mu: &Partition) -> i64 {
        self.0.iter().map(|&i| mu.part(i) as i64).sum()
    }

    /// Elementwise minimum `Min(I, H)`.
    pub fn min_with(&self, other: &IndexSet) -> IndexSet {
        assert_eq!(self.len(), other.len());
        IndexSet(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Indices of `1..=r` not in `self`.
    pub fn complement(&self, r: usize) -> IndexSet {
        IndexSet((1..=r).filter(|i| !self.contains(*i)).collect())
    }

    /// Bitmask with bit `i-1` set for every index `i`.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | (1u64 << (i - 1)))
    }

    pub fn from_mask(mask: u64) -> IndexSet {
        IndexSet((1..=64).filter(|&i| mask & (1u64 << (i - 1)) != 0).collect())
    }

    /// All `S` of the same size with `self ⊆ S`.
    pub fn successors(&self, r: usize) -> Vec<IndexSet> {
        IndexSet::all(r, self.len())
            .into_iter()
            .filter(|s| self.precedes(s))
            .collect()
    }

    /// All `H` of the same size with `H ⊆ self`.
    pub fn predecessors(&self, r: usize) -> Vec<IndexSet> {
        IndexSet::all(r, self.len())
            .into_iter()
            .filter(|h| h.precedes(self))
            .collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        IndexSet::new(v, 64).map_err(serde::de::Error::custom)
    }
}

/// `IndexSet` literal, unchecked against any matrix size.
#[macro_export]
macro_rules! idx {
    () => { $crate::matrix::IndexSet::empty() };
    ($($i:expr),+ $(,)?) => {
        $crate::matrix::IndexSet::new(vec![$($i),+], 64).expect("bad index set")
    };
}
