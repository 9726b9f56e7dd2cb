use std::collections::HashMap;

use super::{IndexSet, MatrixError, RMatrix};
use crate::dvr::{RingElem, Valuation};

/// Memoized minors of one matrix, keyed by row and column bitmasks.
///
/// Each minor is expanded along its first row, so computing every minor of a
/// given size shares all the smaller ones.
pub struct MinorCache<'a> {
    m: &'a RMatrix,
    memo: HashMap<(u64, u64), RingElem>,
}

impl<'a> MinorCache<'a> {
    pub fn new(m: &'a RMatrix) -> Self {
        assert!(m.size() <= 64, "minor cache supports at most 64 rows");
        MinorCache {
            m,
            memo: HashMap::new(),
        }
    }

    pub fn matrix(&self) -> &RMatrix {
        self.m
    }

    pub fn minor(&mut self, rows: &IndexSet, cols: &IndexSet) -> Result<RingElem, MatrixError> {
        self.m.check_index_sets(rows, cols)?;
        Ok(self.by_mask(rows.mask(), cols.mask()))
    }

    pub fn order(&mut self, rows: &IndexSet, cols: &IndexSet) -> Result<Valuation, MatrixError> {
        Ok(self.minor(rows, cols)?.valuation())
    }

    fn by_mask(&mut self, rows: u64, cols: u64) -> RingElem {
        if rows == 0 {
            return RingElem::one();
        }
        if let Some(v) = self.memo.get(&(rows, cols)) {
            return v.clone();
        }
        let top = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = RingElem::zero();
        let mut remaining = cols;
        let mut sign_positive = true;
        while remaining != 0 {
            let c = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let a = &self.m[(top, c)];
            if !a.is_zero() {
                let a = a.clone();
                let sub = self.by_mask(rest, cols & !(1u64 << c));
                if !sub.is_zero() {
                    let term = &a * &sub;
                    if sign_positive {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
            }
            sign_positive = !sign_positive;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

/// The terms `minor(A, I, S) · minor(B, S, J)` of the Cauchy–Binet expansion
/// of `minor(AB, I, J)`, one per index set `S` of size `|I|`, lexicographic.
pub fn cauchy_binet_terms(
    a: &RMatrix,
    b: &RMatrix,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<Vec<RingElem>, MatrixError> {
    if a.size() != b.size() {
        return Err(MatrixError::DimensionMismatch(
            "Cauchy-Binet factors differ in size".into(),
        ));
    }
    a.check_index_sets(rows, cols)?;
    let mut ca = MinorCache::new(a);
    let mut cb = MinorCache::new(b);
    IndexSet::all(a.size(), rows.len())
        .iter()
        .map(|s| Ok(&ca.minor(rows, s)? * &cb.minor(s, cols)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::random_unit;
    use crate::idx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize) -> RMatrix {
        RMatrix::from_fn(r, |_, _| {
            if rng.gen_bool(0.2) {
                RingElem::zero()
            } else {
                random_unit(rng).mul_t_pow(rng.gen_range(0..4))
            }
        })
    }

    #[test]
    fn cache_agrees_with_direct_minors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(&mut rng, 5);
        let mut cache = MinorCache::new(&m);
        for k in 0..=5 {
            for i in IndexSet::all(5, k) {
                for j in IndexSet::all(5, k) {
                    assert_eq!(cache.minor(&i, &j).unwrap(), m.minor(&i, &j).unwrap());
                }
            }
        }
    }

    #[test]
    fn cauchy_binet_on_random_4x4() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 4);
            let b = random_matrix(&mut rng, 4);
            let ab = &a * &b;
            for k in 1..=4 {
                for i in IndexSet::all(4, k) {
                    for j in IndexSet::all(4, k) {
                        let sum = cauchy_binet_terms(&a, &b, &i, &j)
                            .unwrap()
                            .iter()
                            .fold(RingElem::zero(), |acc, x| &acc + x);
                        assert_eq!(sum, ab.minor(&i, &j).unwrap());
                    }
                }
            }
        }
        assert!(cauchy_binet_terms(&RMatrix::identity(2), &RMatrix::identity(3), &idx![1], &idx![1]).is_err());
    }
}
