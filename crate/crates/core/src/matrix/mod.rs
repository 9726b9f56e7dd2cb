//! Dense square matrices over the fraction field of the valuation ring.
//!
//! Element access through `Index<(usize, usize)>` is 0-based like any Rust
//! container. Everything that addresses minors takes an [`IndexSet`], which is
//! 1-based.

mod index_set;
mod lu;
mod minors;
mod orders;
mod smith;

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use num_traits::Zero;

use crate::dvr::{Rational, RingElem, Valuation};
use crate::tableaux::Partition;

pub use index_set::IndexSet;
pub use lu::{lu_decompose, LuFactors};
pub use minors::{cauchy_binet_terms, MinorCache};
pub use orders::OrderCache;
pub use smith::{invariant_partition, invariant_partition_oracle, smith_transforms, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad index set: {0}")]
    BadIndexSet(String),
    #[error("matrix is not of full rank")]
    RankDeficient,
    #[error("entry ({0}, {1}) is not in the valuation ring")]
    NotIntegral(usize, usize),
    #[error("matrix is not invertible over the valuation ring")]
    NotInvertible,
    #[error("leading principal minor D_{0} vanishes")]
    VanishingPrincipalMinor(usize),
    #[error("partition {0} has more than {1} parts")]
    PartitionTooLong(Partition, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    r: usize,
    entries: Vec<RingElem>,
}

impl RMatrix {
    pub fn zero(r: usize) -> Self {
        RMatrix {
            r,
            entries: vec![RingElem::zero(); r * r],
        }
    }

    pub fn identity(r: usize) -> Self {
        RMatrix::from_fn(r, |i, j| if i == j { RingElem::one() } else { RingElem::zero() })
    }

    /// Builds from a closure over 0-based `(row, col)`.
    pub fn from_fn(r: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                entries.push(f(i, j));
            }
        }
        RMatrix { r, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RingElem>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        if r == 0 {
            return Err(MatrixError::DimensionMismatch("matrix has no rows".into()));
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != r) {
            return Err(MatrixError::DimensionMismatch(format!(
                "row {} has {} entries, expected {r}",
                i + 1,
                row.len()
            )));
        }
        Ok(RMatrix {
            r,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diag(d: Vec<RingElem>) -> Self {
        let r = d.len();
        let mut m = RMatrix::zero(r);
        for (i, x) in d.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// `D_μ = diag(t^{μ_1}, ..., t^{μ_r})`, with `t^0 = 1` past the length of `μ`.
    pub fn diag_from_partition(mu: &Partition, r: usize) -> Result<Self, MatrixError> {
        if mu.length() > r {
            return Err(MatrixError::PartitionTooLong(mu.clone(), r));
        }
        Ok(RMatrix::diag(
            mu.padded(r).into_iter().map(|p| RingElem::t_pow(p as i64)).collect(),
        ))
    }

    /// `D_μ^{-1}`.
    pub fn inverse_diag_from_partition(mu: &Partition, r: usize) -> Result<Self, MatrixError> {
        if mu.length() > r {
            return Err(MatrixError::PartitionTooLong(mu.clone(), r));
        }
        Ok(RMatrix::diag(
            mu.padded(r).into_iter().map(|p| RingElem::t_pow(-(p as i64))).collect(),
        ))
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]` (0-based), so
    /// its `(perm[j], j)` entries are one.
    pub fn permutation(perm: &[usize]) -> Self {
        let r = perm.len();
        let mut m = RMatrix::zero(r);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = RingElem::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RingElem]> {
        self.entries.chunks(self.r)
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.r, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &RMatrix) -> Result<RMatrix, MatrixError> {
        if self.r != rhs.r {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.r, rhs.r
            )));
        }
        let r = self.r;
        Ok(RMatrix::from_fn(r, |i, j| {
            let mut acc = RingElem::zero();
            for k in 0..r {
                let a = &self[(i, k)];
                let b = &rhs[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    /// Every entry has valuation `>= 0`.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(RingElem::is_integral)
    }

    pub fn first_non_integral(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|x| !x.is_integral())
            .map(|p| (p / self.r + 1, p % self.r + 1))
    }

    pub fn is_full_rank(&self) -> bool {
        !self.det().is_zero()
    }

    /// Member of `GL_r(R)`: entries in `R` and unit determinant.
    /// Integral with a unit determinant, i.e. invertible modulo `t`.
    pub fn is_invertible_over_r(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        let r = self.r;
        let mut a: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| self[(i, j)].residue().expect("integral")).collect())
            .collect();
        for k in 0..r {
            let Some(p) = (k..r).find(|&i| !a[i][k].is_zero()) else {
                return false;
            };
            a.swap(k, p);
            for i in k + 1..r {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                    *x -= &f * y;
                }
            }
        }
        true
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.r).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.r).all(|i| (i + 1..self.r).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_upper_triangular() && self.is_lower_triangular()
    }

    /// Submatrix on 1-based rows `rows` and columns `cols`.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> RMatrix {
        let (rs, cs) = (rows.as_slice(), cols.as_slice());
        assert_eq!(rs.len(), cs.len());
        RMatrix::from_fn(rs.len(), |i, j| self[(rs[i] - 1, cs[j] - 1)].clone())
    }

    fn check_index_sets(&self, rows: &IndexSet, cols: &IndexSet) -> Result<(), MatrixError> {
        if rows.len() != cols.len() {
            return Err(MatrixError::DimensionMismatch(format!(
                "row set {rows} and column set {cols} differ in size"
            )));
        }
        let out = rows.iter().chain(cols.iter()).find(|&i| i > self.r);
        if let Some(i) = out {
            return Err(MatrixError::BadIndexSet(format!(
                "index {i} exceeds matrix size {}",
                self.r
            )));
        }
        Ok(())
    }

    /// The minor `W_IJ`. Empty index sets give 1.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<RingElem, MatrixError> {
        self.check_index_sets(rows, cols)?;
        Ok(self.submatrix(rows, cols).det())
    }

    pub fn minor_order(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Valuation, MatrixError> {
        Ok(self.minor(rows, cols)?.valuation())
    }

    /// Determinant: the diagonal product for triangular matrices, cofactor
    /// expansion (memoized over minors from size 4) up to size 8, Bareiss
    /// elimination above.
    pub fn det(&self) -> RingElem {
        let a = |i: usize, j: usize| &self[(i, j)];
        if self.r > 3 && (self.is_upper_triangular() || self.is_lower_triangular()) {
            return (0..self.r).fold(RingElem::one(), |acc, i| &acc * a(i, i));
        }
        match self.r {
            0 => RingElem::one(),
            1 => a(0, 0).clone(),
            2 => &(a(0, 0) * a(1, 1)) - &(a(0, 1) * a(1, 0)),
            3 => {
                let minor = |j1: usize, j2: usize| &(a(1, j1) * a(2, j2)) - &(a(1, j2) * a(2, j1));
                let mut acc = RingElem::zero();
                for (j, (j1, j2), sign) in [(0, (1, 2), 1), (1, (0, 2), -1), (2, (0, 1), 1)] {
                    if a(0, j).is_zero() {
                        continue;
                    }
                    let term = a(0, j) * &minor(j1, j2);
                    if sign > 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
            4..=8 => {
                let full = IndexSet::full(self.r);
                MinorCache::new(self).minor(&full, &full).expect("full index sets")
            }
            _ => self.det_bareiss(),
        }
    }

    fn det_bareiss(&self) -> RingElem {
        let n = self.r;
        let mut m: Vec<Vec<RingElem>> = self.rows().map(<[RingElem]>::to_vec).collect();
        let mut prev = RingElem::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return RingElem::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = if prev.is_one() { num } else { &num / &prev };
                }
                m[i][k] = RingElem::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Inverse over the fraction field by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RMatrix, MatrixError> {
        let n = self.r;
        let mut a: Vec<Vec<RingElem>> = self.rows().map(<[RingElem]>::to_vec).collect();
        let mut inv: Vec<Vec<RingElem>> = RMatrix::identity(n).rows().map(<[RingElem]>::to_vec).collect();
        for k in 0..n {
            // smallest-valuation pivot keeps intermediate entries in R when possible
            let p = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].valuation())
                .ok_or(MatrixError::RankDeficient)?;
            a.swap(k, p);
            inv.swap(k, p);
            let piv_inv = a[k][k].inv().expect("nonzero pivot");
            for j in 0..n {
                if !a[k][j].is_zero() {
                    a[k][j] = &a[k][j] * &piv_inv;
                }
                if !inv[k][j].is_zero() {
                    inv[k][j] = &inv[k][j] * &piv_inv;
                }
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        let d = &f * &a[k][j];
                        a[i][j] -= &d;
                    }
                    if !inv[k][j].is_zero() {
                        let d = &f * &inv[k][j];
                        inv[i][j] -= &d;
                    }
                }
            }
        }
        Ok(RMatrix {
            r: n,
            entries: inv.into_iter().flatten().collect(),
        })
    }

    /// Inverse that must itself be in `GL_r(R)`.
    pub fn inverse_over_r(&self) -> Result<RMatrix, MatrixError> {
        if !self.is_invertible_over_r() {
            return Err(MatrixError::NotInvertible);
        }
        self.inverse()
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.r {
            self.entries.swap(i * self.r + a, i * self.r + b);
        }
    }

    /// `col_target -= f * col_source`.
    pub(crate) fn col_axpy(&mut self, target: usize, source: usize, f: &RingElem) {
        for i in 0..self.r {
            let s = &self[(i, source)];
            if !s.is_zero() {
                let d = s * f;
                self[(i, target)] -= &d;
            }
        }
    }

    pub(crate) fn scale_col(&mut self, col: usize, f: &RingElem) {
        for i in 0..self.r {
            if !self[(i, col)].is_zero() {
                self[(i, col)] = &self[(i, col)] * f;
            }
        }
    }

    /// Valuations of all entries, row-major.
    pub fn valuations(&self) -> Vec<Vec<Valuation>> {
        self.rows()
            .map(|row| row.iter().map(RingElem::valuation).collect())
            .collect()
    }
}

/// `Q` is μ-admissible when `Q ∈ GL_r(R)` and `D_μ Q D_μ^{-1} ∈ GL_r(R)`.
pub fn is_mu_admissible(q: &RMatrix, mu: &Partition) -> bool {
    let r = q.size();
    if mu.length() > r || !q.is_invertible_over_r() {
        return false;
    }
    let m = mu.padded(r);
    // (D_μ Q D_μ^{-1})_ij = t^{μ_i - μ_j} q_ij; its determinant equals det Q
    (0..r).all(|i| (0..r).all(|j| q[(i, j)].valuation().offset(m[i] as i64 - m[j] as i64) >= Valuation::ZERO))
}

/// `D_μ Q D_μ^{-1}`.
pub fn conjugate_by_partition(q: &RMatrix, mu: &Partition) -> RMatrix {
    let m = mu.padded(q.size());
    RMatrix::from_fn(q.size(), |i, j| q[(i, j)].mul_t_pow(m[i] as i64 - m[j] as i64))
}

impl Index<(usize, usize)> for RMatrix {
    type Output = RingElem;
    fn index(&self, (i, j): (usize, usize)) -> &RingElem {
        assert!(i < self.r && j < self.r, "index ({i}, {j}) out of range");
        &self.entries[i * self.r + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RingElem {
        assert!(i < self.r && j < self.r, "index ({i}, {j}) out of range");
        &mut self.entries[i * self.r + j]
    }
}

/// Panics on a size mismatch; see [`RMatrix::try_mul`].
impl Mul<&RMatrix> for &RMatrix {
    type Output = RMatrix;
    fn mul(self, rhs: &RMatrix) -> RMatrix {
        self.try_mul(rhs).expect("matrix size mismatch")
    }
}

impl Mul<RMatrix> for RMatrix {
    type Output = RMatrix;
    fn mul(self, rhs: RMatrix) -> RMatrix {
        &self * &rhs
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        for row in &cells {
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {0}x{0}", self.r)?;
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RMatrixRepr {
    r: usize,
    entries: Vec<Vec<RingElem>>,
}

/// JSON: `{"r": n, "entries": [[..row 1..], ..]}`, row-major.
impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RMatrixRepr {
            r: self.r,
            entries: self.rows().map(<[RingElem]>::to_vec).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RMatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.r {
            return Err(serde::de::Error::custom(format!(
                "declared r = {} but {} rows given",
                repr.r,
                repr.entries.len()
            )));
        }
        RMatrix::from_rows(repr.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{idx, partition};

    fn t(k: i64) -> RingElem {
        RingElem::t_pow(k)
    }

    fn ints(c: &[i64]) -> RingElem {
        RingElem::from_ints(c)
    }

    /// The 4x4 matrix N of the worked example.
    fn example_n() -> RMatrix {
        let z = RingElem::zero;
        RMatrix::from_rows(vec![
            vec![t(4), t(4), t(3), t(2)],
            vec![z(), t(6), ints(&[0, 0, 0, 0, 1, 1]), ints(&[0, 0, 0, 2, 1])],
            vec![z(), z(), t(5), ints(&[0, 0, 0, 1, 2])],
            vec![z(), z(), z(), t(4)],
        ])
        .unwrap()
    }

    /// Independent determinant by permutation expansion.
    fn leibniz(m: &RMatrix) -> RingElem {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.size();
        let mut acc = RingElem::zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = RingElem::one();
            for (i, &j) in p.iter().enumerate() {
                term = &term * &m[(i, j)];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            acc += &term;
        }
        acc
    }

    #[test]
    fn example_full_determinant_has_order_nineteen() {
        let n = example_n();
        assert_eq!(n.minor_order(&idx![1, 2, 3, 4], &idx![1, 2, 3, 4]).unwrap(), 19);
        assert_eq!(n.det(), leibniz(&n));
    }

    #[test]
    fn example_omit_first_row_has_order_fifteen() {
        let n = example_n();
        assert_eq!(n.minor_order(&idx![2, 3, 4], &idx![2, 3, 4]).unwrap(), 15);
    }

    #[test]
    fn empty_minor_is_one() {
        let n = example_n();
        assert!(n.minor(&IndexSet::empty(), &IndexSet::empty()).unwrap().is_one());
        assert!(RMatrix::identity(3).minor(&idx![1, 3], &idx![1, 3]).unwrap().is_one());
    }

    #[test]
    fn minor_errors_and_zero_rows() {
        let n = example_n();
        assert!(matches!(
            n.minor(&idx![1, 2], &idx![1]),
            Err(MatrixError::DimensionMismatch(_))
        ));
        assert!(n.minor(&idx![1, 5], &idx![1, 2]).is_err());
        // row 4 restricted to columns (1,2,3) is zero
        assert_eq!(n.minor_order(&idx![1, 4], &idx![1, 2]).unwrap(), Valuation::Infinite);
    }

    #[test]
    fn diagonal_minor_orders_are_partition_weights() {
        let mu = partition![7, 4, 2, 1];
        let d = RMatrix::diag_from_partition(&mu, 4).unwrap();
        for k in 0..=4 {
            for i in IndexSet::all(4, k) {
                assert_eq!(d.minor_order(&i, &i).unwrap(), i.weight(&mu));
            }
        }
        assert_eq!(
            RMatrix::diag_from_partition(&partition![], 3).unwrap(),
            RMatrix::identity(3)
        );
        assert!(RMatrix::diag_from_partition(&partition![1, 1, 1], 2).is_err());
    }

    #[test]
    fn bareiss_matches_leibniz_on_dense_matrices() {
        let m = RMatrix::from_fn(5, |i, j| ints(&[(i * 3 + j) as i64 % 7 - 3, (i + 2 * j) as i64 % 5, 1]));
        assert_eq!(m.det(), leibniz(&m));
        let with_fraction = RMatrix::from_fn(4, |i, j| {
            if i == j {
                &t(1) / &ints(&[1, 1])
            } else {
                ints(&[(i + j) as i64, 1])
            }
        });
        assert_eq!(with_fraction.det(), leibniz(&with_fraction));
    }

    #[test]
    fn inverse_roundtrip() {
        let n = example_n();
        let inv = n.inverse().unwrap();
        assert_eq!(&n * &inv, RMatrix::identity(4));
        assert!(!inv.is_integral());
        assert_eq!(RMatrix::zero(2).inverse(), Err(MatrixError::RankDeficient));
    }

    #[test]
    fn mu_admissible_examples() {
        let mu = partition![5];
        let upper = RMatrix::from_rows(vec![vec![ints(&[2, 1]), t(0)], vec![RingElem::zero(), ints(&[-3])]]).unwrap();
        assert!(is_mu_admissible(&upper, &mu));
        assert!(is_mu_admissible(&RMatrix::identity(2), &mu));
        let low = RMatrix::from_rows(vec![vec![t(0), RingElem::zero()], vec![ints(&[1]), t(0)]]).unwrap();
        assert!(!is_mu_admissible(&low, &mu));
        let low_ok = RMatrix::from_rows(vec![vec![t(0), RingElem::zero()], vec![t(5), t(0)]]).unwrap();
        assert!(is_mu_admissible(&low_ok, &mu));
        // not invertible over R
        assert!(!is_mu_admissible(&RMatrix::diag(vec![t(1), t(0)]), &mu));
    }

    #[test]
    fn json_layout() {
        let m = RMatrix::diag(vec![t(1), ints(&[2])]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"r":2,"entries":[[{"num":[["1",1]]},{"num":[]}],[{"num":[]},{"num":[["2",0]]}]]}"#
        );
        assert_eq!(serde_json::from_str::<RMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<RMatrix>(r#"{"r":2,"entries":[[{"num":[]}]]}"#).is_err());
    }
}
