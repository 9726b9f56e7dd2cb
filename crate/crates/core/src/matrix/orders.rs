use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IndexSet, MatrixError, RMatrix};
use crate::dvr::{Poly, Valuation};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Product, truncated below degree `cap`.
fn mul(a: &IntPoly, b: &IntPoly, cap: usize) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); (a.len() + b.len() - 1).min(cap)];
    for (i, x) in a.iter().enumerate().take(cap) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(cap - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn add_signed(acc: &mut IntPoly, term: &IntPoly, positive: bool) {
    if acc.len() < term.len() {
        acc.resize(term.len(), BigInt::zero());
    }
    for (a, t) in acc.iter_mut().zip(term) {
        if positive {
            *a += t;
        } else {
            *a -= t;
        }
    }
}

/// Memoized minor orders of a matrix over `R`.
///
/// Every row is first multiplied by a unit so that it has integer polynomial
/// entries; this leaves all minor orders unchanged and keeps the expansion
/// free of rational function arithmetic. Only the orders are exposed.
///
/// With a cap `c`, the expansion runs modulo `t^c` and every order is
/// reported as `min(order, c)`, except that minors forced to vanish by a
/// triangular shape are reported as infinite.
pub struct OrderCache {
    r: usize,
    rows: Vec<Vec<IntPoly>>,
    cap: Option<usize>,
    upper: bool,
    lower: bool,
    memo: HashMap<(u64, u64), IntPoly>,
}

impl OrderCache {
    /// Exact orders.
    pub fn new(m: &RMatrix) -> Result<Self, MatrixError> {
        Self::build(m, None)
    }

    /// Orders saturated at `cap`.
    pub fn capped(m: &RMatrix, cap: u64) -> Result<Self, MatrixError> {
        Self::build(m, Some(cap as usize))
    }

    fn build(m: &RMatrix, cap: Option<usize>) -> Result<Self, MatrixError> {
        let r = m.size();
        assert!(r <= 64, "order cache supports at most 64 rows");
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            for j in 0..r {
                if !m[(i, j)].is_integral() {
                    return Err(MatrixError::NotIntegral(i, j));
                }
            }
            let den = (0..r).fold(Poly::one(), |l, j| l.lcm(m[(i, j)].denominator()));
            let polys: Vec<Poly> = (0..r)
                .map(|j| {
                    let x = &m[(i, j)];
                    &x.numerator().clone() * &den.div_exact(x.denominator())
                })
                .collect();
            let scale = polys
                .iter()
                .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
                .fold(BigInt::one(), |l, d| l.lcm(&d));
            rows.push(
                polys
                    .iter()
                    .map(|p| {
                        p.coeffs()
                            .iter()
                            .take(cap.unwrap_or(usize::MAX))
                            .map(|c| c.numer() * (&scale / c.denom()))
                            .collect()
                    })
                    .map(trim)
                    .collect(),
            );
        }
        Ok(OrderCache {
            r,
            rows,
            cap,
            upper: m.is_upper_triangular(),
            lower: m.is_lower_triangular(),
            memo: HashMap::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn order(&mut self, rows: &IndexSet, cols: &IndexSet) -> Result<Valuation, MatrixError> {
        if rows.len() != cols.len() {
            return Err(MatrixError::DimensionMismatch(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if rows.iter().chain(cols.iter()).any(|i| i > self.r) {
            return Err(MatrixError::BadIndexSet(format!(
                "{rows} x {cols} exceeds size {}",
                self.r
            )));
        }
        if (self.upper && !rows.precedes(cols)) || (self.lower && !cols.precedes(rows)) {
            return Ok(Valuation::Infinite);
        }
        let p = self.by_mask(rows.mask(), cols.mask());
        Ok(match (p.iter().position(|c| !c.is_zero()), self.cap) {
            (Some(k), _) => Valuation::Finite(k as i64),
            (None, Some(cap)) => Valuation::Finite(cap as i64),
            (None, None) => Valuation::Infinite,
        })
    }

    fn by_mask(&mut self, rows: u64, cols: u64) -> IntPoly {
        if rows == 0 {
            return vec![BigInt::one()];
        }
        if let Some(v) = self.memo.get(&(rows, cols)) {
            return v.clone();
        }
        let top = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Vec::new();
        let mut remaining = cols;
        let mut positive = true;
        let cap = self.cap.unwrap_or(usize::MAX);
        while remaining != 0 {
            let c = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            if !self.rows[top][c].is_empty() {
                let sub = self.by_mask(rest, cols & !(1u64 << c));
                if !sub.is_empty() {
                    add_signed(&mut acc, &mul(&self.rows[top][c], &sub, cap), positive);
                }
            }
            positive = !positive;
        }
        let acc = trim(acc);
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}
