use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dvr::{Poly, Rational, RingElem};
use crate::matrix::{MatrixError, RMatrix};

/// `A · T_L = U` with `T_L = Π · L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightTriangularization {
    pub t_l: RMatrix,
    pub permutation: RMatrix,
    pub lower: RMatrix,
    pub upper: RMatrix,
}

/// Column reduction of a full-rank `A` to upper triangular form.
///
/// Rows are processed bottom-up. In row `k` the pivot is the entry of least
/// valuation among columns `1..=k` (rightmost on ties); it is swapped into
/// column `k` and the entries to its left are cleared with lower triangular
/// column operations over `R`. The operations are fraction-free: columns are
/// first cleared of denominators, a pivot `u t^v` clears `a t^v` by
/// `col_j <- u col_j - a col_k`, and every updated column is then divided
/// exactly by the unit part of the previous pivot, as in Bareiss elimination.
pub fn triangularize_right(a: &RMatrix) -> Result<RightTriangularization, MatrixError> {
    let r = a.size();
    let mut u = a.clone();
    let mut t_l = RMatrix::identity(r);
    for j in 0..r {
        let d = (0..r).fold(Poly::one(), |l, i| l.lcm(u[(i, j)].denominator()));
        if !d.is_one() {
            let d = RingElem::from_poly(d);
            u.scale_col(j, &d);
            t_l.scale_col(j, &d);
        }
    }
    let mut perm = RMatrix::identity(r);
    let mut prev = Poly::one();
    for k in (0..r).rev() {
        let pivot = (0..=k)
            .filter(|&j| !u[(k, j)].is_zero())
            .min_by_key(|&j| (u[(k, j)].valuation(), std::cmp::Reverse(j)))
            .ok_or(MatrixError::RankDeficient)?;
        u.swap_cols(k, pivot);
        t_l.swap_cols(k, pivot);
        perm.swap_cols(k, pivot);
        let v = u[(k, k)].valuation().finite().expect("pivot is nonzero");
        let unit = u[(k, k)].mul_t_pow(-v);
        if (0..k).all(|j| u[(k, j)].is_zero()) {
            // the remaining block is eliminated on its own
            prev = Poly::one();
            continue;
        }
        for j in 0..k {
            let c = u[(k, j)].mul_t_pow(-v);
            u.scale_col(j, &unit);
            t_l.scale_col(j, &unit);
            if !c.is_zero() {
                u.col_axpy(j, k, &c);
                t_l.col_axpy(j, k, &c);
            }
            if !prev.is_one() {
                divide_col(&mut u, j, &prev);
                divide_col(&mut t_l, j, &prev);
            }
            normalize_content(&mut u, &mut t_l, j);
        }
        prev = unit.numerator().make_monic();
    }
    let lower = &perm.transpose() * &t_l;
    debug_assert!(lower.is_lower_triangular() && u.is_upper_triangular());
    Ok(RightTriangularization {
        t_l,
        permutation: perm,
        lower,
        upper: u,
    })
}

fn divide_col(m: &mut RMatrix, j: usize, d: &Poly) {
    for i in 0..m.size() {
        let x = &m[(i, j)];
        debug_assert!(x.denominator().is_one());
        m[(i, j)] = RingElem::from_poly(x.numerator().div_exact(d));
    }
}

/// Divides column `j` of both matrices by the rational content of its entries.
fn normalize_content(u: &mut RMatrix, t_l: &mut RMatrix, j: usize) {
    let r = u.size();
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for m in [&*u, &*t_l] {
        for i in 0..r {
            for (_, c) in m[(i, j)].numerator().terms() {
                num = num.gcd(c.numer());
                den = den.lcm(c.denom());
            }
        }
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return;
    }
    let f = RingElem::from_rational(Rational::new(den, num));
    u.scale_col(j, &f);
    t_l.scale_col(j, &f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::random_gl;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn upper_input_needs_nothing() {
        let a = RMatrix::from_fn(3, |i, j| {
            if i <= j {
                RingElem::from_ints(&[1 + (i + j) as i64, 1])
            } else {
                RingElem::zero()
            }
        });
        let tr = triangularize_right(&a).unwrap();
        assert_eq!(tr.t_l, RMatrix::identity(3));
        assert_eq!(tr.upper, a);
    }

    #[test]
    fn antidiagonal_gives_reversal() {
        let a = RMatrix::from_fn(4, |i, j| {
            if i + j == 3 {
                RingElem::t_pow(i as i64)
            } else {
                RingElem::zero()
            }
        });
        let tr = triangularize_right(&a).unwrap();
        assert_eq!(tr.t_l, RMatrix::permutation(&[3, 2, 1, 0]));
        assert_eq!(tr.lower, RMatrix::identity(4));
    }

    #[test]
    fn random_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let a = &random_gl(&mut rng, 4, 3)
                * &RMatrix::diag(vec![
                    RingElem::t_pow(3),
                    RingElem::t_pow(2),
                    RingElem::t_pow(2),
                    RingElem::one(),
                ]);
            let tr = triangularize_right(&a).unwrap();
            assert_eq!(&a * &tr.t_l, tr.upper);
            assert!(tr.upper.is_upper_triangular());
            assert!(tr.t_l.is_invertible_over_r());
            assert!(tr.lower.is_lower_triangular());
            assert_eq!(&tr.permutation * &tr.lower, tr.t_l);
        }
        assert_eq!(triangularize_right(&RMatrix::zero(2)), Err(MatrixError::RankDeficient));
    }

    #[test]
    fn polynomial_entries_stay_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..4 {
            let a = RMatrix::from_fn(6, |_, _| {
                let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
                RingElem::from_ints(&c).mul_t_pow(rng.gen_range(0..3))
            });
            if a.det().is_zero() {
                continue;
            }
            let tr = triangularize_right(&a).unwrap();
            assert_eq!(&a * &tr.t_l, tr.upper);
            assert!(tr.t_l.is_invertible_over_r());
            assert!(tr.lower.is_lower_triangular());
        }
    }
}
