use serde::{Deserialize, Serialize};

use crate::dvr::{Poly, Rational, RingElem};
use crate::matrix::{MatrixError, RMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A truncated power series `(c_0 + c_1 t + ... + c_{p-1} t^{p-1}) / d`
/// modulo `t^p`, with integer `c_k`, positive `d` and no common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series {
    c: Vec<BigInt>,
    d: BigInt,
}

impl Series {
    fn normalized(mut c: Vec<BigInt>, mut d: BigInt) -> Self {
        if d.is_negative() {
            d = -d;
            c.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        let g = c.iter().fold(d.clone(), |g, x| if x.is_zero() { g } else { g.gcd(x) });
        if !g.is_one() {
            c.iter_mut().for_each(|x| *x = &*x / &g);
            d /= &g;
        }
        Series { c, d }
    }

    fn from_poly(f: &Poly, p: usize) -> Self {
        let coeffs: Vec<Rational> = (0..p).map(|k| f.coeff(k)).collect();
        let d = coeffs.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let c = coeffs.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        Series::normalized(c, d)
    }

    /// Expansion of an element of `R`.
    fn from_ring(x: &RingElem, p: usize) -> Self {
        let num = Series::from_poly(x.numerator(), p);
        if x.denominator().is_one() {
            return num;
        }
        let den = Series::from_poly(x.denominator(), p);
        num.mul(&den.inv().expect("denominators of R are units"))
    }

    fn precision(&self) -> usize {
        self.c.len()
    }

    fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Product to the smaller of the two precisions.
    fn mul(&self, rhs: &Series) -> Series {
        let p = self.precision().min(rhs.precision());
        let mut c = vec![BigInt::zero(); p];
        for (i, a) in self.c.iter().take(p).enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.c.iter().take(p - i).enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Series::normalized(c, &self.d * &rhs.d)
    }

    /// Difference to the smaller of the two precisions.
    fn sub(&self, rhs: &Series) -> Series {
        let g = self.d.gcd(&rhs.d);
        let (fa, fb) = (&rhs.d / &g, &self.d / &g);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a * &fa - b * &fb).collect();
        Series::normalized(c, &self.d * &fa)
    }

    fn truncate(mut self, p: usize) -> Series {
        self.c.truncate(p);
        self
    }

    /// Inverse of a unit, `None` when `c_0 = 0`.
    fn inv(&self) -> Option<Series> {
        let p = self.precision();
        let c0 = self.c.first()?.clone();
        if c0.is_zero() {
            return None;
        }
        // w_k = c_0^{k+1} [t^k](1/c), so w_k = -Σ_{j=1..k} c_j w_{k-j} c_0^{j-1}
        let mut w = vec![BigInt::one()];
        let mut pow = vec![BigInt::one()];
        for k in 1..p {
            pow.push(&pow[k - 1] * &c0);
            let acc = (1..=k).fold(BigInt::zero(), |acc, j| acc + &self.c[j] * &w[k - j] * &pow[j - 1]);
            w.push(-acc);
        }
        let top = &pow[p - 1] * &c0;
        let c = (0..p).map(|k| &w[k] * &pow[p - 1 - k] * &self.d).collect();
        Some(Series::normalized(c, top))
    }

    /// Some `q` with `self = t^k q` modulo `t^p`; the top `k` coefficients of
    /// `q` are free and set to zero.
    fn div_t_pow(&self, k: usize) -> Series {
        let p = self.precision();
        let mut c = vec![BigInt::zero(); p];
        if k < p {
            c[..p - k].clone_from_slice(&self.c[k..p]);
        }
        Series::normalized(c, self.d.clone())
    }

    /// `self / t^k` to precision `p - k`, or `None` when `t^k` does not divide.
    fn exact_div_t_pow(&self, k: usize) -> Option<Series> {
        if self.c.iter().take(k).any(|x| !x.is_zero()) {
            return None;
        }
        Some(Series::normalized(
            self.c[k.min(self.precision())..].to_vec(),
            self.d.clone(),
        ))
    }

    fn to_ring(&self) -> RingElem {
        let d = Rational::from_integer(self.d.clone());
        RingElem::from_poly(Poly::from_coeffs(
            self.c.iter().map(|x| Rational::from_integer(x.clone()) / &d).collect(),
        ))
    }
}

/// Column Hermite form `H = N T₀` of a full-rank `N`, with `T₀ ∈ GL_r(R)`
/// implicit: `H` is upper triangular with diagonal `t^{a_i}`, and the entries
/// of row `i` right of the diagonal are polynomials of degree below `a_i`.
///
/// The column lattice of `N` contains `t^{ν_1} R^r`, so `H` is computed from
/// `N` modulo `t^p` with `p = 2ν_1 + 1`. The result is certified exactly:
/// `Σ a_i = ‖det N‖ = |ν|` and `adj(N) H ≡ 0` modulo `t^{|ν|}`, so `H` and
/// `N` generate the same lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnReduction {
    pub h: RMatrix,
    pub exponents: Vec<u32>,
    pub precision: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("column reduction lost the lattice: {0}")]
    LatticeMismatch(String),
}

/// `nu` must be the invariant partition of `n`.
pub fn column_reduce(n: &RMatrix, nu: &crate::tableaux::Partition) -> Result<ColumnReduction, ReductionError> {
    let r = n.size();
    if !n.is_integral() {
        return Err(MatrixError::NotIntegral(0, 0).into());
    }
    let p = 2 * nu.part(1) as usize + 1;
    let mut m: Vec<Vec<Series>> = (0..r)
        .map(|i| (0..r).map(|j| Series::from_ring(&n[(i, j)], p)).collect())
        .collect();
    let col_axpy = |m: &mut Vec<Vec<Series>>, target: usize, source: usize, f: &Series| {
        for row in m.iter_mut() {
            if !row[source].is_zero() {
                let d = row[source].mul(f);
                row[target] = row[target].sub(&d);
            }
        }
    };
    let mut exponents = vec![0u32; r];
    for k in (0..r).rev() {
        let pivot = (0..=k)
            .filter_map(|j| m[k][j].valuation().map(|v| (v, j)))
            .min_by_key(|&(v, j)| (v, std::cmp::Reverse(j)))
            .ok_or(MatrixError::RankDeficient)?;
        let (a, j0) = pivot;
        for row in m.iter_mut() {
            row.swap(k, j0);
        }
        let unit = m[k][k].div_t_pow(a).inv().expect("pivot has exact valuation");
        for row in m.iter_mut() {
            row[k] = row[k].mul(&unit);
        }
        for j in 0..k {
            if !m[k][j].is_zero() {
                let q = m[k][j].div_t_pow(a);
                col_axpy(&mut m, j, k, &q);
            }
        }
        exponents[k] = a as u32;
    }
    for i in (0..r).rev() {
        let a = exponents[i] as usize;
        for j in i + 1..r {
            let q = m[i][j].div_t_pow(a);
            if !q.is_zero() {
                col_axpy(&mut m, j, i, &q);
            }
        }
    }
    let h = RMatrix::from_fn(r, |i, j| if i > j { RingElem::zero() } else { m[i][j].to_ring() });
    let red = ColumnReduction {
        h,
        exponents,
        precision: p,
    };
    certify(n, nu, &red)?;
    Ok(red)
}

/// Solves `H X = N` by back substitution on series, each division by
/// `t^{a_i}` costing `a_i` coefficients of precision; starting from
/// `|ν| + 1` coefficients every divisibility test is exact.
fn certify(n: &RMatrix, nu: &crate::tableaux::Partition, red: &ColumnReduction) -> Result<(), ReductionError> {
    let r = n.size();
    let total: u64 = red.exponents.iter().map(|&a| a as u64).sum();
    if total != nu.weight() {
        return Err(ReductionError::LatticeMismatch(format!(
            "diagonal orders sum to {total}, determinant order is {}",
            nu.weight()
        )));
    }
    let p = nu.weight() as usize + 1;
    for col in 0..r {
        let mut x: Vec<Option<Series>> = vec![None; r];
        for i in (0..r).rev() {
            let mut num = Series::from_ring(&n[(i, col)], p);
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                let xj = xj.as_ref().expect("solved below");
                if !red.h[(i, j)].is_zero() {
                    let h = Series::from_ring(&red.h[(i, j)], xj.precision());
                    num = num.truncate(xj.precision()).sub(&h.mul(xj));
                }
            }
            let Some(xi) = num.exact_div_t_pow(red.exponents[i] as usize) else {
                return Err(ReductionError::LatticeMismatch(format!(
                    "column {} of N is not in the span of the reduced matrix",
                    col + 1
                )));
            };
            x[i] = Some(xi);
        }
    }
    Ok(())
}
