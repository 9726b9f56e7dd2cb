use super::{IndexSet, MatrixError, MinorCache, RMatrix};
use crate::dvr::{Poly, RingElem, Valuation};
use crate::tableaux::Partition;

/// `P · M · Q⁻¹ = D` with `D = diag(t^{e_1}, ..., t^{e_r})`, `e` decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub p: RMatrix,
    pub q: RMatrix,
    pub d: RMatrix,
    pub invariants: Partition,
}

/// Smith reduction over `R` by minimal-valuation pivoting.
///
/// Rows are first scaled by their (unit) common denominators, after which all
/// row operations stay polynomial: a row is replaced by `u · row_i - c · row_k`
/// where the pivot is `u t^v`, then divided exactly by the unit part of the
/// previous pivot as in Bareiss elimination. Column operations only zero the pivot row, so
/// they are not tracked; `Q` is recovered at the end as `D⁻¹ · P · M`.
pub fn smith_transforms(m: &RMatrix) -> Result<SmithForm, MatrixError> {
    let r = m.size();
    let Elimination { mut exps, mut units, p } = eliminate(m, true)?;
    let mut p = p.expect("tracked");
    exps.reverse();
    units.reverse();
    p.reverse();
    let invariants = Partition::new(exps.iter().map(|&e| e as u32).collect()).expect("pivot orders are nondecreasing");
    let d = RMatrix::diag_from_partition(&invariants, r)?;
    let p_poly = RMatrix::from_fn(r, |i, j| RingElem::from_poly(p[i][j].clone()));
    let pm = &p_poly * m;
    let mut q = RMatrix::zero(r);
    let mut p_out = RMatrix::zero(r);
    for k in 0..r {
        let scale = RingElem::from_fraction(Poly::one(), units[k].clone()).expect("pivot unit is nonzero");
        let q_scale = scale.mul_t_pow(-(exps[k] as i64));
        for j in 0..r {
            p_out[(k, j)] = &p_poly[(k, j)] * &scale;
            q[(k, j)] = &pm[(k, j)] * &q_scale;
        }
    }
    debug_assert!(q.is_integral());
    Ok(SmithForm {
        p: p_out,
        q,
        d,
        invariants,
    })
}

struct Elimination {
    exps: Vec<usize>,
    units: Vec<Poly>,
    p: Option<Vec<Vec<Poly>>>,
}

fn eliminate(m: &RMatrix, track: bool) -> Result<Elimination, MatrixError> {
    if let Some((i, j)) = m.first_non_integral() {
        return Err(MatrixError::NotIntegral(i, j));
    }
    let r = m.size();
    let mut a: Vec<Vec<Poly>> = Vec::with_capacity(r);
    let mut p: Vec<Vec<Poly>> = if track {
        vec![vec![Poly::zero(); r]; r]
    } else {
        Vec::new()
    };
    for (i, row) in m.rows().enumerate() {
        let l = row.iter().fold(Poly::one(), |l, x| Poly::lcm(&l, x.denominator()));
        a.push(
            row.iter()
                .map(|x| (x.numerator() * &l).div_exact(x.denominator()))
                .collect(),
        );
        if track {
            p[i][i] = l;
        }
    }

    let mut exps = Vec::with_capacity(r);
    let mut units = Vec::with_capacity(r);
    let mut prev = Poly::one();
    for k in 0..r {
        let (pi, pj) = (k..r)
            .flat_map(|i| (k..r).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| (a[i][j].low_degree(), a[i][j].degree()))
            .ok_or(MatrixError::RankDeficient)?;
        a.swap(k, pi);
        if track {
            p.swap(k, pi);
        }
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let v = a[k][k].low_degree().expect("nonzero pivot");
        let u = a[k][k].shift_down(v);
        if (k + 1..r).all(|i| a[i][k].is_zero()) {
            // the remaining block is eliminated on its own
            prev = Poly::one();
        } else {
            for i in k + 1..r {
                let c = a[i][k].shift_down(v);
                axpy(&mut a, i, k, &c, &u, &prev, k);
                if track {
                    axpy(&mut p, i, k, &c, &u, &prev, 0);
                }
            }
            prev = u.make_monic();
        }
        a[k][k + 1..].fill(Poly::zero());
        exps.push(v);
        units.push(u);
    }
    Ok(Elimination {
        exps,
        units,
        p: track.then_some(p),
    })
}

/// `row_i ← (s · row_i - c · row_k) / d` on columns `from..`; the division is
/// exact.
fn axpy(m: &mut [Vec<Poly>], i: usize, k: usize, c: &Poly, s: &Poly, d: &Poly, from: usize) {
    for j in from..m[i].len() {
        let mut x = s * &m[i][j];
        if !c.is_zero() && !m[k][j].is_zero() {
            x = &x - &(c * &m[k][j]);
        }
        m[i][j] = x.div_exact(d);
    }
}

/// `inv(M)`: orders of the invariant factors, largest first.
pub fn invariant_partition(m: &RMatrix) -> Result<Partition, MatrixError> {
    let mut exps = eliminate(m, false)?.exps;
    exps.reverse();
    Ok(Partition::new(exps.into_iter().map(|e| e as u32).collect()).expect("pivot orders are nondecreasing"))
}

/// `inv(M)` from determinantal divisors: `g_k` is the least order of a `k×k`
/// minor and the invariants are the differences `g_k - g_{k-1}`.
pub fn invariant_partition_oracle(m: &RMatrix) -> Result<Partition, MatrixError> {
    if let Some((i, j)) = m.first_non_integral() {
        return Err(MatrixError::NotIntegral(i, j));
    }
    let r = m.size();
    let mut cache = MinorCache::new(m);
    let mut g = vec![0i64];
    for k in 1..=r {
        let sets = IndexSet::all(r, k);
        let mut best = Valuation::Infinite;
        for i in &sets {
            for j in &sets {
                best = best.min(cache.order(i, j)?);
            }
        }
        match best {
            Valuation::Finite(v) => g.push(v),
            Valuation::Infinite => return Err(MatrixError::RankDeficient),
        }
    }
    let parts: Vec<u32> = g.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
    Ok(Partition::from_unsorted(parts))
}

impl RMatrix {
    pub fn invariant_partition(&self) -> Result<Partition, MatrixError> {
        invariant_partition(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::random_unit;
    use crate::partition;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(k: i64) -> RingElem {
        RingElem::t_pow(k)
    }

    fn example_n() -> RMatrix {
        let z = RingElem::zero;
        let p = RingElem::from_ints;
        RMatrix::from_rows(vec![
            vec![t(4), t(4), t(3), t(2)],
            vec![z(), t(6), p(&[0, 0, 0, 0, 1, 1]), p(&[0, 0, 0, 2, 1])],
            vec![z(), z(), t(5), p(&[0, 0, 0, 1, 2])],
            vec![z(), z(), z(), t(4)],
        ])
        .unwrap()
    }

    fn check(m: &RMatrix) -> SmithForm {
        let s = smith_transforms(m).unwrap();
        assert_eq!(&(&s.p * m), &(&s.d * &s.q));
        assert!(s.p.is_invertible_over_r() && s.q.is_invertible_over_r());
        assert_eq!(s.d, RMatrix::diag_from_partition(&s.invariants, m.size()).unwrap());
        s
    }

    #[test]
    fn example_invariants() {
        let n = example_n();
        assert_eq!(check(&n).invariants, partition![8, 5, 4, 2]);
        assert_eq!(invariant_partition_oracle(&n).unwrap(), partition![8, 5, 4, 2]);
    }

    #[test]
    fn decreasing_diagonal_is_fixed() {
        let d = RMatrix::diag_from_partition(&partition![5, 3, 3, 0], 4).unwrap();
        let s = check(&d);
        assert_eq!(s.invariants, partition![5, 3, 3]);
        assert_eq!(s.d, d);
        let small = RMatrix::diag(vec![t(2), t(1)]);
        assert_eq!(invariant_partition_oracle(&small).unwrap(), partition![2, 1]);
        assert_eq!(invariant_partition(&small).unwrap(), partition![2, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(invariant_partition(&RMatrix::zero(2)), Err(MatrixError::RankDeficient));
        assert_eq!(
            invariant_partition_oracle(&RMatrix::zero(2)),
            Err(MatrixError::RankDeficient)
        );
        let frac = RMatrix::diag(vec![t(-1), t(0)]);
        assert_eq!(invariant_partition(&frac), Err(MatrixError::NotIntegral(1, 1)));
    }

    #[test]
    fn random_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..30 {
            let r = rng.gen_range(1..=4);
            let m = RMatrix::from_fn(r, |_, _| {
                if rng.gen_bool(0.25) {
                    RingElem::zero()
                } else {
                    &random_unit(&mut rng).mul_t_pow(rng.gen_range(0..=6))
                        + &random_unit(&mut rng).mul_t_pow(rng.gen_range(0..=6))
                }
            });
            if !m.is_full_rank() {
                continue;
            }
            let s = check(&m);
            assert_eq!(s.invariants, invariant_partition_oracle(&m).unwrap());
        }
    }
}
