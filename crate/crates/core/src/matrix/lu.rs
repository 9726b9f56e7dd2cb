use super::{IndexSet, MatrixError, MinorCache, RMatrix};
use crate::dvr::RingElem;

/// `A = B · C` with `B` unit lower triangular and `C` upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuFactors {
    pub lower: RMatrix,
    pub upper: RMatrix,
}

fn rows_with(k: usize, g: usize) -> IndexSet {
    let mut v: Vec<usize> = (1..k).collect();
    v.push(g);
    IndexSet::from_sorted(v)
}

/// LU factorization from minor quotients, with `b_kk = 1`:
/// `b_gk = A(1..k-1,g; 1..k) / D_k` and `c_kg = A(1..k; 1..k-1,g) / D_{k-1}`.
pub fn lu_decompose(a: &RMatrix) -> Result<LuFactors, MatrixError> {
    let r = a.size();
    let mut cache = MinorCache::new(a);
    let mut d = vec![RingElem::one()];
    for k in 1..=r {
        let dk = cache.minor(&IndexSet::range(1, k), &IndexSet::range(1, k))?;
        if dk.is_zero() {
            return Err(MatrixError::VanishingPrincipalMinor(k));
        }
        d.push(dk);
    }
    let mut lower = RMatrix::identity(r);
    let mut upper = RMatrix::zero(r);
    for k in 1..=r {
        let lead = IndexSet::range(1, k);
        for g in k + 1..=r {
            let m = cache.minor(&rows_with(k, g), &lead)?;
            lower[(g - 1, k - 1)] = &m / &d[k];
        }
        for g in k..=r {
            let m = cache.minor(&lead, &rows_with(k, g))?;
            upper[(k - 1, g - 1)] = &m / &d[k - 1];
        }
    }
    Ok(LuFactors { lower, upper })
}
