//! Pair equivalence and reduction to μ-generic form.
//!
//! The group `GL_r(R)^3` acts on pairs by
//! `(P, Q, T) · (M, N) = (P M Q⁻¹, Q N T⁻¹)`, preserving `inv(M)`, `inv(N)`
//! and `inv(MN)`.

mod certificate;
mod reduce;
mod triangular;

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dvr::{random_unit, RingElem};
use crate::matrix::{invariant_partition, smith_transforms, MatrixError, RMatrix};
use crate::tableaux::Partition;

pub use certificate::{
    corner_invariant_check, index_pairs, to_mu_generic, to_mu_generic_with, verify_certificate, verify_mu_generic,
    CheckFailure, CornerReport, GenericFactors, MuGenericCertificate, ResampleEvent, VerificationReport, VerifyMode,
    DEFAULT_MAX_RETRIES,
};
pub use reduce::{column_reduce, ColumnReduction, ReductionError};
pub use triangular::{triangularize_right, RightTriangularization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenericError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{0} is not of full rank")]
    NotFullRank(&'static str),
    #[error("{0} is not over the valuation ring")]
    NotIntegral(&'static str),
    #[error("group element component {0} is not invertible over the valuation ring")]
    NotInvertible(&'static str),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("no mu-generic form found in {attempts} attempts; last failure: {last_failure}")]
    RetriesExhausted { attempts: usize, last_failure: String },
}

/// A pair of full-rank matrices over `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixPair {
    pub first: RMatrix,
    pub second: RMatrix,
}

/// The three invariant partitions of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariants {
    pub mu: Partition,
    pub nu: Partition,
    pub lambda: Partition,
}

impl MatrixPair {
    pub fn new(first: RMatrix, second: RMatrix) -> Result<Self, GenericError> {
        let p = MatrixPair { first, second };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<(), GenericError> {
        if self.first.size() != self.second.size() {
            return Err(MatrixError::DimensionMismatch(format!(
                "pair of sizes {} and {}",
                self.first.size(),
                self.second.size()
            ))
            .into());
        }
        for (m, name) in [(&self.first, "first"), (&self.second, "second")] {
            if !m.is_integral() {
                return Err(GenericError::NotIntegral(name));
            }
            if !m.is_full_rank() {
                return Err(GenericError::NotFullRank(name));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.first.size()
    }

    pub fn product(&self) -> RMatrix {
        &self.first * &self.second
    }

    pub fn invariants(&self) -> Result<PairInvariants, GenericError> {
        Ok(PairInvariants {
            mu: invariant_partition(&self.first)?,
            nu: invariant_partition(&self.second)?,
            lambda: invariant_partition(&self.product())?,
        })
    }
}

/// `(P, Q, T) ∈ GL_r(R)^3`, with the inverses of `Q` and `T` computed on
/// first use.
#[derive(Clone, Debug, Serialize)]
pub struct GroupElement {
    pub p: RMatrix,
    pub q: RMatrix,
    pub t: RMatrix,
    #[serde(skip_serializing)]
    q_inv: OnceLock<RMatrix>,
    #[serde(skip_serializing)]
    t_inv: OnceLock<RMatrix>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q && self.t == other.t
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn new(p: RMatrix, q: RMatrix, t: RMatrix) -> Result<Self, GenericError> {
        for (m, name) in [(&p, "P"), (&q, "Q"), (&t, "T")] {
            if !m.is_invertible_over_r() {
                return Err(GenericError::NotInvertible(name));
            }
        }
        Ok(GroupElement {
            p,
            q,
            t,
            q_inv: OnceLock::new(),
            t_inv: OnceLock::new(),
        })
    }

    pub fn identity(r: usize) -> Self {
        let i = RMatrix::identity(r);
        GroupElement {
            p: i.clone(),
            q: i.clone(),
            t: i.clone(),
            q_inv: OnceLock::from(i.clone()),
            t_inv: OnceLock::from(i),
        }
    }

    pub fn q_inv(&self) -> &RMatrix {
        self.q_inv.get_or_init(|| self.q.inverse().expect("Q is invertible"))
    }

    pub fn t_inv(&self) -> &RMatrix {
        self.t_inv.get_or_init(|| self.t.inverse().expect("T is invertible"))
    }

    /// `self ∘ other`: acting by the result equals acting by `other`, then `self`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            p: &self.p * &other.p,
            q: &self.q * &other.q,
            t: &self.t * &other.t,
            q_inv: OnceLock::new(),
            t_inv: OnceLock::new(),
        }
    }

    /// A random element of the stabilizer of `D_μ`: `Q` μ-admissible and
    /// `P = D_μ Q D_μ⁻¹`.
    pub fn random_stabilizer<R: Rng + ?Sized>(rng: &mut R, mu: &Partition, r: usize, max_order: i64) -> Self {
        let q = random_mu_admissible(rng, mu, r, max_order);
        let t = random_gl(rng, r, max_order);
        let p = crate::matrix::conjugate_by_partition(&q, mu);
        GroupElement::new(p, q, t).expect("sampled factors are invertible over R")
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, r: usize, max_order: i64) -> Self {
        let p = random_gl(rng, r, max_order);
        let q = random_gl(rng, r, max_order);
        let t = random_gl(rng, r, max_order);
        GroupElement::new(p, q, t).expect("sampled factors are invertible over R")
    }
}

/// `(P M Q⁻¹, Q N T⁻¹)`.
pub fn act(g: &GroupElement, pair: &MatrixPair) -> Result<MatrixPair, GenericError> {
    if g.p.size() != pair.size() {
        return Err(MatrixError::DimensionMismatch("group element and pair differ in size".into()).into());
    }
    Ok(MatrixPair {
        first: &(&g.p * &pair.first) * g.q_inv(),
        second: &(&g.q * &pair.second) * g.t_inv(),
    })
}

/// Random entry `u t^k` with `k` in `0..=max_order`, or zero.
fn random_entry<R: Rng + ?Sized>(rng: &mut R, max_order: i64) -> RingElem {
    if rng.gen_bool(0.25) {
        RingElem::zero()
    } else {
        random_unit(rng).mul_t_pow(rng.gen_range(0..=max_order))
    }
}

/// `Π L U` with unit constant diagonals, so the inverse is again polynomial.
pub fn random_gl<R: Rng + ?Sized>(rng: &mut R, r: usize, max_order: i64) -> RMatrix {
    let l = RMatrix::from_fn(r, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => random_unit(rng),
        std::cmp::Ordering::Greater => random_entry(rng, max_order),
        std::cmp::Ordering::Less => RingElem::zero(),
    });
    let u = RMatrix::from_fn(r, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => random_unit(rng),
        std::cmp::Ordering::Less => random_entry(rng, max_order),
        std::cmp::Ordering::Greater => RingElem::zero(),
    });
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    &(&RMatrix::permutation(&perm) * &l) * &u
}

/// `D_μ⁻¹ L⁰ D_μ · U` with `L⁰` lower and `U` upper triangular over `R`.
pub fn random_mu_admissible<R: Rng + ?Sized>(rng: &mut R, mu: &Partition, r: usize, max_order: i64) -> RMatrix {
    let m = mu.padded(r);
    let l = RMatrix::from_fn(r, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => random_unit(rng),
        std::cmp::Ordering::Greater => random_entry(rng, max_order).mul_t_pow(m[j] as i64 - m[i] as i64),
        std::cmp::Ordering::Less => RingElem::zero(),
    });
    let u = RMatrix::from_fn(r, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => random_unit(rng),
        std::cmp::Ordering::Less => random_entry(rng, max_order),
        std::cmp::Ordering::Greater => RingElem::zero(),
    });
    &l * &u
}

/// `D_μ` exactly, with `μ` read off a decreasing diagonal of `t`-powers.
fn as_partition_diagonal(m: &RMatrix) -> Option<Partition> {
    if !m.is_diagonal() {
        return None;
    }
    let mut parts = Vec::with_capacity(m.size());
    for i in 0..m.size() {
        let v = m[(i, i)].valuation().finite()?;
        if v < 0 || m[(i, i)] != RingElem::t_pow(v) {
            return None;
        }
        parts.push(v as u32);
    }
    Partition::new(parts).ok()
}

/// Replaces the first matrix by `D_μ` using its Smith transforms: returns
/// `(D_μ, Q N)` and the element `(P, Q, I)`.
pub fn diagonalize_first(pair: &MatrixPair) -> Result<(MatrixPair, GroupElement, Partition), GenericError> {
    pair.check()?;
    let r = pair.size();
    if let Some(mu) = as_partition_diagonal(&pair.first) {
        return Ok((pair.clone(), GroupElement::identity(r), mu));
    }
    let s = smith_transforms(&pair.first)?;
    let second = &s.q * &pair.second;
    let g = GroupElement {
        p: s.p,
        q: s.q,
        t: RMatrix::identity(r),
        q_inv: OnceLock::new(),
        t_inv: OnceLock::from(RMatrix::identity(r)),
    };
    Ok((MatrixPair { first: s.d, second }, g, s.invariants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::is_mu_admissible;
    use crate::partition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_pair() -> MatrixPair {
        let real = crate::realize::realize(
            &crate::tableaux::Filling::new(vec![vec![4], vec![2, 4], vec![1, 1, 3], vec![1, 0, 1, 2]]).unwrap(),
            &partition![7, 4, 2, 1],
        )
        .unwrap();
        MatrixPair::new(real.m, real.n).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let p = example_pair();
        assert_eq!(act(&GroupElement::identity(4), &p).unwrap(), p);
    }

    #[test]
    fn action_law_and_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let p = MatrixPair::new(
            RMatrix::diag_from_partition(&partition![3, 1], 3).unwrap(),
            random_gl(&mut rng, 3, 2)
                .try_mul(&RMatrix::diag_from_partition(&partition![2, 2, 1], 3).unwrap())
                .unwrap(),
        )
        .unwrap();
        let g1 = GroupElement::random(&mut rng, 3, 2);
        let g2 = GroupElement::random(&mut rng, 3, 2);
        let lhs = act(&g2, &act(&g1, &p).unwrap()).unwrap();
        let rhs = act(&g2.compose(&g1), &p).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.invariants().unwrap(), p.invariants().unwrap());
    }

    #[test]
    fn random_generators_land_in_their_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mu = partition![5, 2, 2];
        for _ in 0..5 {
            let q = random_mu_admissible(&mut rng, &mu, 4, 3);
            assert!(is_mu_admissible(&q, &mu));
            let q2 = random_mu_admissible(&mut rng, &mu, 4, 3);
            assert!(is_mu_admissible(&(&q * &q2), &mu));
            assert!(is_mu_admissible(&q.inverse().unwrap(), &mu));
            assert!(random_gl(&mut rng, 4, 3).is_invertible_over_r());
        }
    }

    #[test]
    fn diagonalize_first_fast_path_and_smith_path() {
        let p = example_pair();
        let (same, g, mu) = diagonalize_first(&p).unwrap();
        assert_eq!(same, p);
        assert_eq!(g, GroupElement::identity(4));
        assert_eq!(mu, partition![7, 4, 2, 1]);

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let moved = act(&GroupElement::random(&mut rng, 4, 2), &p).unwrap();
        let (d, g, mu) = diagonalize_first(&moved).unwrap();
        assert_eq!(
            d.first,
            RMatrix::diag_from_partition(&partition![7, 4, 2, 1], 4).unwrap()
        );
        assert_eq!(mu, partition![7, 4, 2, 1]);
        assert_eq!(act(&g, &moved).unwrap(), d);
        assert_eq!(d.invariants().unwrap(), p.invariants().unwrap());
    }

    #[test]
    fn rejects_bad_pairs() {
        let i = RMatrix::identity(2);
        assert_eq!(
            MatrixPair::new(i.clone(), RMatrix::zero(2)),
            Err(GenericError::NotFullRank("second"))
        );
        assert!(MatrixPair::new(i.clone(), RMatrix::identity(3)).is_err());
        let frac = RMatrix::diag(vec![RingElem::t_pow(-1), RingElem::one()]);
        assert_eq!(
            MatrixPair::new(frac, i.clone()),
            Err(GenericError::NotIntegral("first"))
        );
        assert_eq!(
            GroupElement::new(i.clone(), RMatrix::diag(vec![RingElem::t_pow(1), RingElem::one()]), i),
            Err(GenericError::NotInvertible("Q"))
        );
    }
}
