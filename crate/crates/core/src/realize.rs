//! Factored matrix realizations of LR fillings.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dvr::RingElem;
use crate::matrix::{invariant_partition, MatrixError, RMatrix};
use crate::tableaux::{
    enumerate_fillings_in, sequence_from_filling, validate_filling, Filling, Partition, TableauxError, ValidityReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("filling is not a valid LR filling:\n{0}")]
    InvalidFilling(ValidityReport),
    #[error(transparent)]
    Tableaux(#[from] TableauxError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("realization check failed for {what}: expected {expected}, got {got}")]
    VerificationFailed {
        what: String,
        expected: Partition,
        got: Partition,
    },
    #[error("no compatible triple found within the bounds after {0} attempts")]
    NoTriple(usize),
}

/// The invariant partitions checked for one partial product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvReport {
    pub i: usize,
    /// `inv(N_1 ⋯ N_i)`.
    pub inv_n: Partition,
    /// `inv(M N_1 ⋯ N_i)`.
    pub inv_mn: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredRealization {
    pub mu: Partition,
    pub nu: Partition,
    pub lambda: Partition,
    #[serde(rename = "M")]
    pub m: RMatrix,
    pub factors: Vec<RMatrix>,
    #[serde(rename = "N")]
    pub n: RMatrix,
    /// Empty when verification was skipped.
    pub inv_reports: Vec<InvReport>,
}

impl FactoredRealization {
    /// `M N`.
    pub fn product(&self) -> RMatrix {
        &self.m * &self.n
    }
}

/// `N_i = diag(I_{i-1}, T_i)` where `T_i` has diagonal `t^{k_ii}, ..., t^{k_ir}`
/// and ones on the superdiagonal.
pub fn build_factor(filling: &Filling, i: usize, r: usize) -> RMatrix {
    assert!(1 <= i && i <= r && r <= filling.r(), "factor index {i} outside 1..={r}");
    RMatrix::from_fn(r, |a, b| {
        let (a, b) = (a + 1, b + 1);
        if a < i || b < i {
            if a == b {
                RingElem::one()
            } else {
                RingElem::zero()
            }
        } else if a == b {
            RingElem::t_pow(filling.k(i, a))
        } else if b == a + 1 {
            RingElem::one()
        } else {
            RingElem::zero()
        }
    })
}

/// `ν_i = k_ii + ... + k_ir`, or an error when that is not a partition.
pub fn content_of(filling: &Filling) -> Result<Partition, TableauxError> {
    let r = filling.r();
    let raw: Vec<i64> = (1..=r).map(|i| filling.content_range(i, i, r)).collect();
    if raw.iter().any(|&v| v < 0) {
        return Err(TableauxError::BadShape(format!("negative content {raw:?}")));
    }
    Partition::new(raw.into_iter().map(|v| v as u32).collect())
}

/// Builds and verifies the realization `M = D_μ`, `N = N_1 ⋯ N_r`.
pub fn realize(filling: &Filling, mu: &Partition) -> Result<FactoredRealization, RealizeError> {
    realize_with(filling, mu, true)
}

pub fn realize_with(filling: &Filling, mu: &Partition, verify: bool) -> Result<FactoredRealization, RealizeError> {
    let r = filling.r();
    let seq = sequence_from_filling(filling, mu)?;
    let lambda = seq.last().clone();
    let nu = content_of(filling)?;
    let report = validate_filling(filling, mu, &nu, &lambda)?;
    if !report.is_valid() {
        return Err(RealizeError::InvalidFilling(report));
    }

    let m = RMatrix::diag_from_partition(mu, r)?;
    let factors: Vec<RMatrix> = (1..=r).map(|i| build_factor(filling, i, r)).collect();
    let mut partials = Vec::with_capacity(r);
    let mut acc = RMatrix::identity(r);
    for f in &factors {
        acc = &acc * f;
        partials.push(acc.clone());
    }
    let n = acc;

    let mut inv_reports = Vec::new();
    if verify {
        check("inv(M)", mu, &invariant_partition(&m)?)?;
        for (idx, part) in partials.iter().enumerate() {
            let i = idx + 1;
            let inv_n = invariant_partition(part)?;
            let want_n = Partition::new(nu.parts().iter().take(i).copied().collect())?;
            check(&format!("inv(N_1..N_{i})"), &want_n, &inv_n)?;
            let inv_mn = invariant_partition(&(&m * part))?;
            check(&format!("inv(M N_1..N_{i})"), seq.get(i), &inv_mn)?;
            inv_reports.push(InvReport { i, inv_n, inv_mn });
        }
    }
    Ok(FactoredRealization {
        mu: mu.clone(),
        nu,
        lambda,
        m,
        factors,
        n,
        inv_reports,
    })
}

fn check(what: &str, expected: &Partition, got: &Partition) -> Result<(), RealizeError> {
    if expected == got {
        Ok(())
    } else {
        Err(RealizeError::VerificationFailed {
            what: what.into(),
            expected: expected.clone(),
            got: got.clone(),
        })
    }
}

/// A random filling: `r` in `1..=r_max`, `μ` and `ν` with parts at most
/// `part_max`, then `λ` uniform among the compatible shapes with a nonzero
/// coefficient, then a uniform filling of `λ/μ` with content `ν`.
pub fn random_filling<R: Rng + ?Sized>(
    rng: &mut R,
    r_max: usize,
    part_max: u32,
) -> Result<(Filling, Partition, Partition, Partition), RealizeError> {
    assert!(r_max >= 1 && part_max >= 1, "bounds must be positive");
    const ATTEMPTS: usize = 100;
    for _ in 0..ATTEMPTS {
        let r = rng.gen_range(1..=r_max);
        let mu = random_partition(rng, r, part_max);
        let nu = random_partition(rng, r, part_max);
        let shapes: Vec<(Partition, Vec<Filling>)> = candidate_shapes(&mu, &nu, r)
            .into_iter()
            .map(|l| {
                let fs = enumerate_fillings_in(&mu, &nu, &l, r);
                (l, fs)
            })
            .filter(|(_, fs)| !fs.is_empty())
            .collect();
        let Some((lambda, fillings)) = shapes.choose(rng) else {
            continue;
        };
        let f = fillings.choose(rng).expect("nonempty").clone();
        return Ok((f, mu, nu, lambda.clone()));
    }
    Err(RealizeError::NoTriple(ATTEMPTS))
}

fn random_partition<R: Rng + ?Sized>(rng: &mut R, r: usize, part_max: u32) -> Partition {
    Partition::from_unsorted((0..r).map(|_| rng.gen_range(0..=part_max)).collect())
}

/// Partitions `λ ⊇ μ` of weight `|μ| + |ν|`, at most `r` parts, `λ_1 <= μ_1 + ν_1`.
fn candidate_shapes(mu: &Partition, nu: &Partition, r: usize) -> Vec<Partition> {
    fn go(j: usize, r: usize, left: u32, cap: u32, mu: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if j == r {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("built decreasing"));
            }
            return;
        }
        let lo = mu[j];
        for v in (lo..=cap.min(left)).rev() {
            cur.push(v);
            go(j + 1, r, left - v, v, mu, cur, out);
            cur.pop();
        }
    }
    let total = (mu.weight() + nu.weight()) as u32;
    let mut out = Vec::new();
    go(
        0,
        r,
        total,
        mu.part(1) + nu.part(1),
        &mu.padded(r),
        &mut Vec::new(),
        &mut out,
    );
    out
}
