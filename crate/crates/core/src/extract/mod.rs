//! LR fillings read off the minor orders of a μ-generic matrix.
//!
//! All minors use the right-most columns. `O(p, q)` is the order of the
//! minor of `N*` with the consecutive rows `p..=q` omitted (the full
//! determinant when `p > q`), and
//! `k_1j + ... + k_ij = O(j-i, j-1) - O(j-i+1, j)`.

mod counterexample;

use log::info;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dvr::Valuation;
use crate::generic::{to_mu_generic_with, GenericError, MatrixPair, MuGenericCertificate, VerifyMode};
use crate::matrix::{invariant_partition, IndexSet, MatrixError, OrderCache, RMatrix};
use crate::tableaux::{validate_filling, Filling, Partition, TableauxError, ValidityReport};

pub use counterexample::{counterexample_demo, counterexample_pairs, residue_relations, CounterexampleReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Generic(#[from] GenericError),
    #[error(transparent)]
    Tableaux(#[from] TableauxError),
    #[error("the minor with rows {from}..{to} omitted has order {order}, outside 0..={bound}; not mu-generic")]
    OrderOutOfRange {
        from: usize,
        to: usize,
        order: Valuation,
        bound: i64,
    },
    #[error("extracted array is not an LR filling, so the matrix is not mu-generic:\n{report}")]
    GenericityViolation {
        filling: Filling,
        report: Box<ValidityReport>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryMode {
    KeptRows,
    OmittedRows,
}

/// A minor of `N*` named by its rows, kept or omitted; the columns are the
/// right-most ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorQuery {
    pub mode: QueryMode,
    pub rows: IndexSet,
}

impl MinorQuery {
    pub fn kept(rows: IndexSet) -> Self {
        MinorQuery {
            mode: QueryMode::KeptRows,
            rows,
        }
    }

    pub fn omitted(rows: IndexSet) -> Self {
        MinorQuery {
            mode: QueryMode::OmittedRows,
            rows,
        }
    }

    pub fn kept_rows(&self, r: usize) -> IndexSet {
        match self.mode {
            QueryMode::KeptRows => self.rows.clone(),
            QueryMode::OmittedRows => self.rows.complement(r),
        }
    }

    pub fn columns(&self, r: usize) -> IndexSet {
        IndexSet::right_most(r, self.kept_rows(r).len())
    }

    pub fn order(&self, n_star: &RMatrix) -> Result<Valuation, MatrixError> {
        let r = n_star.size();
        let rows = self.kept_rows(r);
        if rows.iter().any(|i| i > r) || self.rows.iter().any(|i| i > r) {
            return Err(MatrixError::BadIndexSet(format!("{} exceeds size {r}", self.rows)));
        }
        n_star.minor_order(&rows, &self.columns(r))
    }
}

/// `‖(i_1, ..., i_s)‖`; the empty minor has order 0.
pub fn kept_rows_order(n_star: &RMatrix, rows: &IndexSet) -> Result<Valuation, MatrixError> {
    MinorQuery::kept(rows.clone()).order(n_star)
}

/// `‖(i_1^, ..., i_k^)‖`.
pub fn omitted_rows_order(n_star: &RMatrix, omitted: &IndexSet) -> Result<Valuation, MatrixError> {
    MinorQuery::omitted(omitted.clone()).order(n_star)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmittedBlock {
    pub from: usize,
    pub to: usize,
    pub order: i64,
}

/// `O(p, q)` for every consecutive block `1 <= p <= q <= r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorOrderTable {
    pub r: usize,
    /// Order of the full determinant.
    pub full: i64,
    /// Blocks in order `(1,1), (1,2), ..., (1,r), (2,2), ...`.
    pub omitted: Vec<OmittedBlock>,
}

impl MinorOrderTable {
    /// Fails when some order is infinite or exceeds `‖det N*‖`, which a
    /// μ-generic matrix never does.
    pub fn compute(n_star: &RMatrix) -> Result<Self, ExtractError> {
        let r = n_star.size();
        let full = n_star.det().valuation();
        let Valuation::Finite(full) = full else {
            return Err(ExtractError::OrderOutOfRange {
                from: 1,
                to: 0,
                order: full,
                bound: 0,
            });
        };
        let mut cache = OrderCache::capped(n_star, full as u64 + 1)?;
        let mut omitted = Vec::new();
        for from in 1..=r {
            for to in from..=r {
                let kept = IndexSet::range(from, to).complement(r);
                let cols = IndexSet::right_most(r, kept.len());
                let order = cache.order(&kept, &cols)?;
                match order {
                    Valuation::Finite(v) if v <= full => omitted.push(OmittedBlock { from, to, order: v }),
                    _ => {
                        return Err(ExtractError::OrderOutOfRange {
                            from,
                            to,
                            order,
                            bound: full,
                        })
                    }
                }
            }
        }
        Ok(MinorOrderTable { r, full, omitted })
    }

    /// `O(p, q)`, with `p` clamped to 1 and the full determinant for `p > q`.
    pub fn get(&self, p: usize, q: usize) -> i64 {
        let p = p.max(1);
        if p > q {
            return self.full;
        }
        assert!(q <= self.r, "block {p}..{q} exceeds size {}", self.r);
        // the r - a + 1 blocks starting at each a < p come first
        let before: usize = (1..p).map(|a| self.r - a + 1).sum();
        self.omitted[before + (q - p)].order
    }

    /// `k_1j + ... + k_ij`.
    pub fn column_prefix(&self, i: usize, j: usize) -> i64 {
        if i == 0 {
            return 0;
        }
        self.get(j - i, j - 1) - self.get(j - i + 1, j)
    }

    pub fn filling(&self) -> Filling {
        Filling::from_fn(self.r, |i, j| self.column_prefix(i, j) - self.column_prefix(i - 1, j))
    }
}

/// Everything read off one μ-generic matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub filling: Filling,
    pub mu: Partition,
    pub nu: Partition,
    pub lambda: Partition,
    pub minor_orders: MinorOrderTable,
}

/// Extracts and validates the filling of `λ/μ` with content `ν`, where
/// `ν = inv(N*)` and `λ = inv(D_μ N*)`.
pub fn extract(n_star: &RMatrix, mu: &Partition) -> Result<Extraction, ExtractError> {
    let table = MinorOrderTable::compute(n_star)?;
    let filling = table.filling();
    let r = n_star.size();
    let nu = invariant_partition(n_star)?;
    let d_mu = RMatrix::diag_from_partition(mu, r)?;
    let lambda = invariant_partition(&(&d_mu * n_star))?;
    let report = validate_filling(&filling, mu, &nu, &lambda)?;
    if !report.is_valid() {
        return Err(ExtractError::GenericityViolation {
            filling,
            report: Box::new(report),
        });
    }
    Ok(Extraction {
        filling,
        mu: mu.clone(),
        nu,
        lambda,
        minor_orders: table,
    })
}

pub fn extract_filling(n_star: &RMatrix, mu: &Partition) -> Result<Filling, ExtractError> {
    extract(n_star, mu).map(|e| e.filling)
}

/// One failed instance of a telescoping identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSumFailure {
    /// 1 for the block sums, 2 for the row sums.
    pub identity: u8,
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSumReport {
    pub checked: usize,
    pub failures: Vec<RowSumFailure>,
}

impl RowSumReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The telescoping identities, for `1 <= i <= j <= l <= r`:
///
/// 1. `Σ_{β=j..l} (k_1β + ... + k_iβ) = O(j-i, j-1) - O(l-i+1, l)`;
/// 2. `k_ii + ... + k_ij = O(j-i+2, j) - O(j-i+1, j)`.
pub fn row_sum_check(filling: &Filling, n_star: &RMatrix) -> Result<RowSumReport, ExtractError> {
    let table = MinorOrderTable::compute(n_star)?;
    Ok(row_sum_check_with(filling, &table))
}

pub fn row_sum_check_with(filling: &Filling, table: &MinorOrderTable) -> RowSumReport {
    let r = filling.r();
    let mut rep = RowSumReport::default();
    for j in 1..=r {
        for i in 1..=j {
            for l in j..=r {
                rep.checked += 1;
                let lhs: i64 = (j..=l).map(|b| filling.column_prefix(i, b)).sum();
                let rhs = table.get(j - i, j - 1) - table.get(l - i + 1, l);
                if lhs != rhs {
                    rep.failures.push(RowSumFailure {
                        identity: 1,
                        i,
                        j,
                        l,
                        lhs,
                        rhs,
                    });
                }
            }
            rep.checked += 1;
            let lhs: i64 = (i..=j).map(|s| filling.k(i, s)).sum();
            let rhs = table.get(j - i + 2, j) - table.get(j - i + 1, j);
            if lhs != rhs {
                rep.failures.push(RowSumFailure {
                    identity: 2,
                    i,
                    j,
                    l: j,
                    lhs,
                    rhs,
                });
            }
        }
    }
    rep
}

/// A pair's filling together with the certificate it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairExtraction {
    pub extraction: Extraction,
    pub certificate: MuGenericCertificate,
}

/// [`extract_from_pair_with`] with the default retries and verification mode.
pub fn extract_from_pair<R: Rng + ?Sized>(pair: &MatrixPair, rng: &mut R) -> Result<PairExtraction, ExtractError> {
    extract_from_pair_with(
        pair,
        rng,
        crate::generic::DEFAULT_MAX_RETRIES,
        VerifyMode::auto(pair.size()),
    )
}

/// Reduces to a μ-generic pair and extracts; an extraction that fails
/// validation triggers a fresh certificate, within the same retry budget.
pub fn extract_from_pair_with<R: Rng + ?Sized>(
    pair: &MatrixPair,
    rng: &mut R,
    max_retries: usize,
    mode: VerifyMode,
) -> Result<PairExtraction, ExtractError> {
    let attempts = max_retries.max(1);
    let mut last = None;
    for attempt in 1..=attempts {
        let certificate = to_mu_generic_with(pair, rng, max_retries, mode)?;
        match extract(&certificate.n_star, &certificate.mu) {
            Ok(extraction) => {
                return Ok(PairExtraction {
                    extraction,
                    certificate,
                })
            }
            Err(e @ (ExtractError::GenericityViolation { .. } | ExtractError::OrderOutOfRange { .. })) => {
                info!("extraction attempt {attempt} rejected: {e}");
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
