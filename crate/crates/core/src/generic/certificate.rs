use std::fmt;

use log::{debug, info};
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    column_reduce, diagonalize_first, triangularize_right, ColumnReduction, GenericError, GroupElement, MatrixPair,
};
use crate::dvr::{random_unit, RingElem, Valuation};
use crate::matrix::{invariant_partition, is_mu_admissible, lu_decompose, IndexSet, OrderCache, RMatrix};
use crate::tableaux::Partition;

pub const DEFAULT_MAX_RETRIES: usize = 20;

/// Pairs of size above this are sampled in sampled mode.
const SAMPLED_FULL_UP_TO: usize = 3;
const SAMPLED_EXTRA_PAIRS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Every pair of index sets.
    Full,
    /// All pairs of size at most 3 plus 500 random larger pairs.
    Sampled,
}

impl VerifyMode {
    /// Full up to `r = 5`, sampled above.
    pub fn auto(r: usize) -> Self {
        if r <= 5 {
            VerifyMode::Full
        } else {
            VerifyMode::Sampled
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyMode::Full => "full",
            VerifyMode::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub check: String,
    pub rows: IndexSet,
    pub cols: IndexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub middle: Option<IndexSet>,
    pub detail: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at I = {}, J = {}", self.check, self.rows, self.cols)?;
        if let Some(h) = &self.middle {
            write!(f, ", H = {h}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub checked: usize,
    pub failures: Vec<CheckFailure>,
}

impl VerificationReport {
    fn new(mode: VerifyMode) -> Self {
        VerificationReport {
            mode,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    fn fail(&mut self, check: &str, rows: &IndexSet, cols: &IndexSet, middle: Option<&IndexSet>, detail: String) {
        self.failures.push(CheckFailure {
            check: check.into(),
            rows: rows.clone(),
            cols: cols.clone(),
            middle: middle.cloned(),
            detail,
        });
    }

    fn fail_global(&mut self, check: &str, detail: String) {
        self.fail(check, &IndexSet::empty(), &IndexSet::empty(), None, detail);
    }
}

/// Sampled factors of one attempt. `Q = Q_U Q_L`, `T⁻¹ = T_L T_U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericFactors {
    pub q_l0: RMatrix,
    pub q_l: RMatrix,
    pub q_u: RMatrix,
    pub t_l: RMatrix,
    pub t_l_permutation: RMatrix,
    pub t_l_lower: RMatrix,
    pub t_u: RMatrix,
    pub q: RMatrix,
    pub t_inv: RMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResampleEvent {
    pub attempt: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuGenericCertificate {
    #[serde(rename = "N_star")]
    pub n_star: RMatrix,
    pub mu: Partition,
    /// Column Hermite form of the second matrix once the first is `D_μ`;
    /// every factor below refers to this matrix.
    #[serde(rename = "N_prime")]
    pub n_prime: RMatrix,
    pub column_reduction: ColumnReduction,
    /// Element taking the input pair to `(D_μ, Q N)`, before column reduction.
    #[serde(skip)]
    pub diagonalizer: GroupElement,
    pub factors: GenericFactors,
    pub verification: VerificationReport,
    pub attempts: usize,
    pub resamples: Vec<ResampleEvent>,
}

impl MuGenericCertificate {
    /// The μ-generic pair `(D_μ, N*)`.
    pub fn pair(&self) -> MatrixPair {
        MatrixPair {
            first: RMatrix::diag_from_partition(&self.mu, self.n_star.size()).expect("mu fits"),
            second: self.n_star.clone(),
        }
    }
}

/// [`to_mu_generic_with`] in the default verification mode for the size.
pub fn to_mu_generic<R: Rng + ?Sized>(
    pair: &MatrixPair,
    rng: &mut R,
    max_retries: usize,
) -> Result<MuGenericCertificate, GenericError> {
    to_mu_generic_with(pair, rng, max_retries, VerifyMode::auto(pair.size()))
}

/// Reduces `(M, N)` to `(D_μ, N*)` with `N*` μ-generic, resampling every
/// random factor whenever a check fails.
pub fn to_mu_generic_with<R: Rng + ?Sized>(
    pair: &MatrixPair,
    rng: &mut R,
    max_retries: usize,
    mode: VerifyMode,
) -> Result<MuGenericCertificate, GenericError> {
    let (diag, diagonalizer, mu) = diagonalize_first(pair)?;
    let nu = invariant_partition(&pair.second)?;
    let column_reduction = column_reduce(&diag.second, &nu)?;
    let n_prime = column_reduction.h.clone();
    let mut resamples = Vec::new();
    let attempts = max_retries.max(1);
    for attempt in 1..=attempts {
        let factors = sample_factors(&n_prime, &mu, rng)?;
        let n_star = &(&factors.q * &n_prime) * &factors.t_inv;
        let pairs = index_pairs(n_star.size(), mode, rng);
        let verification = verify_certificate(&n_prime, &n_star, &mu, &factors, &pairs, mode);
        if verification.passed() {
            debug!(
                "mu-generic form found on attempt {attempt} ({} checks)",
                verification.checked
            );
            return Ok(MuGenericCertificate {
                n_star,
                mu,
                n_prime,
                column_reduction,
                diagonalizer,
                factors,
                verification,
                attempts: attempt,
                resamples,
            });
        }
        let reason = verification.failures[0].to_string();
        info!("resampling after attempt {attempt}: {reason}");
        resamples.push(ResampleEvent { attempt, reason });
    }
    Err(GenericError::RetriesExhausted {
        attempts,
        last_failure: resamples.last().map(|e| e.reason.clone()).unwrap_or_default(),
    })
}

fn sample_factors<R: Rng + ?Sized>(
    n_prime: &RMatrix,
    mu: &Partition,
    rng: &mut R,
) -> Result<GenericFactors, GenericError> {
    let r = n_prime.size();
    let q_l0 = RMatrix::from_fn(r, |i, j| if i >= j { random_unit(rng) } else { RingElem::zero() });
    // Q_L = D_μ⁻¹ Q_L⁰ D_μ
    let m = mu.padded(r);
    let q_l = RMatrix::from_fn(r, |i, j| q_l0[(i, j)].mul_t_pow(m[j] as i64 - m[i] as i64));
    let tri = triangularize_right(&(&q_l * n_prime))?;
    let q_u = RMatrix::from_fn(r, |i, j| if i <= j { random_unit(rng) } else { RingElem::zero() });
    let t_u = RMatrix::from_fn(r, |i, j| if i <= j { random_unit(rng) } else { RingElem::zero() });
    let q = &q_u * &q_l;
    let t_inv = &tri.t_l * &t_u;
    Ok(GenericFactors {
        q_l0,
        q_l,
        q_u,
        t_l: tri.t_l,
        t_l_permutation: tri.permutation,
        t_l_lower: tri.lower,
        t_u,
        q,
        t_inv,
    })
}

/// Index-set pairs `(I, J)` with `|I| = |J| >= 1` examined by the checks.
pub fn index_pairs<R: Rng + ?Sized>(r: usize, mode: VerifyMode, rng: &mut R) -> Vec<(IndexSet, IndexSet)> {
    let mut out = Vec::new();
    let full_up_to = match mode {
        VerifyMode::Full => r,
        VerifyMode::Sampled => SAMPLED_FULL_UP_TO.min(r),
    };
    for k in 1..=full_up_to {
        let sets = IndexSet::all(r, k);
        for i in &sets {
            for j in &sets {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    if mode == VerifyMode::Sampled && r > SAMPLED_FULL_UP_TO {
        let random_set = |rng: &mut R, k: usize| {
            let mut v: Vec<usize> = sample(rng, r, k).into_iter().map(|i| i + 1).collect();
            v.sort_unstable();
            IndexSet::new(v, r).expect("sampled indices are valid")
        };
        for _ in 0..SAMPLED_EXTRA_PAIRS {
            let k = rng.gen_range(SAMPLED_FULL_UP_TO + 1..=r);
            let i = random_set(rng, k);
            let j = random_set(rng, k);
            out.push((i, j));
        }
    }
    out
}

/// Checks every certificate invariant on the given index-set pairs: the
/// shapes and admissibility of the factors, the three minimum identities
/// with their Cauchy–Binet expansions, the determinant-gap inequalities
/// and the corner minors.
pub fn verify_certificate(
    n_prime: &RMatrix,
    n_star: &RMatrix,
    mu: &Partition,
    f: &GenericFactors,
    pairs: &[(IndexSet, IndexSet)],
    mode: VerifyMode,
) -> VerificationReport {
    let r = n_star.size();
    let mut rep = VerificationReport::new(mode);

    rep.checked += 1;
    if !is_mu_admissible(&f.q, mu) {
        rep.fail_global("admissible", "Q = Q_U Q_L is not mu-admissible".into());
    }
    rep.checked += 1;
    if !f.t_inv.is_invertible_over_r() {
        rep.fail_global("invertible", "T^-1 = T_L T_U is not invertible over R".into());
    }
    rep.checked += 1;
    let q_l_n_t_l = &(&f.q_l * n_prime) * &f.t_l;
    if !q_l_n_t_l.is_upper_triangular() {
        rep.fail_global("triangular", "Q_L N T_L is not upper triangular".into());
    }
    rep.checked += 1;
    let lu = match lu_decompose(&f.q) {
        Ok(lu) if lu.lower.is_integral() && lu.upper.is_integral() => Some(lu),
        Ok(_) => {
            rep.fail_global("lu", "LU factors of Q are not integral".into());
            None
        }
        Err(e) => {
            rep.fail_global("lu", format!("LU factorization of Q: {e}"));
            None
        }
    };
    if !rep.passed() {
        return rep;
    }
    let lu = lu.expect("checked above");

    let a_first = &q_l_n_t_l * &f.t_u; // Q_L N T⁻¹
    let a_second = &(&lu.upper * n_prime) * &f.t_inv; // Q̂_U N T⁻¹
    let a_third = &(&f.q * n_prime) * &f.t_l; // Q N T_L
    let Some((nu, lambda)) = pair_invariants(n_prime, mu) else {
        rep.fail_global("corner", "invariants of N are undefined".into());
        return rep;
    };
    // every order the checks compare is at most |λ| when they pass
    let cap = lambda.weight() + 1;
    let caches = [n_star, &f.q_u, &a_first, &lu.lower, &a_second, &a_third, &f.t_u].map(|m| OrderCache::capped(m, cap));
    let [mut star, mut q_u, mut first, mut q_hat_l, mut second, mut third, mut t_u] = match caches {
        [Ok(a), Ok(b), Ok(c), Ok(d), Ok(e), Ok(g), Ok(h)] => [a, b, c, d, e, g, h],
        _ => {
            rep.fail_global("integral", "a factor or product is not integral".into());
            return rep;
        }
    };

    // Each expansion sums to N*_IJ by Cauchy–Binet, so the order of a term
    // is the sum of the orders of its two minors and cancellation means the
    // least term order is below ‖N*_IJ‖.
    for (i, j) in pairs {
        let k = i.len();
        let target = star.order(i, j).expect("valid pair");
        if i.precedes(j) && target >= Valuation::Finite(cap as i64) {
            rep.checked += 1;
            rep.fail("bounded", i, j, None, format!("order of N*_IJ exceeds {}", cap - 1));
            continue;
        }
        let sets = IndexSet::all(r, k);

        // (first): expansion over S with I ⊆ S
        let mut terms = Vec::new();
        let mut best = Valuation::Infinite;
        for s in sets.iter().filter(|s| i.precedes(s)) {
            let m = first.order(s, j).expect("valid");
            best = best.min(m);
            terms.push(q_u.order(i, s).expect("valid") + m);
        }
        check_expansion(&mut rep, "first", i, j, target, &terms, best);

        // (third): expansion over H ⊆ J
        let mut terms = Vec::new();
        let mut best = Valuation::Infinite;
        for h in sets.iter().filter(|h| h.precedes(j)) {
            let m = third.order(i, h).expect("valid");
            best = best.min(m);
            terms.push(m + t_u.order(h, j).expect("valid"));
        }
        check_expansion(&mut rep, "third", i, j, target, &terms, best);

        // (second): expansion over H ⊆ I, shifted by |μ_H| - |μ_I|; only
        // meaningful for I ⊆ J, since otherwise N*_IJ vanishes by
        // triangularity while the terms need not
        if !i.precedes(j) {
            continue;
        }
        let mut terms = Vec::new();
        let mut best = Valuation::Infinite;
        for h in sets.iter().filter(|h| h.precedes(i)) {
            let m = second.order(h, j).expect("valid");
            best = best.min(m.offset(h.weight(mu) - i.weight(mu)));
            terms.push(q_hat_l.order(i, h).expect("valid") + m);
        }
        check_expansion(&mut rep, "second", i, j, target, &terms, best);
    }

    rep.absorb(det_gap_on(&mut star, mu, pairs, mode));
    rep.absorb(corner_check_with(&mut star, mu, nu, lambda).into_report(mode));
    rep
}

fn check_expansion(
    rep: &mut VerificationReport,
    name: &str,
    i: &IndexSet,
    j: &IndexSet,
    target: Valuation,
    terms: &[Valuation],
    best: Valuation,
) {
    rep.checked += 1;
    let least = terms.iter().copied().min().unwrap_or(Valuation::Infinite);
    if target != best {
        rep.fail(name, i, j, None, format!("order {target} but minimum {best}"));
    } else if least < target {
        rep.fail(
            &format!("{name}/cancellation"),
            i,
            j,
            None,
            format!("terms of order {least} cancel to order {target}"),
        );
    } else if least > target {
        rep.fail(
            &format!("{name}/cauchy-binet"),
            i,
            j,
            None,
            format!("no term reaches order {target}"),
        );
    }
}

/// The determinant-gap inequalities: for all `I ⊆ H ⊆ J`,
/// `‖N*_IJ‖ <= ‖N*_HJ‖ <= ‖N*_IJ‖ + |μ_I| - |μ_H|` and `‖N*_IH‖ >= ‖N*_IJ‖`.
pub fn verify_mu_generic(n_star: &RMatrix, mu: &Partition, mode: VerifyMode) -> VerificationReport {
    let r = n_star.size();
    let max_k = match mode {
        VerifyMode::Full => r,
        VerifyMode::Sampled => SAMPLED_FULL_UP_TO.min(r),
    };
    let mut pairs = Vec::new();
    for k in 1..=max_k {
        for j in IndexSet::all(r, k) {
            for i in j.predecessors(r) {
                pairs.push((i, j.clone()));
            }
        }
    }
    let mut rep = VerificationReport::new(mode);
    rep.checked += 1;
    if !n_star.is_upper_triangular() {
        rep.fail_global("upper-triangular", "N* is not upper triangular".into());
        return rep;
    }
    // the inequalities bound every compared order by ‖det N*‖ + |μ|
    let det = (0..r).fold(Valuation::ZERO, |a, i| a + n_star[(i, i)].valuation());
    let cache = match det {
        Valuation::Finite(d) => OrderCache::capped(n_star, d as u64 + mu.weight() + 1),
        Valuation::Infinite => OrderCache::new(n_star),
    };
    match cache {
        Ok(mut cache) => rep.absorb(det_gap_on(&mut cache, mu, &pairs, mode)),
        Err(e) => rep.fail_global("integral", format!("N*: {e}")),
    }
    rep
}

fn det_gap_on(
    cache: &mut OrderCache,
    mu: &Partition,
    pairs: &[(IndexSet, IndexSet)],
    mode: VerifyMode,
) -> VerificationReport {
    let r = cache.size();
    let mut rep = VerificationReport::new(mode);
    for (i, j) in pairs.iter().filter(|(i, j)| i.precedes(j)) {
        let ij = cache.order(i, j).expect("valid");
        for h in IndexSet::all(r, i.len())
            .iter()
            .filter(|h| i.precedes(h) && h.precedes(j))
        {
            rep.checked += 1;
            let hj = cache.order(h, j).expect("valid");
            let upper = ij.offset(i.weight(mu) - h.weight(mu));
            if !(ij <= hj && hj <= upper) {
                rep.fail(
                    "det-ineq",
                    i,
                    j,
                    Some(h),
                    format!("‖N*_IJ‖ = {ij}, ‖N*_HJ‖ = {hj}, bound {upper}"),
                );
            }
            let ih = cache.order(i, h).expect("valid");
            if ih < ij {
                rep.fail("col-ineq", i, j, Some(h), format!("‖N*_IH‖ = {ih} < ‖N*_IJ‖ = {ij}"));
            }
        }
    }
    rep
}

/// Corner minors against the invariant partitions, for `s = 1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerReport {
    pub nu: Partition,
    pub lambda: Partition,
    /// `(s, ‖N*_{(1..s),(r-s+1..r)}‖, ν_{r-s+1} + ... + ν_r)`.
    pub top_right: Vec<(usize, Valuation, u64)>,
    /// `(s, ‖(D_μ N*)_{HH}‖, λ_{r-s+1} + ... + λ_r)` with `H` the last `s` indices.
    pub bottom_right: Vec<(usize, Valuation, u64)>,
}

impl CornerReport {
    pub fn passed(&self) -> bool {
        self.top_right
            .iter()
            .chain(&self.bottom_right)
            .all(|(_, got, want)| *got == Valuation::Finite(*want as i64))
    }

    fn into_report(self, mode: VerifyMode) -> VerificationReport {
        let mut rep = VerificationReport::new(mode);
        for (name, rows) in [("corner-nu", &self.top_right), ("corner-lambda", &self.bottom_right)] {
            for &(s, got, want) in rows {
                rep.checked += 1;
                if got != Valuation::Finite(want as i64) {
                    rep.fail_global(name, format!("s = {s}: order {got}, tail sum {want}"));
                }
            }
        }
        rep
    }
}

pub fn corner_invariant_check(n_star: &RMatrix, mu: &Partition) -> CornerReport {
    let invariants = pair_invariants(n_star, mu);
    let cache = invariants
        .as_ref()
        .map(|(_, lambda)| OrderCache::capped(n_star, lambda.weight() + 1));
    match (invariants, cache) {
        (Some((nu, lambda)), Some(Ok(mut cache))) => corner_check_with(&mut cache, mu, nu, lambda),
        _ => CornerReport {
            nu: Partition::empty(),
            lambda: Partition::empty(),
            top_right: vec![(n_star.size(), Valuation::Infinite, 0)],
            bottom_right: Vec::new(),
        },
    }
}

/// `inv(N)` and `inv(D_μ N)`.
fn pair_invariants(n: &RMatrix, mu: &Partition) -> Option<(Partition, Partition)> {
    let nu = invariant_partition(n).ok()?;
    let lambda = invariant_partition(&scale_rows_by_mu(mu, n)).ok()?;
    Some((nu, lambda))
}

/// Uses `‖(D_μ N)_HH‖ = ‖N_HH‖ + |μ_H|`.
fn corner_check_with(cache: &mut OrderCache, mu: &Partition, nu: Partition, lambda: Partition) -> CornerReport {
    let r = cache.size();
    let mut top_right = Vec::new();
    let mut bottom_right = Vec::new();
    for s in 1..=r {
        let tail = IndexSet::right_most(r, s);
        let got = cache.order(&IndexSet::range(1, s), &tail).expect("valid");
        top_right.push((s, got, nu.tail_sum(r, s)));
        let got = cache.order(&tail, &tail).expect("valid").offset(tail.weight(mu));
        bottom_right.push((s, got, lambda.tail_sum(r, s)));
    }
    CornerReport {
        nu,
        lambda,
        top_right,
        bottom_right,
    }
}

/// `D_μ N` without a dense multiplication.
fn scale_rows_by_mu(mu: &Partition, n: &RMatrix) -> RMatrix {
    let m = mu.padded(n.size());
    RMatrix::from_fn(n.size(), |i, j| n[(i, j)].mul_t_pow(m[i] as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::random_gl;
    use crate::partition;
    use crate::realize::{random_filling, realize};
    use crate::tableaux::Filling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn golden_filling() -> Filling {
        Filling::new(vec![vec![4], vec![2, 4], vec![1, 1, 3], vec![1, 0, 1, 2]]).unwrap()
    }

    #[test]
    fn index_pair_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // sum over k of C(4,k)^2 = 16 + 36 + 16 + 1
        assert_eq!(index_pairs(4, VerifyMode::Full, &mut rng).len(), 69);
        let sampled = index_pairs(6, VerifyMode::Sampled, &mut rng);
        assert_eq!(sampled.len(), 36 + 225 + 400 + SAMPLED_EXTRA_PAIRS);
        assert!(sampled.iter().all(|(i, j)| i.len() == j.len() && !i.is_empty()));
        assert_eq!(VerifyMode::auto(5), VerifyMode::Full);
        assert_eq!(VerifyMode::auto(6), VerifyMode::Sampled);
    }

    #[test]
    fn realized_pair_becomes_generic() {
        let mu = partition![7, 4, 2, 1];
        let real = realize(&golden_filling(), &mu).unwrap();
        let pair = MatrixPair::new(real.m.clone(), real.n.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cert = to_mu_generic(&pair, &mut rng, DEFAULT_MAX_RETRIES).unwrap();
        assert!(cert.verification.passed());
        assert_eq!(cert.verification.mode, VerifyMode::Full);
        assert!(cert.n_star.is_upper_triangular());
        assert!(verify_mu_generic(&cert.n_star, &mu, VerifyMode::Full).passed());
        let corner = corner_invariant_check(&cert.n_star, &mu);
        assert!(corner.passed());
        assert_eq!(corner.nu, partition![8, 5, 4, 2]);
        assert_eq!(corner.lambda, partition![11, 10, 7, 5]);
        assert_eq!(cert.pair().invariants().unwrap().lambda, partition![11, 10, 7, 5]);
    }

    #[test]
    fn golden_matrix_genericity() {
        let mu = partition![7, 4, 2, 1];
        let real = realize(&golden_filling(), &mu).unwrap();
        let rep = verify_mu_generic(&real.n, &mu, VerifyMode::Full);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.checked > 0);
    }

    #[test]
    fn random_pairs_reduce() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut resamples = 0;
        for _ in 0..10 {
            let (f, mu, _, lambda) = random_filling(&mut rng, 4, 4).unwrap();
            let real = realize(&f, &mu).unwrap();
            let g = GroupElement::random(&mut rng, real.n.size(), 2);
            let pair = crate::generic::act(&g, &MatrixPair::new(real.m, real.n).unwrap()).unwrap();
            let cert = to_mu_generic(&pair, &mut rng, DEFAULT_MAX_RETRIES).unwrap();
            resamples += cert.resamples.len();
            assert_eq!(cert.mu, mu);
            assert_eq!(corner_invariant_check(&cert.n_star, &mu).lambda, lambda);
        }
        assert_eq!(resamples, 0);
    }

    #[test]
    fn diagonal_second_matrix_is_not_generic() {
        let mu = partition![3, 1];
        let d = RMatrix::diag_from_partition(&partition![2, 1], 2).unwrap();
        assert!(!verify_mu_generic(&d, &mu, VerifyMode::Full).passed());
        let _ = random_gl(&mut ChaCha8Rng::seed_from_u64(0), 2, 1);
    }
}
