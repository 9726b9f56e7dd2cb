//! Two pairs with the same filling in different orbits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{extract, ExtractError};
use crate::dvr::{Rational, RingElem, Valuation};
use crate::generic::{verify_mu_generic, MatrixPair, VerificationReport, VerifyMode};
use crate::matrix::{invariant_partition, RMatrix};
use crate::partition;
use crate::tableaux::{Filling, Partition};

/// `μ = (6,3,1)` with `(D_μ, N)` and `(D_μ, N')`.
pub fn counterexample_pairs() -> (Partition, MatrixPair, MatrixPair) {
    let mu = partition![6, 3, 1];
    let d = RMatrix::diag_from_partition(&mu, 3).expect("three parts");
    let m = |c: i64, k: i64| RingElem::from_int(c).mul_t_pow(k);
    let z = RingElem::zero;
    let n = RMatrix::from_rows(vec![
        vec![m(1, 8), m(1, 7), m(1, 4)],
        vec![z(), m(1, 9), m(2, 6)],
        vec![z(), z(), m(1, 7)],
    ])
    .expect("square");
    let n_prime = RMatrix::from_rows(vec![
        vec![m(1, 8), m(1, 7), m(1, 4)],
        vec![z(), m(1, 9), m(4, 6)],
        vec![z(), z(), m(3, 7)],
    ])
    .expect("square");
    (
        mu,
        MatrixPair::new(d.clone(), n).expect("full rank"),
        MatrixPair::new(d, n_prime).expect("full rank"),
    )
}

/// A necessary condition for `(N')⁻¹ Q N` to lie over `R`: the coefficient of
/// `t^order` (the most negative order present) in one entry, written as a
/// linear form in the residues `c(q_cd)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueRelation {
    /// 1-based entry of `T = (N')⁻¹ Q N`.
    pub entry: (usize, usize),
    pub order: i64,
    /// Coefficient of `c(q_cd)` at index `(c-1) r + (d-1)`, scaled to
    /// coprime integers with the first nonzero one positive.
    #[serde(serialize_with = "rationals")]
    pub coefficients: Vec<Rational>,
}

/// Relations on the residues of a μ-admissible `Q` (entries
/// `t^{μ_d - μ_c} q_cd` below the diagonal) forced by `Q N = N' T`.
///
/// `T` is linear in the `q_cd`; at the lowest order of a pole only the
/// residues of the `q_cd` contribute, so each such coefficient must vanish.
pub fn residue_relations(mu: &Partition, n: &RMatrix, n_prime: &RMatrix) -> Result<Vec<ResidueRelation>, ExtractError> {
    let r = n.size();
    let m = mu.padded(r);
    let n_prime_inv = n_prime.inverse()?;
    let mut parts = Vec::with_capacity(r * r);
    for c in 0..r {
        for d in 0..r {
            let shift = if c > d { m[d] as i64 - m[c] as i64 } else { 0 };
            let e = RMatrix::from_fn(r, |i, j| {
                if (i, j) == (c, d) {
                    RingElem::t_pow(shift)
                } else {
                    RingElem::zero()
                }
            });
            parts.push(&(&n_prime_inv * &e) * n);
        }
    }
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let order = parts
                .iter()
                .map(|p| p[(a, b)].valuation())
                .min()
                .unwrap_or(Valuation::Infinite);
            let Valuation::Finite(order) = order else { continue };
            if order >= 0 {
                continue;
            }
            let coefficients = primitive(parts.iter().map(|p| p[(a, b)].residue_shift(order)).collect());
            out.push(ResidueRelation {
                entry: (a + 1, b + 1),
                order,
                coefficients,
            });
        }
    }
    Ok(out)
}

fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

fn rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

fn rational_rows<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn det3(m: &[Vec<Rational>]) -> Rational {
    let p = |i: usize, j: usize| &m[i][j];
    p(0, 0) * (p(1, 1) * p(2, 2) - p(1, 2) * p(2, 1)) - p(0, 1) * (p(1, 0) * p(2, 2) - p(1, 2) * p(2, 0))
        + p(0, 2) * (p(1, 0) * p(2, 1) - p(1, 1) * p(2, 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub mu: Partition,
    pub n: RMatrix,
    pub n_prime: RMatrix,
    pub generic: VerificationReport,
    pub generic_prime: VerificationReport,
    pub nu: Partition,
    pub nu_prime: Partition,
    pub lambda: Partition,
    pub filling: Filling,
    pub filling_prime: Filling,
    pub same_filling: bool,
    pub relations: Vec<ResidueRelation>,
    /// The relations restricted to `c(q_11), c(q_22), c(q_33)`, one row per
    /// relation.
    #[serde(serialize_with = "rational_rows")]
    pub diagonal_system: Vec<Vec<Rational>>,
    /// Whether the relations involve any residue off the diagonal.
    pub off_diagonal_terms: bool,
    #[serde(serialize_with = "rational")]
    pub determinant: Rational,
    /// No nonzero diagonal residues satisfy the relations, so no
    /// μ-admissible `Q` (with unit diagonal) exists.
    pub not_equivalent: bool,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.generic.passed()
            && self.generic_prime.passed()
            && self.same_filling
            && self.nu == self.nu_prime
            && self.not_equivalent
    }
}

pub fn counterexample_demo() -> Result<CounterexampleReport, ExtractError> {
    let (mu, p, p_prime) = counterexample_pairs();
    let (n, n_prime) = (p.second, p_prime.second);
    let r = n.size();
    let generic = verify_mu_generic(&n, &mu, VerifyMode::Full);
    let generic_prime = verify_mu_generic(&n_prime, &mu, VerifyMode::Full);
    let ex = extract(&n, &mu)?;
    let (filling, lambda) = (ex.filling, ex.lambda);
    let filling_prime = extract(&n_prime, &mu)?.filling;
    let relations = residue_relations(&mu, &n, &n_prime)?;
    let diagonal: Vec<usize> = (0..r).map(|i| i * r + i).collect();
    let diagonal_system: Vec<Vec<Rational>> = relations
        .iter()
        .map(|rel| diagonal.iter().map(|&v| rel.coefficients[v].clone()).collect())
        .collect();
    let off_diagonal_terms = relations.iter().any(|rel| {
        rel.coefficients
            .iter()
            .enumerate()
            .any(|(v, c)| !diagonal.contains(&v) && !c.is_zero())
    });
    let determinant = if diagonal_system.len() == 3 {
        det3(&diagonal_system)
    } else {
        Rational::zero()
    };
    Ok(CounterexampleReport {
        nu: invariant_partition(&n)?,
        nu_prime: invariant_partition(&n_prime)?,
        same_filling: filling == filling_prime,
        not_equivalent: !off_diagonal_terms && !determinant.is_zero(),
        mu,
        n,
        n_prime,
        generic,
        generic_prime,
        lambda,
        filling,
        filling_prime,
        relations,
        diagonal_system,
        off_diagonal_terms,
        determinant,
    })
}
