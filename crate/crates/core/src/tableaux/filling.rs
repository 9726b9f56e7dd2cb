use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Partition, TableauxError};

/// A triangular array `{k_ij : 1 <= i <= j <= r}`.
///
/// `k_ij` counts the entries equal to `i` in row `j` of the skew diagram.
/// Row `j` of the storage holds `k_1j, ..., k_jj`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    r: usize,
    rows: Vec<Vec<i64>>,
}

impl Filling {
    /// From rows `[k_1j, ..., k_jj]` for `j = 1..=r`.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, TableauxError> {
        if let Some(j) = rows.iter().enumerate().position(|(j, row)| row.len() != j + 1) {
            return Err(TableauxError::BadShape(format!(
                "row {} has {} entries, expected {}",
                j + 1,
                rows[j].len(),
                j + 1
            )));
        }
        Ok(Filling { r: rows.len(), rows })
    }

    pub fn zero(r: usize) -> Self {
        Filling::from_fn(r, |_, _| 0)
    }

    /// Builds from a closure over 1-based `(i, j)` with `i <= j`.
    pub fn from_fn(r: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let rows = (1..=r).map(|j| (1..=j).map(|i| f(i, j)).collect()).collect();
        Filling { r, rows }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `k_ij`, 1-based, `i <= j`.
    pub fn k(&self, i: usize, j: usize) -> i64 {
        assert!(1 <= i && i <= j && j <= self.r, "k({i},{j}) outside the triangle");
        self.rows[j - 1][i - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(1 <= i && i <= j && j <= self.r, "k({i},{j}) outside the triangle");
        self.rows[j - 1][i - 1] = v;
    }

    /// `k_1j + ... + k_ij` (`i` is clamped to `j`).
    pub fn column_prefix(&self, i: usize, j: usize) -> i64 {
        self.rows[j - 1][..i.min(j)].iter().sum()
    }

    /// Number of `i`s in rows `a..=b`: `k_ia + ... + k_ib`, skipping `a < i`.
    pub fn content_range(&self, i: usize, a: usize, b: usize) -> i64 {
        (a.max(i)..=b.min(self.r)).map(|s| self.k(i, s)).sum()
    }

    /// Entries in `(i, j)` order: `k_11, k_12, ..., k_1r, k_22, ...`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (1..=self.r).flat_map(move |i| (i..=self.r).map(move |j| (i, j, self.k(i, j))))
    }

    /// Pads to a larger `r` with zeros.
    pub fn extended(&self, r: usize) -> Filling {
        assert!(r >= self.r);
        Filling::from_fn(r, |i, j| if j <= self.r { self.k(i, j) } else { 0 })
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.rows.iter().enumerate() {
            if j > 0 {
                write!(f, " / ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Filling[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FillingRepr {
    r: usize,
    rows: Vec<Vec<i64>>,
}

impl Serialize for Filling {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FillingRepr {
            r: self.r,
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Filling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = FillingRepr::deserialize(d)?;
        if repr.rows.len() != repr.r {
            return Err(serde::de::Error::custom(format!(
                "declared r = {} but {} rows given",
                repr.r,
                repr.rows.len()
            )));
        }
        Filling::new(repr.rows).map_err(serde::de::Error::custom)
    }
}

/// The first failure of one LR condition, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `μ_j + k_1j + ... + k_jj ≠ λ_j`.
    RowSum {
        j: usize,
    },
    /// `k_ii + ... + k_ir ≠ ν_i`.
    ContentSum {
        i: usize,
    },
    Negative {
        i: usize,
        j: usize,
    },
    /// `λ^{(i)}_j > λ^{(i-1)}_{j-1}`.
    ColumnStrict {
        i: usize,
        j: usize,
    },
    /// More `(i+1)`s in rows `i+1..=j+1` than `i`s in rows `i..=j`.
    Word {
        i: usize,
        j: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub lr1: Option<Violation>,
    pub lr2: Option<Violation>,
    pub lr3: Option<Violation>,
    pub lr4: Option<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn violations(&self) -> impl Iterator<Item = Violation> + '_ {
        [self.lr1, self.lr2, self.lr3, self.lr4].into_iter().flatten()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in [
            ("LR1", self.lr1),
            ("LR2", self.lr2),
            ("LR3", self.lr3),
            ("LR4", self.lr4),
        ] {
            match v {
                None => writeln!(f, "{name}: ok")?,
                Some(v) => writeln!(f, "{name}: fails at {v:?}")?,
            }
        }
        Ok(())
    }
}

/// Checks (LR1) through (LR4), reporting the first violation of each.
pub fn validate_filling(
    filling: &Filling,
    mu: &Partition,
    nu: &Partition,
    lambda: &Partition,
) -> Result<ValidityReport, TableauxError> {
    let r = filling.r();
    if mu.length() > lambda.length() || nu.length() > lambda.length() || lambda.length() > r {
        return Err(TableauxError::DimensionMismatch(format!(
            "need length(mu), length(nu) <= length(lambda) <= r, got mu = {mu}, nu = {nu}, lambda = {lambda}, r = {r}"
        )));
    }
    let m = |j: usize| mu.part(j) as i64;
    let k = |i: usize, j: usize| filling.k(i, j);
    let lr1 = (1..=r)
        .find(|&j| m(j) + filling.column_prefix(j, j) != lambda.part(j) as i64)
        .map(|j| Violation::RowSum { j })
        .or_else(|| {
            (1..=r)
                .find(|&i| filling.content_range(i, i, r) != nu.part(i) as i64)
                .map(|i| Violation::ContentSum { i })
        });

    let lr2 = filling
        .iter()
        .find(|&(_, _, v)| v < 0)
        .map(|(i, j, _)| Violation::Negative { i, j });

    let lr3 = (2..=r)
        .flat_map(|j| (1..=j).map(move |i| (i, j)))
        .find(|&(i, j)| m(j) + filling.column_prefix(i, j) > m(j - 1) + filling.column_prefix(i - 1, j - 1))
        .map(|(i, j)| Violation::ColumnStrict { i, j });

    let lr4 = (1..r)
        .flat_map(|i| (i..r).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let next: i64 = (i + 1..=j + 1).map(|s| k(i + 1, s)).sum();
            let this: i64 = (i..=j).map(|s| k(i, s)).sum();
            next > this
        })
        .map(|(i, j)| Violation::Word { i, j });

    Ok(ValidityReport { lr1, lr2, lr3, lr4 })
}

/// `λ^{(0)} = μ, ..., λ^{(r)}` with `λ^{(i)}_j = μ_j + k_1j + ... + k_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LRSequence(pub Vec<Partition>);

impl LRSequence {
    pub fn get(&self, i: usize) -> &Partition {
        &self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &Partition {
        self.0.last().expect("sequence holds lambda^(0)")
    }
}

pub fn sequence_from_filling(filling: &Filling, mu: &Partition) -> Result<LRSequence, TableauxError> {
    let r = filling.r();
    if mu.length() > r {
        return Err(TableauxError::DimensionMismatch(format!(
            "mu = {mu} is longer than r = {r}"
        )));
    }
    let mut seq = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let raw: Vec<i64> = (1..=r)
            .map(|j| mu.part(j) as i64 + if i == 0 { 0 } else { filling.column_prefix(i, j) })
            .collect();
        if let Some(j) = raw.iter().position(|&v| v < 0) {
            return Err(TableauxError::InvalidSequence { i, j: j + 1 });
        }
        let parts: Vec<u32> = raw.iter().map(|&v| v as u32).collect();
        let p = Partition::new(parts).map_err(|e| match e {
            TableauxError::NotAPartition { at, .. } => TableauxError::InvalidSequence { i, j: at + 1 },
            other => other,
        })?;
        seq.push(p);
    }
    Ok(LRSequence(seq))
}

/// Text diagram of the skew shape: `[ ]` for boxes of `μ`, `[i]` for the
/// `k_ij` entries equal to `i` in row `j`.
pub fn render_skew(filling: &Filling, mu: &Partition, lambda: &Partition) -> String {
    let rows = lambda.length().min(filling.r());
    let width = (1..=rows.max(1)).map(|i| i.to_string().len()).max().unwrap_or(1);
    let blank = format!("[{}]", " ".repeat(width));
    let mut out = String::new();
    for j in 1..=rows {
        for _ in 0..mu.part(j) {
            out.push_str(&blank);
        }
        for i in 1..=j {
            for _ in 0..filling.k(i, j).max(0) {
                out.push_str(&format!("[{i:>width$}]"));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    pub(crate) fn golden_filling() -> Filling {
        Filling::new(vec![vec![4], vec![2, 4], vec![1, 1, 3], vec![1, 0, 1, 2]]).unwrap()
    }

    fn golden_triple() -> (Partition, Partition, Partition) {
        (partition![7, 4, 2, 1], partition![8, 5, 4, 2], partition![11, 10, 7, 5])
    }

    #[test]
    fn golden_filling_is_valid() {
        let (mu, nu, lambda) = golden_triple();
        let rep = validate_filling(&golden_filling(), &mu, &nu, &lambda).unwrap();
        assert!(rep.is_valid(), "{rep}");
    }

    #[test]
    fn zero_filling_of_trivial_skew_shape() {
        let mu = partition![3, 1];
        let rep = validate_filling(&Filling::zero(2), &mu, &partition![], &mu).unwrap();
        assert!(rep.is_valid());
    }

    #[test]
    fn perturbation_breaks_content_sum() {
        let (mu, nu, lambda) = golden_triple();
        let mut f = golden_filling();
        f.set(2, 4, 1);
        let rep = validate_filling(&f, &mu, &nu, &lambda).unwrap();
        assert!(matches!(rep.lr1, Some(Violation::RowSum { j: 4 })));
        f.set(2, 4, 0);
        f.set(1, 1, 5);
        f.set(1, 2, 1);
        let rep = validate_filling(&f, &mu, &nu, &lambda).unwrap();
        assert_eq!(rep.lr1, Some(Violation::RowSum { j: 1 }));
    }

    #[test]
    fn lr3_and_lr4_failures() {
        // a 2 placed directly under a 1 in a row of length 1: not column strict
        let f = Filling::new(vec![vec![1], vec![1, 0]]).unwrap();
        let rep = validate_filling(&f, &partition![], &partition![2], &partition![1, 1]).unwrap();
        assert_eq!(rep.lr3, Some(Violation::ColumnStrict { i: 1, j: 2 }));
        // reading word 2 before 1
        let f = Filling::new(vec![vec![0], vec![0, 1]]).unwrap();
        let rep = validate_filling(&f, &partition![1, 0], &partition![1], &partition![1, 1]).unwrap();
        assert!(rep.lr1.is_some());
        assert_eq!(rep.lr4, Some(Violation::Word { i: 1, j: 1 }));
        let neg = Filling::new(vec![vec![-1]]).unwrap();
        let rep = validate_filling(&neg, &partition![2], &partition![], &partition![1]).unwrap();
        assert_eq!(rep.lr2, Some(Violation::Negative { i: 1, j: 1 }));
    }

    #[test]
    fn dimension_errors() {
        let f = Filling::zero(1);
        assert!(validate_filling(&f, &partition![1, 1], &partition![], &partition![1, 1]).is_err());
        assert!(Filling::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn sequence_of_golden_filling() {
        let seq = sequence_from_filling(&golden_filling(), &partition![7, 4, 2, 1]).unwrap();
        assert_eq!(seq.len(), 5);
        assert_eq!(seq.get(0), &partition![7, 4, 2, 1]);
        assert_eq!(seq.get(1), &partition![11, 6, 3, 2]);
        assert_eq!(seq.last(), &partition![11, 10, 7, 5]);
        let zero = sequence_from_filling(&Filling::zero(3), &partition![2, 2]).unwrap();
        assert!(zero.0.iter().all(|p| p == &partition![2, 2]));
        let bad = Filling::new(vec![vec![0], vec![3, 0]]).unwrap();
        assert_eq!(
            sequence_from_filling(&bad, &partition![1]),
            Err(TableauxError::InvalidSequence { i: 1, j: 2 })
        );
    }

    #[test]
    fn render_golden_diagram() {
        let s = render_skew(&golden_filling(), &partition![7, 4, 2, 1], &partition![11, 10, 7, 5]);
        let rows: Vec<String> = s
            .lines()
            .map(|l| {
                l.replace("[ ]", "")
                    .replace(['[', ']'], " ")
                    .split_whitespace()
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        assert_eq!(rows, ["1 1 1 1", "1 1 2 2 2 2", "1 2 3 3 3", "1 3 4 4"]);
        assert_eq!(s.lines().next().unwrap().matches("[ ]").count(), 7);
        assert_eq!(render_skew(&Filling::zero(1), &partition![], &partition![]), "");
        let one = render_skew(&Filling::new(vec![vec![1]]).unwrap(), &partition![], &partition![1]);
        assert_eq!(one, "[1]\n");
    }

    #[test]
    fn json_layout() {
        let f = golden_filling();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"r":4,"rows":[[4],[2,4],[1,1,3],[1,0,1,2]]}"#);
        assert_eq!(serde_json::from_str::<Filling>(&s).unwrap(), f);
        assert!(serde_json::from_str::<Filling>(r#"{"r":2,"rows":[[1]]}"#).is_err());
    }
}
