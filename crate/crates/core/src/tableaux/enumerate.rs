use super::{Filling, Partition};

/// All LR fillings of `λ/μ` with content `ν`, with `r = max(length(λ), 1)`.
pub fn enumerate_fillings(mu: &Partition, nu: &Partition, lambda: &Partition) -> Vec<Filling> {
    enumerate_fillings_in(mu, nu, lambda, lambda.length().max(1))
}

/// As [`enumerate_fillings`] with an explicit array size `r`.
pub fn enumerate_fillings_in(mu: &Partition, nu: &Partition, lambda: &Partition, r: usize) -> Vec<Filling> {
    let feasible = mu.weight() + nu.weight() == lambda.weight()
        && mu.length() <= lambda.length()
        && nu.length() <= lambda.length()
        && lambda.length() <= r
        && mu.is_contained_in(lambda);
    if !feasible {
        return Vec::new();
    }
    let mut search = Search {
        r,
        mu: mu.padded(r).into_iter().map(i64::from).collect(),
        nu: nu.padded(r).into_iter().map(i64::from).collect(),
        lambda: lambda.padded(r).into_iter().map(i64::from).collect(),
        k: Filling::zero(r),
        used: vec![0; r + 1],
        out: Vec::new(),
    };
    search.row(1);
    search.out
}

/// `c^λ_{μν}`.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lambda: &Partition) -> usize {
    enumerate_fillings(mu, nu, lambda).len()
}

struct Search {
    r: usize,
    mu: Vec<i64>,
    nu: Vec<i64>,
    lambda: Vec<i64>,
    k: Filling,
    /// `used[i]`: number of `i`s placed in completed rows plus the current one.
    used: Vec<i64>,
    out: Vec<Filling>,
}

impl Search {
    fn row(&mut self, j: usize) {
        if j > self.r {
            if (1..=self.r).all(|i| self.used[i] == self.nu[i - 1]) {
                self.out.push(self.k.clone());
            }
            return;
        }
        let before: Vec<i64> = self.used.clone();
        let boxes = self.lambda[j - 1] - self.mu[j - 1];
        self.cell(1, j, boxes, 0, &before);
    }

    /// Chooses `k_ij` given `remaining` boxes in row `j` and the running
    /// prefix `k_1j + ... + k_{i-1,j}`.
    fn cell(&mut self, i: usize, j: usize, remaining: i64, prefix: i64, before: &[i64]) {
        if i > j {
            if remaining == 0 {
                self.row(j + 1);
            }
            return;
        }
        let mut hi = remaining.min(self.nu[i - 1] - self.used[i]);
        if j >= 2 {
            // column strictness against row j-1
            let above = self.mu[j - 2] + self.k.column_prefix(i - 1, j - 1);
            hi = hi.min(above - self.mu[j - 1] - prefix);
        }
        if i >= 2 {
            // word condition: i's through row j never outnumber (i-1)'s through row j-1
            hi = hi.min(before[i - 1] - self.used[i]);
        }
        let lo = if i == j { remaining } else { 0 };
        for v in lo..=hi {
            self.k.set(i, j, v);
            self.used[i] += v;
            self.cell(i + 1, j, remaining - v, prefix + v, before);
            self.used[i] -= v;
        }
        self.k.set(i, j, 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::tableaux::validate_filling;

    #[test]
    fn single_box() {
        let f = enumerate_fillings(&partition![1], &partition![1], &partition![1, 1]);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].rows(), &[vec![0], vec![1, 0]]);
    }

    #[test]
    fn weight_mismatch_is_empty() {
        assert!(enumerate_fillings(&partition![2], &partition![1], &partition![4]).is_empty());
    }

    #[test]
    fn classic_coefficients() {
        // s_21 * s_21 contains s_321 twice
        assert_eq!(
            lr_coefficient(&partition![2, 1], &partition![2, 1], &partition![3, 2, 1]),
            2
        );
        assert_eq!(lr_coefficient(&partition![1], &partition![1], &partition![2]), 1);
        assert_eq!(lr_coefficient(&partition![], &partition![2, 1], &partition![2, 1]), 1);
        assert_eq!(lr_coefficient(&partition![2, 1], &partition![], &partition![2, 1]), 1);
        assert_eq!(lr_coefficient(&partition![1, 1], &partition![1, 1], &partition![4]), 0);
    }

    #[test]
    fn golden_triple_contains_golden_filling() {
        let (mu, nu, lambda) = (partition![7, 4, 2, 1], partition![8, 5, 4, 2], partition![11, 10, 7, 5]);
        let all = enumerate_fillings(&mu, &nu, &lambda);
        let golden = Filling::new(vec![vec![4], vec![2, 4], vec![1, 1, 3], vec![1, 0, 1, 2]]).unwrap();
        assert!(all.contains(&golden));
        for f in &all {
            assert!(validate_filling(f, &mu, &nu, &lambda).unwrap().is_valid());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }
}
