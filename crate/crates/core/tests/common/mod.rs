#![allow(dead_code)]

use lrpairs::dvr::{RingElem, Valuation};
use lrpairs::matrix::{IndexSet, RMatrix};
use lrpairs::partition;
use lrpairs::tableaux::{Filling, Partition};

pub fn golden_filling() -> Filling {
    Filling::new(vec![vec![4], vec![2, 4], vec![1, 1, 3], vec![1, 0, 1, 2]]).unwrap()
}

pub fn golden_mu() -> Partition {
    partition![7, 4, 2, 1]
}

/// Integer polynomial from `(coefficient, degree)` terms.
fn poly(terms: &[(i64, usize)]) -> RingElem {
    let len = terms.iter().map(|&(_, d)| d + 1).max().unwrap_or(0);
    let mut c = vec![0; len];
    for &(a, d) in terms {
        c[d] += a;
    }
    RingElem::from_ints(&c)
}

fn matrix(rows: &[&[&[(i64, usize)]]]) -> RMatrix {
    RMatrix::from_rows(rows.iter().map(|r| r.iter().map(|e| poly(e)).collect()).collect()).unwrap()
}

/// N as displayed for the 4x4 example.
pub fn golden_n() -> RMatrix {
    matrix(&[
        &[&[(1, 4)], &[(1, 4)], &[(1, 3)], &[(1, 2)]],
        &[&[], &[(1, 6)], &[(1, 5), (1, 4)], &[(1, 4), (2, 3)]],
        &[&[], &[], &[(1, 5)], &[(2, 4), (1, 3)]],
        &[&[], &[], &[], &[(1, 4)]],
    ])
}

/// M N as displayed.
pub fn golden_mn() -> RMatrix {
    matrix(&[
        &[&[(1, 11)], &[(1, 11)], &[(1, 10)], &[(1, 9)]],
        &[&[], &[(1, 10)], &[(1, 9), (1, 8)], &[(1, 8), (2, 7)]],
        &[&[], &[], &[(1, 7)], &[(2, 6), (1, 5)]],
        &[&[], &[], &[], &[(1, 5)]],
    ])
}

/// LR fillings as skew tableaux: rows weakly increasing, columns strictly
/// increasing, content `ν`, and the reverse row reading word a lattice word.
/// Cells are filled in reading order (top to bottom, right to left), so the
/// lattice condition prunes as it goes. Returned with `r = max(length(λ), 1)`.
pub fn lattice_word_fillings(mu: &Partition, nu: &Partition, lambda: &Partition) -> Vec<Filling> {
    let r = lambda.length().max(1);
    if mu.weight() + nu.weight() != lambda.weight() || !mu.is_contained_in(lambda) || nu.length() > r {
        return Vec::new();
    }
    let mu_p: Vec<usize> = mu.padded(r).iter().map(|&x| x as usize).collect();
    let lam: Vec<usize> = lambda.padded(r).iter().map(|&x| x as usize).collect();
    let nu_p: Vec<usize> = nu.padded(r).iter().map(|&x| x as usize).collect();
    let mut cells = Vec::new();
    for row in 0..r {
        for col in (mu_p[row]..lam[row]).rev() {
            cells.push((row, col));
        }
    }
    let mut grid: Vec<Vec<usize>> = lam.iter().map(|&l| vec![0; l]).collect();
    let mut used = vec![0usize; r + 1];
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        at: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
        mu: &[usize],
        nu: &[usize],
        r: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(&(row, col)) = cells.get(at) else {
            out.push(grid.clone());
            return;
        };
        // right neighbour bounds from above, cell above bounds from below
        let hi = if col + 1 < grid[row].len() {
            grid[row][col + 1]
        } else {
            r
        };
        let lo = if row > 0 && col >= mu[row - 1] {
            grid[row - 1][col] + 1
        } else {
            1
        };
        for v in lo..=hi.min(r) {
            if used[v] >= nu[v - 1] || (v > 1 && used[v] + 1 > used[v - 1]) {
                continue;
            }
            grid[row][col] = v;
            used[v] += 1;
            go(at + 1, cells, grid, used, mu, nu, r, out);
            used[v] -= 1;
        }
        grid[row][col] = 0;
    }
    let mut raw = Vec::new();
    go(0, &cells, &mut grid, &mut used, &mu_p, &nu_p, r, &mut raw);
    for g in raw {
        out.push(Filling::from_fn(r, |i, j| {
            g[j - 1][mu_p[j - 1]..].iter().filter(|&&v| v == i).count() as i64
        }));
    }
    out
}

/// `ν` of the rows `rows` of `m`, computed from gcds of minors: the `k`-th
/// largest invariant order is `d_{s-k+1} - d_{s-k}` with `d_k` the least
/// order of a `k x k` minor.
pub fn rows_invariants(m: &RMatrix, rows: &IndexSet) -> Vec<i64> {
    let r = m.size();
    let s = rows.len();
    let mut d = vec![0i64];
    for k in 1..=s {
        let mut best = Valuation::Infinite;
        for sub in IndexSet::all(s, k) {
            let pick = IndexSet::new(sub.iter().map(|i| rows.iter().nth(i - 1).unwrap()).collect(), r).unwrap();
            for cols in IndexSet::all(r, k) {
                best = best.min(m.minor_order(&pick, &cols).unwrap());
            }
        }
        let Valuation::Finite(v) = best else {
            panic!("rank deficient rows")
        };
        d.push(v);
    }
    (1..=s).rev().map(|k| d[k] - d[k - 1]).collect()
}
