//! Enumeration of subspaces of `F_q^n` through their reduced row echelon
//! bases, plus the small amount of linear algebra the searches need.
//!
//! A subspace of dimension `r` is identified with its RREF basis: pivot
//! columns `c_0 < ... < c_{r-1}`, row `k` has a 1 at `c_k`, zeros at the
//! other pivots and before `c_k`, and arbitrary entries elsewhere. Pivot
//! sets are visited as combinations in lex order; within one pivot set the
//! free entries count up like an odometer (row 0 outermost, left to right).
//! Columns are expected to be sorted by descending monomial, so row `k`'s
//! leading monomial is column `c_k`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// Number of `r`-dimensional subspaces of `F_q^n`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, r: usize, q: u32) -> u128 {
    if r > n {
        return 0;
    }
    // Σ over pivot sets of q^{free entries}: dynamic programming on columns.
    // ways[k] = weighted count after deciding some columns with k pivots so far,
    // where each non-pivot column contributes q^{pivots to its left}.
    let q = q as u128;
    let mut ways = vec![0u128; r + 1];
    ways[0] = 1;
    for _ in 0..n {
        for k in (0..=r).rev() {
            let mut v = ways[k].saturating_mul(sat_pow(q, k));
            if k > 0 {
                v = v.saturating_add(ways[k - 1]);
            }
            ways[k] = v;
        }
    }
    ways[r]
}

fn sat_pow(q: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(q))
}

/// `C(n, r)` subsets of `0..n` in lex order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut k = r;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < n - r + k {
                cur[k] += 1;
                for t in k + 1..r {
                    cur[t] = cur[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Positions `(row, column)` of the free entries for a pivot set, in odometer
/// significance order (most significant first).
fn free_slots(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (row, &c) in pivots.iter().enumerate() {
        for col in c + 1..n {
            if !pivots.contains(&col) {
                slots.push((row, col));
            }
        }
    }
    slots
}

/// Calls `visit` with the rows of every RREF basis having these pivots.
/// Returning `false` from `visit` stops the walk.
pub fn walk_pivot_set(
    q: u32,
    n: usize,
    pivots: &[usize],
    visit: &mut impl FnMut(&[Vec<Elem>]) -> bool,
) {
    let slots = free_slots(n, pivots);
    let mut rows: Vec<Vec<Elem>> = pivots
        .iter()
        .map(|&c| {
            let mut row = vec![0; n];
            row[c] = 1;
            row
        })
        .collect();
    loop {
        if !visit(&rows) {
            return;
        }
        let mut advanced = false;
        for &(row, col) in slots.iter().rev() {
            let slot = &mut rows[row][col];
            *slot += 1;
            if u32::from(*slot) < q {
                advanced = true;
                break;
            }
            *slot = 0;
        }
        if !advanced {
            return;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Max,
    Min,
}

/// Best subspace found by [`search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremum {
    pub value: u128,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Elem>>,
    pub visited: u128,
}

/// Scores every `r`-dimensional subspace of `F_q^n` and returns the best.
/// Ties go to the subspace that comes first in the canonical order, so the
/// result does not depend on `workers`.
pub fn search<F>(q: u32, n: usize, r: usize, workers: usize, goal: Goal, score: F) -> Result<Extremum>
where
    F: Fn(&[usize], &[Vec<Elem>]) -> u128 + Sync,
{
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("subspace dimension {r} outside 1..={n}")));
    }
    let pivot_sets = combinations(n, r);
    let run = || {
        pivot_sets
            .par_iter()
            .map(|pivots| {
                let mut best: Option<(u128, Vec<Vec<Elem>>)> = None;
                let mut visited = 0u128;
                walk_pivot_set(q, n, pivots, &mut |rows| {
                    visited += 1;
                    let v = score(pivots, rows);
                    let better = match &best {
                        None => true,
                        Some((b, _)) => match goal {
                            Goal::Max => v > *b,
                            Goal::Min => v < *b,
                        },
                    };
                    if better {
                        best = Some((v, rows.to_vec()));
                    }
                    true
                });
                let (value, rows) = best.expect("every pivot set has a basis");
                Extremum { value, pivots: pivots.clone(), rows, visited }
            })
            .collect::<Vec<_>>()
    };
    let per_set = with_workers(workers, run)?;
    let visited = per_set.iter().map(|e| e.visited).sum();
    let mut best: Option<Extremum> = None;
    for cand in per_set {
        let better = match &best {
            None => true,
            Some(b) => match goal {
                Goal::Max => cand.value > b.value,
                Goal::Min => cand.value < b.value,
            },
        };
        if better {
            best = Some(cand);
        }
    }
    let mut best = best.expect("at least one pivot set");
    best.visited = visited;
    Ok(best)
}

/// Runs `f` on a dedicated pool of `workers` threads (0 means rayon's default).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::OutOfRange(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Rank of a matrix over `F_q`.
pub fn rank(field: &FieldSpec, rows: &[Vec<Elem>]) -> usize {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let factor = m[i][col];
                for c in 0..ncols {
                    let sub = field.mul(factor, m[rank][c]);
                    m[i][c] = field.sub(m[i][c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `coeffs · matrix`, a linear combination of the matrix rows.
pub fn combine(field: &FieldSpec, coeffs: &[Elem], matrix: &[Vec<Elem>]) -> Vec<Elem> {
    let n = matrix.first().map_or(0, Vec::len);
    let mut out = vec![0; n];
    for (&c, row) in coeffs.iter().zip(matrix) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}
