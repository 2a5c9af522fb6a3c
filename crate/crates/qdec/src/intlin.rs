//! Exact integer and rational linear algebra: Hermite and Smith normal
//! forms over `BigInt`, Gauss-Jordan inversion over `BigRational`.
//!
//! Matrices are plain `Vec<Vec<_>>` in row-major order; sizes here are tiny
//! (rank of the root system, at most a few dozen), so the quadratic-ish
//! algorithms below are more than fast enough.

use num_bigint::BigInt;
use num_integer::Integer;

use num_traits::{One, Signed, Zero};

use crate::arith::Rat;

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is the canonical basis of the row span: echelon rows with
/// positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// zero rows dropped. Two generating sets of the same lattice produce
/// identical output.
#[allow(clippy::needless_range_loop)]
pub fn hnf_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..ncols {
        // clear column `col` below `pivot_row` by gcd steps
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if rows[i][col].abs() < rows[b][col].abs() => Some(i),
                        Some(b) => Some(b),
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                for c in 0..ncols {
                    let sub = &q * &rows[pivot_row][c];
                    rows[i][c] -= sub;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for c in 0..ncols {
                    rows[pivot_row][c] = -rows[pivot_row][c].clone();
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    // reduce entries above each pivot
    for &(r, c) in pivots.iter() {
        let pivot = rows[r][c].clone();
        for i in 0..r {
            let q = rows[i][c].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for k in 0..ncols {
                let sub = &q * &rows[r][k];
                rows[i][k] -= sub;
            }
        }
    }
    rows
}

/// Smith normal form divisors of `m` together with the right transform `V`
/// (column operations), so that `U m V = diag(divisors)` for some
/// unimodular `U`. Divisors are nonnegative and form a divisibility chain.
#[allow(clippy::needless_range_loop)]
pub fn smith_with_right_transform(m: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let add_col = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let sub = q * &row[src];
            row[dst] -= sub;
        }
        for row in v.iter_mut() {
            let sub = q * &row[src];
            row[dst] -= sub;
        }
    };
    let swap_col = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };

    let n = nrows.min(ncols);
    let mut t = 0usize;
    while t < n {
        // locate smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero() {
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) if a[i][j].abs() < a[bi][bj].abs() => Some((i, j)),
                        Some(b) => Some(b),
                    };
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if bj != t {
            swap_col(&mut a, &mut v, t, bj);
        }

        // clear row t and column t
        let mut dirty = false;
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for c in t..ncols {
                let sub = &q * &a[t][c];
                a[i][c] -= sub;
            }
            if !a[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            add_col(&mut a, &mut v, j, t, &q);
            if !a[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }

        // enforce the divisibility chain
        let mut fixed = true;
        'outer: for i in t + 1..nrows {
            for j in t + 1..ncols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    // fold column j into column t and restart this pivot
                    let minus_one = -BigInt::one();
                    add_col(&mut a, &mut v, t, j, &minus_one);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if a[t][t].is_negative() {
            for c in t..ncols {
                a[t][c] = -a[t][c].clone();
            }
        }
        t += 1;
    }

    let mut divisors: Vec<BigInt> = (0..n).map(|i| a[i][i].abs()).collect();
    // rank-deficient tail, if any, is reported as zeros
    for d in divisors.iter_mut().skip(t) {
        *d = BigInt::zero();
    }
    (divisors, v)
}

/// Elementary divisors (> 1 entries included, 1s and 0s kept) of `m`.
pub fn smith_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    smith_with_right_transform(m).0
}

/// Exact inverse of a square rational matrix, or `None` if singular.
pub fn invert_rational(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let s = &f * &a[col][j];
                a[i][j] -= s;
                let s = &f * &inv[col][j];
                inv[i][j] -= s;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec_rat(m: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
