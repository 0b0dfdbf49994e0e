//! Smith normal form with row-transform tracking.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonalize the integer matrix `a` (rows x cols, row-major) by unimodular
/// row and column operations, returning `(p, diag)` where `p * a * q = d`
/// for some untracked unimodular `q`.  The diagonal entries are positive and
/// each divides the next.
///
/// Only the row transform `p` is returned: its rows are the characters needed
/// to describe the quotient of the ambient lattice by the column span of `a`.
pub fn smith_with_row_transform(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut p: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Move a minimal-magnitude nonzero entry of the trailing block to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        p.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }

        let mut dirty = false;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                for j in 0..cols {
                    let delta = &q * &m[t][j];
                    m[i][j] -= delta;
                }
                for j in 0..rows {
                    let delta = &q * &p[t][j];
                    p[i][j] -= delta;
                }
            }
            if !m[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for row in m.iter_mut() {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
            }
            if !m[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // Enforce divisibility of the trailing block by the pivot.
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    for k in 0..cols {
                        let add = m[i][k].clone();
                        m[t][k] += add;
                    }
                    for k in 0..rows {
                        let add = p[i][k].clone();
                        p[t][k] += add;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if m[t][t].is_negative() {
            for j in 0..cols {
                m[t][j] = -std::mem::take(&mut m[t][j]);
            }
            for j in 0..rows {
                p[t][j] = -std::mem::take(&mut p[t][j]);
            }
        }
        t += 1;
    }
    let diag = (0..t).map(|i| m[i][i].clone()).collect();
    (p, diag)
}
