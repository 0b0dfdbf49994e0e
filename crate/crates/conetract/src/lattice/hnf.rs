//! Column-style Hermite normal form over arbitrary-precision integers.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Canonical basis of the integer lattice generated by `generators`.
///
/// The result is the column-style Hermite normal form: pivot rows strictly
/// increase from left to right, every pivot is positive, and in each pivot
/// row the entries of the earlier columns are reduced into `[0, pivot)`.
/// Two generating sets of the same lattice produce identical output, so
/// lattice equality is structural equality of the bases.
pub fn hermite_normal_form(dim: usize, generators: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|g| g.iter().any(|e| !e.is_zero()))
        .cloned()
        .collect();
    let mut r = 0usize;
    for row in 0..dim {
        if r >= cols.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (j, col) in cols.iter().enumerate().skip(r) {
                if !col[row].is_zero()
                    && best.is_none_or(|b| col[row].abs() < cols[b][row].abs())
                {
                    best = Some(j);
                }
            }
            let Some(jmin) = best else { break };
            cols.swap(r, jmin);
            let mut cleared = true;
            for j in r + 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[r][row]);
                if !q.is_zero() {
                    for i in 0..dim {
                        let delta = &q * &cols[r][i];
                        cols[j][i] -= delta;
                    }
                }
                if !cols[j][row].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if cols[r][row].is_zero() {
            continue;
        }
        if cols[r][row].is_negative() {
            for e in cols[r].iter_mut() {
                *e = -std::mem::take(e);
            }
        }
        let pivot = cols[r][row].clone();
        for j in 0..r {
            let q = cols[j][row].div_floor(&pivot);
            if !q.is_zero() {
                for i in 0..dim {
                    let delta = &q * &cols[r][i];
                    cols[j][i] -= delta;
                }
            }
        }
        r += 1;
    }
    cols.truncate(r);
    cols
}

/// Pivot row of each HNF column: the first row with a nonzero entry.
pub fn pivot_rows(basis: &[Vec<BigInt>]) -> Vec<usize> {
    basis
        .iter()
        .map(|col| col.iter().position(|e| !e.is_zero()).expect("zero column"))
        .collect()
}

/// Solve `basis * x = target` exactly over the integers, where `basis` is in
/// column HNF.  Returns the coordinate vector when the target lies in the
/// lattice.
pub fn solve(dim: usize, basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let pivots = pivot_rows(basis);
    let mut residual = target.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for (j, col) in basis.iter().enumerate() {
        let p = pivots[j];
        let (q, rem) = residual[p].div_rem(&col[p]);
        if !rem.is_zero() {
            return None;
        }
        for i in 0..dim {
            let delta = &q * &col[i];
            residual[i] -= delta;
        }
        coords.push(q);
    }
    if residual.iter().all(|e| e.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    #[test]
    fn gcd_in_one_dimension() {
        let h = hermite_normal_form(1, &big(&[&[2], &[5]]));
        assert_eq!(h, big(&[&[1]]));
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        // Two generating sets of the same rank-2 lattice in Z^3.
        let a = hermite_normal_form(3, &big(&[&[3, -3, 0], &[1, -2, 1]]));
        let b = hermite_normal_form(3, &big(&[&[2, -1, -1], &[-1, 2, -1]]));
        assert_eq!(a, b);
        assert_eq!(a, big(&[&[1, 1, -2], &[0, 3, -3]]));
    }

    #[test]
    fn solve_recovers_membership() {
        let h = hermite_normal_form(3, &big(&[&[1, 1, -2], &[0, 3, -3]]));
        let target: Vec<BigInt> = [0, -3, 3].iter().map(|&e| BigInt::from(e)).collect();
        let x = solve(3, &h, &target).unwrap();
        assert_eq!(x, vec![BigInt::from(0), BigInt::from(-1)]);
        let off: Vec<BigInt> = [1, 0, 0].iter().map(|&e| BigInt::from(e)).collect();
        assert!(solve(3, &h, &off).is_none());
    }
}
