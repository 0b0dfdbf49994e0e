//! Lattice point enumeration in boxes and in the nonnegative orthant.

use super::cone::{feasible_point, maximize, Ineq, LpOutcome};
use super::hnf::pivot_rows;
use super::AffineLattice;
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Hard cap on the number of lattice points materialized by one enumeration.
const POINT_GUARD: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnumerationTag {
    /// The intersection with the orthant is finite and fully listed.
    Finite,
    /// The intersection is infinite; `witness` is a nonzero nonnegative
    /// direction of the lattice, and `points` is a best-effort sample.
    Infinite,
    /// A per-coordinate cap cut the exact enumeration short.
    Truncated,
}

/// Outcome of intersecting an affine lattice with the nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub tag: EnumerationTag,
    pub points: Vec<MultiIndex>,
    pub witness: Option<MultiIndex>,
}

/// Inequalities `base + B t >= lower` in the lattice coordinates `t`.
fn orthant_system(lat: &AffineLattice, lower: &[BigInt]) -> Vec<Ineq> {
    let basis = lat.basis_bigint();
    let mut out = Vec::with_capacity(lat.dim());
    for i in 0..lat.dim() {
        let coeffs = basis
            .iter()
            .map(|col| BigRational::from(col[i].clone()))
            .collect();
        let rhs = BigRational::from(&lower[i] - BigInt::from(lat.base().entries()[i]));
        out.push(Ineq::new(coeffs, rhs));
    }
    out
}

/// True when the direction lattice meets the nonnegative orthant only at 0.
///
/// Decided exactly over the rationals: a nonzero nonnegative rational
/// combination of the basis exists if and only if a nonzero nonnegative
/// lattice direction exists, by clearing denominators.
pub fn direction_cone_trivial(lat: &AffineLattice) -> bool {
    nonneg_direction(lat).is_none()
}

/// A nonzero nonnegative direction of the lattice, when one exists.
pub fn nonneg_direction(lat: &AffineLattice) -> Option<MultiIndex> {
    direction_with_floor(lat, false)
}

/// A direction of the lattice with every entry at least one, when one exists.
pub fn strictly_positive_direction(lat: &AffineLattice) -> Option<MultiIndex> {
    direction_with_floor(lat, true)
}

fn direction_with_floor(lat: &AffineLattice, strict: bool) -> Option<MultiIndex> {
    if lat.rank() == 0 {
        return None;
    }
    let basis = lat.basis_bigint();
    let rank = lat.rank();
    let dim = lat.dim();
    let mut sys = Vec::with_capacity(dim + 1);
    for i in 0..dim {
        let coeffs: Vec<BigRational> = basis
            .iter()
            .map(|col| BigRational::from(col[i].clone()))
            .collect();
        let rhs = if strict {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        sys.push(Ineq::new(coeffs, rhs));
    }
    if !strict {
        // exclude the origin: total mass at least one
        let coeffs: Vec<BigRational> = (0..rank)
            .map(|j| {
                (0..dim)
                    .map(|i| BigRational::from(basis[j][i].clone()))
                    .sum()
            })
            .collect();
        sys.push(Ineq::new(coeffs, BigRational::one()));
    }
    let t = feasible_point(sys, rank)?;
    // Scale the rational coordinates to integers so the point is in the lattice.
    let mut lcm = BigInt::one();
    for c in &t {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let scale = BigRational::from(lcm);
    let mut direction = vec![BigInt::zero(); dim];
    for (j, c) in t.iter().enumerate() {
        let m = (c * &scale).to_integer();
        for i in 0..dim {
            direction[i] += &m * &basis[j][i];
        }
    }
    let entries: Vec<i64> = direction
        .iter()
        .map(|e| e.to_i64().expect("direction entry fits i64"))
        .collect();
    Some(MultiIndex::new(entries).expect("dim >= 1"))
}

/// Exact per-coordinate maxima of `{x in base + lattice span : x >= 0}`.
///
/// Returns `None` when the region is empty. Every coordinate is bounded
/// whenever the direction cone is trivial.
fn orthant_bounds(lat: &AffineLattice) -> Result<Option<Vec<BigInt>>> {
    let zeros = vec![BigInt::zero(); lat.dim()];
    let sys = orthant_system(lat, &zeros);
    if feasible_point(sys.clone(), lat.rank()).is_none() {
        return Ok(None);
    }
    let basis = lat.basis_bigint();
    let mut bounds = Vec::with_capacity(lat.dim());
    for i in 0..lat.dim() {
        let objective: Vec<BigRational> = basis
            .iter()
            .map(|col| BigRational::from(col[i].clone()))
            .collect();
        match maximize(&sys, lat.rank(), &objective) {
            LpOutcome::Max(m) => {
                let max = m + BigRational::from(BigInt::from(lat.base().entries()[i]));
                bounds.push(max.floor().to_integer());
            }
            LpOutcome::Unbounded => {
                return Err(Error::resource(
                    "orthant region unbounded despite trivial direction cone",
                ));
            }
            LpOutcome::Infeasible => return Ok(None),
        }
    }
    Ok(Some(bounds))
}

/// All lattice points inside the closed box `[lo, hi]`, in canonical order.
pub fn enumerate_box(lat: &AffineLattice, lo: &[i64], hi: &[i64]) -> Result<Vec<MultiIndex>> {
    if lo.len() != lat.dim() || hi.len() != lat.dim() {
        return Err(Error::input("box bounds must match ambient dimension"));
    }
    let lo: Vec<BigInt> = lo.iter().map(|&e| BigInt::from(e)).collect();
    let hi: Vec<BigInt> = hi.iter().map(|&e| BigInt::from(e)).collect();
    let base: Vec<BigInt> = lat
        .base()
        .entries()
        .iter()
        .map(|&e| BigInt::from(e))
        .collect();
    if lat.rank() == 0 {
        let inside = (0..lat.dim()).all(|i| base[i] >= lo[i] && base[i] <= hi[i]);
        return Ok(if inside {
            vec![lat.base().clone()]
        } else {
            vec![]
        });
    }
    let basis = lat.basis_bigint();
    let pivots = pivot_rows(&basis);
    let mut out = Vec::new();
    let mut current = base.clone();
    recurse(
        lat.dim(),
        &basis,
        &pivots,
        &lo,
        &hi,
        0,
        &mut current,
        &mut out,
    )?;
    let mut points: Vec<MultiIndex> = out
        .into_iter()
        .map(|v| {
            let entries: Vec<i64> = v
                .iter()
                .map(|e| e.to_i64().expect("enumerated entry fits i64"))
                .collect();
            MultiIndex::new(entries).expect("dim >= 1")
        })
        .collect();
    points.sort();
    Ok(points)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    dim: usize,
    basis: &[Vec<BigInt>],
    pivots: &[usize],
    lo: &[BigInt],
    hi: &[BigInt],
    col: usize,
    current: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) -> Result<()> {
    if col == basis.len() {
        if (0..dim).all(|i| current[i] >= lo[i] && current[i] <= hi[i]) {
            out.push(current.clone());
            if out.len() > POINT_GUARD {
                return Err(Error::resource("lattice enumeration exceeded point guard"));
            }
        }
        return Ok(());
    }
    // The pivot coordinate of this column is unaffected by later columns,
    // so the box pins the coefficient range exactly.
    let p = pivots[col];
    let pivot = &basis[col][p];
    let tmin = (&lo[p] - &current[p]).div_ceil(pivot);
    let tmax = (&hi[p] - &current[p]).div_floor(pivot);
    let mut t = tmin.clone();
    while t <= tmax {
        for i in 0..dim {
            current[i] += &t * &basis[col][i];
        }
        recurse(dim, basis, pivots, lo, hi, col + 1, current, out)?;
        for i in 0..dim {
            current[i] -= &t * &basis[col][i];
        }
        t += 1;
    }
    Ok(())
}

/// Compute the intersection of the affine lattice with the nonnegative
/// orthant.
///
/// With a trivial direction cone the intersection is finite: exact linear
/// programming produces per-coordinate bounds and the box is enumerated
/// completely. Otherwise the result is `Infinite` with a witness direction;
/// if `cap` is given, the points inside `[0, cap]^d` are listed as a sample.
/// If `cap` is given and the exact bounds exceed it, the result is
/// `Truncated` with the points inside the capped box.
pub fn enumerate_orthant(lat: &AffineLattice, cap: Option<i64>) -> Result<EnumerationResult> {
    if let Some(c) = cap {
        if c < 0 {
            return Err(Error::input("cap must be nonnegative"));
        }
    }
    if let Some(witness) = nonneg_direction(lat) {
        let points = match cap {
            Some(c) => enumerate_box(lat, &vec![0; lat.dim()], &vec![c; lat.dim()])?,
            None => Vec::new(),
        };
        return Ok(EnumerationResult {
            tag: EnumerationTag::Infinite,
            points,
            witness: Some(witness),
        });
    }
    let Some(bounds) = orthant_bounds(lat)? else {
        return Ok(EnumerationResult {
            tag: EnumerationTag::Finite,
            points: Vec::new(),
            witness: None,
        });
    };
    let mut truncated = false;
    let hi: Vec<i64> = bounds
        .iter()
        .map(|b| {
            let b = b.to_i64().unwrap_or(i64::MAX);
            match cap {
                Some(c) if b > c => {
                    truncated = true;
                    c
                }
                _ => b,
            }
        })
        .collect();
    let points = enumerate_box(lat, &vec![0; lat.dim()], &hi)?;
    Ok(EnumerationResult {
        tag: if truncated {
            EnumerationTag::Truncated
        } else {
            EnumerationTag::Finite
        },
        points,
        witness: None,
    })
}
