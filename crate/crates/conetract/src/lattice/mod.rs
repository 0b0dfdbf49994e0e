//! Exact integer-lattice algebra.
//!
//! The central object is the affine coset generated by a finite frequency
//! set: a base point plus the lattice spanned by all pairwise differences.
//! The basis is kept in column-style Hermite normal form so that two
//! representations of the same coset are structurally equal.  Everything
//! here is decided exactly; lattice solves run on arbitrary-precision
//! integers even though the ambient indices are 64-bit.

mod annihilator;
mod cone;
mod enumerate;
mod euclid;
mod hnf;
mod snf;

pub use annihilator::{annihilator, annihilator_average, AnnihilatorDecomposition, CyclicFactor};
pub use enumerate::{
    direction_cone_trivial, enumerate_box, enumerate_orthant, nonneg_direction,
    strictly_positive_direction, EnumerationResult, EnumerationTag,
};
pub use euclid::reflection_gcd;

use crate::error::{Error, Result};
use crate::index::{FreqSet, MultiIndex};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// An affine coset of a sublattice of `Z^d`: `base + span(basis)`.
///
/// The basis is the canonical Hermite normal form of the direction lattice
/// and the base point is reduced to the canonical coset representative, so
/// equal cosets built from different generating sets compare equal
/// field-wise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineLattice {
    dim: usize,
    base: MultiIndex,
    basis: Vec<MultiIndex>,
    rank: usize,
}

impl AffineLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &MultiIndex {
        &self.base
    }

    /// Canonical basis columns of the direction lattice.
    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    /// Dimension of the affine span.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn basis_bigint(&self) -> Vec<Vec<BigInt>> {
        self.basis
            .iter()
            .map(|col| col.entries().iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    /// Construct a coset from an explicit base point and generating
    /// directions.  The directions are normalized to the canonical basis and
    /// the base is reduced to the canonical coset representative, so two
    /// descriptions of the same coset produce identical values.
    pub fn from_generators(base: MultiIndex, directions: &[MultiIndex]) -> Result<Self> {
        let dim = base.dim();
        if directions.iter().any(|v| v.dim() != dim) {
            return Err(Error::input("generator dimensions must match the base"));
        }
        let gens: Vec<Vec<BigInt>> = directions
            .iter()
            .map(|v| v.entries().iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        let basis = hnf::hermite_normal_form(dim, &gens);
        let base = reduce_base(dim, &basis, &base)?;
        let basis = narrow_columns(&basis)?;
        let rank = basis.len();
        Ok(AffineLattice {
            dim,
            base,
            basis,
            rank,
        })
    }
}

/// Unique coset representative: every pivot-row coordinate reduced into
/// `[0, pivot)` by subtracting basis columns.
fn reduce_base(dim: usize, basis: &[Vec<BigInt>], base: &MultiIndex) -> Result<MultiIndex> {
    use num_integer::Integer;
    use num_traits::{ToPrimitive, Zero};
    let mut reduced: Vec<BigInt> = base.entries().iter().map(|&e| BigInt::from(e)).collect();
    for (col, p) in basis.iter().zip(hnf::pivot_rows(basis)) {
        let q = reduced[p].div_floor(&col[p]);
        if !q.is_zero() {
            for i in 0..dim {
                let delta = &q * &col[i];
                reduced[i] -= delta;
            }
        }
    }
    let entries: Vec<i64> = reduced
        .iter()
        .map(|e| {
            e.to_i64()
                .ok_or_else(|| Error::input("reduced base entry overflowed 64 bits"))
        })
        .collect::<Result<_>>()?;
    MultiIndex::new(entries)
}

fn narrow_columns(cols: &[Vec<BigInt>]) -> Result<Vec<MultiIndex>> {
    cols.iter()
        .map(|col| {
            let entries: Vec<i64> = col
                .iter()
                .map(|e| {
                    e.to_i64()
                        .ok_or_else(|| Error::input("basis entry overflowed 64 bits"))
                })
                .collect::<Result<_>>()?;
            MultiIndex::new(entries)
        })
        .collect()
}

/// The affine coset generated by a frequency set: the lexicographically
/// smallest point plus the lattice spanned by all differences, stored in
/// canonical form.
pub fn affine_lattice(gamma: &FreqSet) -> AffineLattice {
    let base = gamma.min_point().clone();
    let directions: Vec<MultiIndex> = gamma
        .iter()
        .filter(|p| *p != &base)
        .map(|p| p.sub(&base).expect("same dimension"))
        .collect();
    AffineLattice::from_generators(base, &directions).expect("generators share the base dimension")
}

/// Whether `lam` lies on the coset, decided by exact back-substitution
/// against the Hermite basis.
pub fn contains(lat: &AffineLattice, lam: &MultiIndex) -> Result<bool> {
    if lam.dim() != lat.dim() {
        return Err(Error::input("point dimension must match the lattice"));
    }
    let target: Vec<BigInt> = lam
        .entries()
        .iter()
        .zip(lat.base().entries())
        .map(|(&l, &b)| BigInt::from(l) - BigInt::from(b))
        .collect();
    Ok(hnf::solve(lat.dim(), &lat.basis_bigint(), &target).is_some())
}

/// Lattice coordinates of `lam - base` in the Hermite basis, when on the coset.
pub fn coordinates(lat: &AffineLattice, lam: &MultiIndex) -> Result<Option<Vec<BigInt>>> {
    if lam.dim() != lat.dim() {
        return Err(Error::input("point dimension must match the lattice"));
    }
    let target: Vec<BigInt> = lam
        .entries()
        .iter()
        .zip(lat.base().entries())
        .map(|(&l, &b)| BigInt::from(l) - BigInt::from(b))
        .collect();
    Ok(hnf::solve(lat.dim(), &lat.basis_bigint(), &target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn set(rows: &[&[i64]]) -> FreqSet {
        FreqSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn corner_trio() -> FreqSet {
        set(&[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1]])
    }

    #[test]
    fn singleton_spans_a_point() {
        let lat = affine_lattice(&set(&[&[1, 1]]));
        assert_eq!(lat.rank(), 0);
        assert!(lat.basis().is_empty());
        assert_eq!(lat.base(), &mi(&[1, 1]));
    }

    #[test]
    fn corner_trio_lattice() {
        let lat = affine_lattice(&corner_trio());
        assert_eq!(lat.rank(), 2);
        // The canonical representative of the coset through (0,3,0).
        assert_eq!(lat.base(), &mi(&[0, 0, 3]));
        // Same coset from the generators of its closed-form description,
        // based at a different point.
        let alt = AffineLattice::from_generators(
            mi(&[1, 1, 1]),
            &[mi(&[2, -1, -1]), mi(&[-1, 2, -1])],
        )
        .unwrap();
        assert_eq!(lat, alt);
    }

    #[test]
    fn one_dimensional_gcd() {
        let lat = affine_lattice(&set(&[&[0], &[2], &[5]]));
        assert_eq!(lat.base(), &mi(&[0]));
        assert_eq!(lat.basis(), &[mi(&[1])]);
    }

    #[test]
    fn membership() {
        let lat = affine_lattice(&corner_trio());
        assert!(contains(&lat, &mi(&[0, 0, 3])).unwrap());
        assert!(contains(&lat, lat.base()).unwrap());
        assert!(!contains(&lat, &mi(&[1, 0, 0])).unwrap());
        assert!(contains(&lat, &mi(&[2, 2, -1])).unwrap());
        for gamma in corner_trio().iter() {
            assert!(contains(&lat, gamma).unwrap());
        }
    }

    #[test]
    fn cone_triviality() {
        let lat = affine_lattice(&corner_trio());
        assert!(direction_cone_trivial(&lat));
        let ray = AffineLattice::from_generators(mi(&[0, 0]), &[mi(&[1, 1])]).unwrap();
        assert!(!direction_cone_trivial(&ray));
        let point = affine_lattice(&set(&[&[5, 7]]));
        assert!(direction_cone_trivial(&point));
    }

    #[test]
    fn orthant_enumeration_of_the_corner_trio() {
        let lat = affine_lattice(&corner_trio());
        let res = enumerate_orthant(&lat, None).unwrap();
        assert_eq!(res.tag, EnumerationTag::Finite);
        let expect = set(&[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1], &[0, 0, 3]]);
        assert_eq!(res.points, expect.points());
    }

    #[test]
    fn orthant_enumeration_infinite_ray() {
        let ray = AffineLattice::from_generators(mi(&[0, 0]), &[mi(&[1, 1])]).unwrap();
        let res = enumerate_orthant(&ray, Some(3)).unwrap();
        assert_eq!(res.tag, EnumerationTag::Infinite);
        let w = res.witness.unwrap();
        assert!(w.is_orthant() && !w.is_zero());
        assert_eq!(res.points.len(), 4); // (0,0) .. (3,3)
    }

    #[test]
    fn rank_zero_enumeration() {
        let inside = affine_lattice(&set(&[&[2, 5]]));
        let res = enumerate_orthant(&inside, None).unwrap();
        assert_eq!(res.tag, EnumerationTag::Finite);
        assert_eq!(res.points, vec![mi(&[2, 5])]);
        let outside = AffineLattice::from_generators(mi(&[-1, 4]), &[]).unwrap();
        let res = enumerate_orthant(&outside, None).unwrap();
        assert_eq!(res.tag, EnumerationTag::Finite);
        assert!(res.points.is_empty());
    }

    #[test]
    fn capped_enumeration_truncates() {
        let gamma = set(&[&[0], &[2], &[5]]);
        // The full intersection is all of N_0, so any cap samples it.
        let res = enumerate_orthant(&affine_lattice(&gamma), Some(4)).unwrap();
        assert_eq!(res.tag, EnumerationTag::Infinite);
        assert_eq!(res.points.len(), 5);
        // A finite intersection wider than the cap reports truncation.
        let lat = affine_lattice(&corner_trio());
        let res = enumerate_orthant(&lat, Some(2)).unwrap();
        assert_eq!(res.tag, EnumerationTag::Truncated);
        assert_eq!(res.points, vec![mi(&[1, 1, 1])]);
        let res = enumerate_orthant(&lat, Some(3)).unwrap();
        assert_eq!(res.tag, EnumerationTag::Finite);
    }

    #[test]
    fn skew_quad_enumeration() {
        // Four-point set in Z^4 whose orthant restriction gains one point.
        let n = 2i64;
        let gamma = set(&[
            &[n, 1, 0, 1],
            &[n + 1, 0, 1, 0],
            &[0, 0, n + 1, 0],
            &[0, 0, 0, n + 1],
        ]);
        let lat = affine_lattice(&gamma);
        assert_eq!(lat.rank(), 3);
        let res = enumerate_orthant(&lat, None).unwrap();
        assert_eq!(res.tag, EnumerationTag::Finite);
        let expect = set(&[
            &[2, 1, 0, 1],
            &[3, 0, 1, 0],
            &[0, 0, 3, 0],
            &[0, 0, 0, 3],
            &[0, 3, 1, 0],
        ]);
        assert_eq!(res.points, expect.points());
    }

    #[test]
    fn annihilator_of_arithmetic_progression() {
        let lat = AffineLattice::from_generators(mi(&[0]), &[mi(&[4])]).unwrap();
        let dec = annihilator(&lat);
        assert_eq!(dec.finite_part().len(), 1);
        assert_eq!(dec.finite_part()[0].order, BigInt::from(4));
        assert_eq!(dec.torus_rank(), 0);
    }

    #[test]
    fn annihilator_of_homogeneous_lattice() {
        // Directions of the zero-sum lattice in Z^3.
        let lat =
            AffineLattice::from_generators(mi(&[0, 0, 0]), &[mi(&[1, -1, 0]), mi(&[0, 1, -1])])
                .unwrap();
        let dec = annihilator(&lat);
        assert!(dec.finite_part().is_empty());
        assert_eq!(dec.torus_rank(), 1);
    }

    #[test]
    fn annihilator_of_full_lattice() {
        let lat = AffineLattice::from_generators(
            mi(&[0, 0]),
            &[mi(&[1, 0]), mi(&[0, 1])],
        )
        .unwrap();
        let dec = annihilator(&lat);
        assert!(dec.finite_part().is_empty());
        assert_eq!(dec.torus_rank(), 0);
    }
}
