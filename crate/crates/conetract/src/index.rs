//! Frequency indices and finite frequency sets.
//!
//! A [`MultiIndex`] is a point of the integer lattice in a fixed ambient
//! dimension; a [`FreqSet`] is a finite, canonically ordered set of such
//! points.  Both are plain immutable values and every operation on them is
//! overflow checked: entries are 64-bit but intermediate sums run through
//! 128-bit arithmetic and fail loudly instead of wrapping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of the integer lattice `Z^d`, `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("multi-index must have at least one entry"));
        }
        Ok(MultiIndex(entries))
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All entries nonnegative: the point lies in the narrow cone `N_0^d`.
    pub fn is_orthant(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// All entries at least one.
    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&e| e >= 1)
    }

    fn check_dim(&self, other: &MultiIndex) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::input(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        let entries = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| narrow(a as i128 + b as i128))
            .collect::<Result<_>>()?;
        Ok(MultiIndex(entries))
    }

    pub fn sub(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        let entries = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| narrow(a as i128 - b as i128))
            .collect::<Result<_>>()?;
        Ok(MultiIndex(entries))
    }

    pub fn neg(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Result<MultiIndex> {
        let entries = self
            .0
            .iter()
            .map(|&a| narrow(a as i128 * k as i128))
            .collect::<Result<_>>()?;
        Ok(MultiIndex(entries))
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::input("multi-index arithmetic overflowed 64 bits"))
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of frequencies in a fixed ambient dimension.
///
/// Points are kept sorted lexicographically and duplicate free, so two
/// `FreqSet` values describing the same set compare equal field-wise.
/// The set is never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreqSet {
    dim: usize,
    points: Vec<MultiIndex>,
}

impl FreqSet {
    pub fn new(points: Vec<MultiIndex>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::input("frequency set must be nonempty"));
        };
        let dim = first.dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::input("frequency set mixes ambient dimensions"));
        }
        let mut points = points;
        points.sort();
        points.dedup();
        Ok(FreqSet { dim, points })
    }

    /// Like [`FreqSet::new`] but additionally requires every point to lie in
    /// the narrow cone `N_0^d`.
    pub fn new_orthant(points: Vec<MultiIndex>) -> Result<Self> {
        let set = Self::new(points)?;
        if !set.is_orthant() {
            return Err(Error::input(
                "frequency set has a point with a negative entry",
            ));
        }
        Ok(set)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| MultiIndex::new(r.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[MultiIndex] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.points.iter()
    }

    pub fn contains(&self, p: &MultiIndex) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_orthant(&self) -> bool {
        self.points.iter().all(MultiIndex::is_orthant)
    }

    /// Lexicographically smallest point.
    pub fn min_point(&self) -> &MultiIndex {
        &self.points[0]
    }

    /// Largest entry appearing in any point, coordinate-wise maximum.
    pub fn coordinate_max(&self) -> Vec<i64> {
        let mut out = vec![i64::MIN; self.dim];
        for p in &self.points {
            for (o, &e) in out.iter_mut().zip(p.entries()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.points.iter().map(|p| p.entries().to_vec()).collect()
    }
}

impl fmt::Display for FreqSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn freq_set_sorts_and_dedups() {
        let s = FreqSet::new(vec![mi(&[3, 0]), mi(&[0, 3]), mi(&[3, 0])]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.min_point(), &mi(&[0, 3]));
    }

    #[test]
    fn freq_set_rejects_empty_and_mixed_dims() {
        assert!(FreqSet::new(vec![]).is_err());
        assert!(FreqSet::new(vec![mi(&[1]), mi(&[1, 2])]).is_err());
        assert!(FreqSet::new_orthant(vec![mi(&[1, -1])]).is_err());
    }

    #[test]
    fn arithmetic_checks_overflow() {
        let big = mi(&[i64::MAX]);
        assert!(big.add(&mi(&[1])).is_err());
        assert!(big.scale(2).is_err());
        assert_eq!(mi(&[2, -1]).add(&mi(&[1, 1])).unwrap(), mi(&[3, 0]));
    }
}
