//! The annihilator of a sublattice and the averaging projection it carries.
//!
//! For a subgroup `L` of `Z^d`, the annihilator is the closed subgroup of the
//! torus pairing trivially with `L`: a product of finite groups of roots of
//! unity and a subtorus.  Averaging a polynomial over it keeps exactly the
//! monomials with frequencies in `L`; translating the characters keeps the
//! monomials in a coset of `L`.

use super::snf::smith_with_row_transform;
use super::AffineLattice;
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::polyoracle::LaurentPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A finite cyclic factor of the dual of `Z^d / L`: the group of `order`-th
/// roots of unity paired with monomials through `row`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFactor {
    pub order: BigInt,
    pub row: Vec<BigInt>,
}

/// Smith-normal-form description of the dual of `Z^d / L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorDecomposition {
    dim: usize,
    finite: Vec<CyclicFactor>,
    free_rows: Vec<Vec<BigInt>>,
}

impl AnnihilatorDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The finite cyclic factors, trivial ones dropped.
    pub fn finite_part(&self) -> &[CyclicFactor] {
        &self.finite
    }

    /// Number of free factors: the dimension of the subtorus.
    pub fn torus_rank(&self) -> usize {
        self.free_rows.len()
    }

    /// Character rows of the free factors.
    pub fn free_rows(&self) -> &[Vec<BigInt>] {
        &self.free_rows
    }

    /// Whether a frequency pairs trivially with the whole annihilator,
    /// i.e. lies in the sublattice.
    fn keeps(&self, shifted: &[BigInt]) -> bool {
        for factor in &self.finite {
            let mut pairing = BigInt::zero();
            for (c, e) in factor.row.iter().zip(shifted) {
                pairing += c * e;
            }
            // Mean of the order-th roots of unity at this exponent: one when
            // the exponent is divisible by the order, zero otherwise.
            if !(pairing % &factor.order).is_zero() {
                return false;
            }
        }
        for row in &self.free_rows {
            let mut pairing = BigInt::zero();
            for (c, e) in row.iter().zip(shifted) {
                pairing += c * e;
            }
            if !pairing.is_zero() {
                return false;
            }
        }
        true
    }
}

/// Decompose the dual of `Z^d / L` for the direction lattice of `lat`
/// (the base point is ignored).
pub fn annihilator(lat: &AffineLattice) -> AnnihilatorDecomposition {
    let dim = lat.dim();
    if lat.rank() == 0 {
        // Trivial lattice: the annihilator is the whole torus.
        let free_rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        return AnnihilatorDecomposition {
            dim,
            finite: Vec::new(),
            free_rows,
        };
    }
    // Row-major matrix whose columns are the basis vectors.
    let basis = lat.basis_bigint();
    let matrix: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| basis.iter().map(|col| col[i].clone()).collect())
        .collect();
    let (p, diag) = smith_with_row_transform(&matrix);
    let mut finite = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            finite.push(CyclicFactor {
                order: d.clone(),
                row: p[i].clone(),
            });
        }
    }
    let free_rows = p[diag.len()..].to_vec();
    AnnihilatorDecomposition {
        dim,
        finite,
        free_rows,
    }
}

/// Average `f` over the annihilator, with characters translated so the
/// surviving frequencies are exactly `translate + L`.
///
/// Each finite factor contributes an exact rational character sum per
/// monomial; each free factor selects the monomials with zero pairing.
/// The result therefore equals coefficient filtering by the coset.
pub fn annihilator_average(
    dec: &AnnihilatorDecomposition,
    translate: &MultiIndex,
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    if translate.dim() != dec.dim() || f.dim() != dec.dim() {
        return Err(Error::input(
            "annihilator, translate and polynomial dimensions must agree",
        ));
    }
    let mut kept = LaurentPoly::zero(f.dim());
    for (alpha, coeff) in f.terms() {
        let shifted: Vec<BigInt> = alpha
            .entries()
            .iter()
            .zip(translate.entries())
            .map(|(&a, &t)| BigInt::from(a) - BigInt::from(t))
            .collect();
        if dec.keeps(&shifted) {
            kept.insert(alpha.clone(), coeff.clone());
        }
    }
    Ok(kept)
}
