//! Exact sparse Laurent polynomials and the duality oracle built on them.
//!
//! Coefficients are rationals and arithmetic is exact, so norm comparisons
//! made here are proofs, not estimates.  For an even exponent `p = 2(n+1)`
//! the relevant integrals collapse to single coefficients of `f^{n+1}
//! conj(f)^n`, which is what powers the support oracle and the witness
//! search.

use crate::error::{Error, Result};
use crate::index::{FreqSet, MultiIndex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// Default cap on the number of terms any product may hold.
const DEFAULT_TERM_GUARD: usize = 5_000_000;

/// Term guard, overridable through the `CONETRACT_BUDGET_TERMS` environment
/// variable.
pub fn term_guard() -> usize {
    static GUARD: OnceLock<usize> = OnceLock::new();
    *GUARD.get_or_init(|| {
        std::env::var("CONETRACT_BUDGET_TERMS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_TERM_GUARD)
    })
}

/// A sparse Laurent polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored; terms iterate in lexicographic index
/// order, so serialized output is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(index: MultiIndex, coeff: BigRational) -> Self {
        let mut p = LaurentPoly::zero(index.dim());
        p.insert(index, coeff);
        p
    }

    pub fn one(dim: usize) -> Result<Self> {
        Ok(Self::monomial(MultiIndex::zero(dim)?, BigRational::one()))
    }

    /// Sum of `z^gamma` over the set.
    pub fn indicator(set: &FreqSet) -> Self {
        let mut p = LaurentPoly::zero(set.dim());
        for gamma in set.iter() {
            p.insert(gamma.clone(), BigRational::one());
        }
        p
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, BigRational)>,
    ) -> Result<Self> {
        let mut p = LaurentPoly::zero(dim);
        for (idx, c) in terms {
            if idx.dim() != dim {
                return Err(Error::input("term index dimension mismatch"));
            }
            p.add_term(idx, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> BigRational {
        self.terms.get(index).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    pub(crate) fn insert(&mut self, index: MultiIndex, coeff: BigRational) {
        if !coeff.is_zero() {
            self.terms.insert(index, coeff);
        }
    }

    fn add_term(&mut self, index: MultiIndex, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.dim != other.dim {
            return Err(Error::input("polynomial dimensions must agree"));
        }
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(idx, v)| (idx.clone(), v * c))
                .collect(),
        }
    }

    /// Exact product; guarded against pathological term growth.
    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.dim != other.dim {
            return Err(Error::input("polynomial dimensions must agree"));
        }
        let guard = term_guard();
        if self.len().saturating_mul(other.len()) > 4 * guard {
            return Err(Error::resource("polynomial product too large"));
        }
        let mut out = LaurentPoly::zero(self.dim);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.add(b)?, ca * cb);
                if out.len() > guard {
                    return Err(Error::resource("polynomial product exceeded term guard"));
                }
            }
        }
        Ok(out)
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, k: u32) -> Result<LaurentPoly> {
        let mut result = LaurentPoly::one(self.dim)?;
        if k == 0 {
            return Ok(result);
        }
        let mut square = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = result.mul(&square)?;
            }
            k >>= 1;
            if k == 0 {
                return Ok(result);
            }
            square = square.mul(&square)?;
        }
    }

    /// The conjugate polynomial: indices negated, coefficients unchanged
    /// because they are real rationals.
    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| (idx.neg(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} z^{idx}")?;
        }
        Ok(())
    }
}

/// `||f||_{2k}^{2k}`, exactly: the sum of the squared coefficients of `f^k`.
pub fn even_norm(f: &LaurentPoly, k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::input("even norm needs k >= 1"));
    }
    let fk = f.pow(k)?;
    let mut total = BigRational::zero();
    for (_, c) in fk.terms() {
        total += c * c;
    }
    Ok(total)
}

/// The pairing `integral of |f|^{p-2} f conj(z^lam)` at `p = 2(n+1)`:
/// the coefficient of `z^lam` in `f^{n+1} conj(f)^n`, exact.
pub fn shapiro_pairing(f: &LaurentPoly, n: u32, lam: &MultiIndex) -> Result<BigRational> {
    if lam.dim() != f.dim() {
        return Err(Error::input("pairing frequency dimension mismatch"));
    }
    let product = f.pow(n + 1)?.mul(&f.conj().pow(n)?)?;
    Ok(product.coeff(lam))
}

/// Support of `f^{n+1} conj(f)^n` in the nonnegative orthant for the
/// all-ones indicator `f` of `gamma`.
///
/// All coefficients of the product are strictly positive, so no cancellation
/// occurs and the support equals the n-extension of `gamma`.
pub fn extension_support_oracle(gamma: &FreqSet, n: u32) -> Result<FreqSet> {
    let f = LaurentPoly::indicator(gamma);
    let product = f.pow(n + 1)?.mul(&f.conj().pow(n)?)?;
    let points: Vec<MultiIndex> = product
        .support()
        .into_iter()
        .filter(MultiIndex::is_orthant)
        .collect();
    FreqSet::new(points)
}

/// Geometric search grid for the exact witness scan.
#[derive(Debug, Clone, Copy)]
pub struct WitnessGrid {
    /// Depth of the `eps` grid `1, 1/2, 1/4, ...`.
    pub eps_levels: u32,
    /// Depth of the `c` grid `eps^n, eps^n/2, ...` at each `eps`.
    pub c_levels: u32,
}

impl Default for WitnessGrid {
    fn default() -> Self {
        WitnessGrid {
            eps_levels: 12,
            c_levels: 40,
        }
    }
}

/// An exact certificate that a projection is not a contraction at an even
/// exponent: adding `c z^lam` to `f` strictly lowers the norm, so projecting
/// `h = f + c z^lam` back to `f` strictly raises it.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub f: LaurentPoly,
    pub lam: MultiIndex,
    pub c: BigRational,
    /// Half the even exponent: the report concerns `p = 2(n+1)`.
    pub half_p: u32,
    /// `||h||_p^p` with `h = f + c z^lam`, exact.
    pub norm_h: BigRational,
    /// `||P h||_p^p = ||f||_p^p`, exact.
    pub norm_pf: BigRational,
    /// `norm_pf / norm_h`; greater than one certifies non-contractivity.
    pub ratio_p: BigRational,
}

/// Search the test family `f_eps = z^{gamma_0} + eps sum z^gamma` for an
/// exact norm-decreasing perturbation in the direction `z^lam`.
///
/// Requires `lam` to be a point of the n-extension of `gamma` outside
/// `gamma`; the scan then terminates quickly because the pairing dominates
/// the quadratic term for small `c`.
pub fn witness_search_even(
    gamma: &FreqSet,
    n: u32,
    lam: &MultiIndex,
    grid: &WitnessGrid,
) -> Result<Option<WitnessReport>> {
    if n == 0 {
        return Err(Error::input("witness search needs n >= 1"));
    }
    if gamma.contains(lam) {
        return Err(Error::input(
            "witness frequency must lie outside the projection set",
        ));
    }
    let extension = crate::extensions::extend(gamma, n)?;
    if !extension.contains(lam) {
        return Err(Error::input(
            "witness frequency must lie in the n-extension of the set",
        ));
    }
    let base = gamma.min_point().clone();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut eps = BigRational::one();
    for _ in 0..grid.eps_levels {
        let mut f = LaurentPoly::monomial(base.clone(), BigRational::one());
        for gammapt in gamma.iter().filter(|g| *g != &base) {
            f.insert(gammapt.clone(), eps.clone());
        }
        let pairing = shapiro_pairing(&f, n, lam)?;
        if !pairing.is_zero() {
            let norm_f = even_norm(&f, n + 1)?;
            // First-order decrease requires sign(c) opposite to the pairing.
            let mut magnitude = pow_rational(&eps, n);
            for _ in 0..grid.c_levels {
                let c = if pairing.is_positive() {
                    -magnitude.clone()
                } else {
                    magnitude.clone()
                };
                let h = f.add(&LaurentPoly::monomial(lam.clone(), c.clone()))?;
                let norm_h = even_norm(&h, n + 1)?;
                if norm_h < norm_f {
                    let ratio_p = &norm_f / &norm_h;
                    return Ok(Some(WitnessReport {
                        f,
                        lam: lam.clone(),
                        c,
                        half_p: n + 1,
                        norm_h,
                        norm_pf: norm_f,
                        ratio_p,
                    }));
                }
                magnitude *= &half;
            }
        }
        eps *= &half;
    }
    Ok(None)
}

fn pow_rational(x: &BigRational, k: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= x;
    }
    out
}
