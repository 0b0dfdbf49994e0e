//! Prime-exponent correspondence for Dirichlet polynomials.
//!
//! A positive rational factors uniquely over the primes, which identifies
//! the multiplicative structure of the positive rationals with the additive
//! lattice of finitely supported integer multi-indices.  Positive integers
//! land in the nonnegative orthant, so questions about projections of
//! Dirichlet polynomials reduce to the torus machinery of [`extensions`].
//!
//! [`extensions`]: crate::extensions

use crate::error::{Error, Result};
use crate::extensions::{is_contractive_projection_set, PExponent, Reason};
use crate::index::{FreqSet, MultiIndex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Growing cache of primes in increasing order, for trial division.
fn primes_up_to_index(count: usize) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![2, 3, 5, 7, 11, 13]));
    let mut primes = cache.lock().expect("prime cache");
    while primes.len() < count {
        let mut candidate = primes.last().expect("seeded") + 2;
        loop {
            if primes
                .iter()
                .take_while(|&&p| p * p <= candidate)
                .all(|&p| !candidate.is_multiple_of(p))
            {
                break;
            }
            candidate += 2;
        }
        primes.push(candidate);
    }
    primes[..count].to_vec()
}

fn factor_exponents(n: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::input("cannot factor zero"));
    }
    let mut exponents: Vec<i64> = Vec::new();
    let mut rest = n;
    let mut index = 0usize;
    while rest > 1 {
        let primes = primes_up_to_index(index + 1);
        let p = primes[index];
        let mut e = 0i64;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        exponents.push(e);
        index += 1;
        if p * p > rest && rest > 1 {
            // The remainder is prime; find its index by extending the cache.
            let mut i = index;
            loop {
                let primes = primes_up_to_index(i + 1);
                if primes[i] == rest {
                    exponents.resize(i, 0);
                    exponents.push(1);
                    rest = 1;
                    break;
                }
                i += 1;
            }
        }
    }
    Ok(exponents)
}

/// Multi-index of prime exponents of a positive rational; integers lift into
/// the nonnegative orthant, general rationals may have negative entries.
pub fn bohr_lift(q: &BigRational) -> Result<MultiIndex> {
    if !q.is_positive() {
        return Err(Error::input("the lift needs a positive rational"));
    }
    let numer = q
        .numer()
        .to_u64()
        .ok_or_else(|| Error::input("numerator out of range"))?;
    let denom = q
        .denom()
        .to_u64()
        .ok_or_else(|| Error::input("denominator out of range"))?;
    let up = factor_exponents(numer)?;
    let down = factor_exponents(denom)?;
    let dim = up.len().max(down.len()).max(1);
    let mut entries = vec![0i64; dim];
    for (i, e) in up.into_iter().enumerate() {
        entries[i] += e;
    }
    for (i, e) in down.into_iter().enumerate() {
        entries[i] -= e;
    }
    MultiIndex::new(entries)
}

/// Lift of a positive integer.
pub fn bohr_lift_integer(n: u64) -> Result<MultiIndex> {
    bohr_lift(&BigRational::from(BigInt::from(
        i64::try_from(n).map_err(|_| Error::input("integer out of range"))?,
    )))
}

/// Inverse of the lift: the product of primes to the given exponents.
pub fn bohr_unlift(index: &MultiIndex) -> Result<BigRational> {
    let primes = primes_up_to_index(index.dim());
    let mut value = BigRational::one();
    for (&p, &e) in primes.iter().zip(index.entries()) {
        let base = BigRational::from(BigInt::from(p));
        match e.cmp(&0) {
            std::cmp::Ordering::Greater => {
                for _ in 0..e {
                    value *= &base;
                }
            }
            std::cmp::Ordering::Less => {
                for _ in 0..(-e) {
                    value /= &base;
                }
            }
            std::cmp::Ordering::Equal => {}
        }
    }
    Ok(value)
}

/// Number of prime factors counted with multiplicity: the entry sum of the
/// lift.
pub fn omega(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::input("omega needs a positive integer"));
    }
    Ok(factor_exponents(n)?.iter().sum::<i64>() as u32)
}

/// A Dirichlet polynomial: finitely many exact rational coefficients
/// indexed by positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirichletPoly {
    terms: BTreeMap<u64, BigRational>,
}

impl DirichletPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, BigRational)>) -> Result<Self> {
        let mut out = DirichletPoly::new();
        for (n, c) in terms {
            if n == 0 {
                return Err(Error::input("Dirichlet terms are indexed from 1"));
            }
            if !c.is_zero() {
                out.terms.insert(n, c);
            }
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: u64) -> BigRational {
        self.terms.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Keep the terms whose index has exactly `m` prime factors with
/// multiplicity.
///
/// This is the coefficient of `w^m` after weighting each term by
/// `w^{Omega(n)}`, which is how the projection integral evaluates.
pub fn omega_projection(f: &DirichletPoly, m: u32) -> Result<DirichletPoly> {
    let mut out = DirichletPoly::new();
    for (&n, c) in f.terms() {
        if omega(n)? == m {
            out.terms.insert(n, c.clone());
        }
    }
    Ok(out)
}

/// Verdict for a set of positive integers, with evidence mapped back from
/// the lifted lattice to an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletVerdict {
    pub contractive: bool,
    pub reason: Reason,
    pub evidence: Option<u64>,
}

/// Decide whether projecting Dirichlet polynomials onto the terms indexed by
/// `gamma` is contractive at exponent `p`.
///
/// The set is lifted through prime exponents, padded to the common
/// dimension, and judged by the torus criterion; evidence points return
/// through the inverse lift.
pub fn classify_dirichlet_set(gamma: &[u64], p: &PExponent) -> Result<DirichletVerdict> {
    if gamma.is_empty() {
        return Err(Error::input("the set of integers must be nonempty"));
    }
    let lifts = gamma
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::input("the set must contain positive integers"));
            }
            factor_exponents(n)
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = lifts.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let points = lifts
        .into_iter()
        .map(|mut e| {
            e.resize(dim, 0);
            MultiIndex::new(e)
        })
        .collect::<Result<Vec<_>>>()?;
    let set = FreqSet::new_orthant(points)?;
    let verdict = is_contractive_projection_set(&set, p)?;
    let evidence = match &verdict.evidence {
        Some(idx) => Some(
            bohr_unlift(idx)?
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::input("evidence does not fit in 64 bits"))?,
        ),
        None => None,
    };
    Ok(DirichletVerdict {
        contractive: verdict.contractive,
        reason: verdict.reason,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(bohr_lift_integer(12).unwrap(), mi(&[2, 1]));
        assert_eq!(bohr_lift_integer(1).unwrap(), mi(&[0]));
        let q = BigRational::new(BigInt::from(10), BigInt::from(3));
        assert_eq!(bohr_lift(&q).unwrap(), mi(&[1, -1, 1]));
        assert!(bohr_lift(&rat(-2)).is_err());
    }

    #[test]
    fn lift_roundtrip_and_multiplicativity() {
        for n in 1..=400u64 {
            let lifted = bohr_lift_integer(n).unwrap();
            assert_eq!(bohr_unlift(&lifted).unwrap(), rat(n as i64));
        }
        for (a, b) in [(6u64, 35u64), (8, 27), (30, 30), (97, 2)] {
            let ab = bohr_lift_integer(a * b).unwrap();
            let la = bohr_lift_integer(a).unwrap();
            let lb = bohr_lift_integer(b).unwrap();
            let dim = la.dim().max(lb.dim());
            let pad = |m: &MultiIndex| {
                let mut e = m.entries().to_vec();
                e.resize(dim, 0);
                MultiIndex::new(e).unwrap()
            };
            assert_eq!(pad(&ab), pad(&la).add(&pad(&lb)).unwrap());
        }
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(12).unwrap(), 3);
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(1024).unwrap(), 10);
        assert_eq!(omega(97).unwrap(), 1);
    }

    #[test]
    fn omega_projection_filters() {
        let f = DirichletPoly::from_terms([(1, rat(1)), (2, rat(2)), (6, rat(3))]).unwrap();
        let p1 = omega_projection(&f, 1).unwrap();
        assert_eq!(p1.len(), 1);
        assert_eq!(p1.coeff(2), rat(2));
        let p0 = omega_projection(&f, 0).unwrap();
        assert_eq!(p0.coeff(1), rat(1));
        assert_eq!(p0.len(), 1);
        assert!(omega_projection(&f, 5).unwrap().is_empty());
    }

    #[test]
    fn classify_cube_set() {
        // Lifts to the corner trio in three variables.
        let gamma = [8u64, 27, 30];
        let p4 = classify_dirichlet_set(&gamma, &PExponent::Even(2)).unwrap();
        assert!(p4.contractive);
        let p6 = classify_dirichlet_set(&gamma, &PExponent::Even(3)).unwrap();
        assert!(!p6.contractive);
        assert_eq!(p6.evidence, Some(125));
        let single = classify_dirichlet_set(&[42], &PExponent::Infinity).unwrap();
        assert!(single.contractive);
    }
}
