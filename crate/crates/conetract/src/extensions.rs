//! The n-extension calculus and the contractivity decision procedures.
//!
//! A point is in the n-extension of a set when it is a sum of n+1 elements
//! minus a sum of n elements, restricted to the nonnegative orthant.
//! Extensions are computed through layered distinct sumsets, so the cost is
//! governed by how many distinct sums exist rather than by the number of
//! multisets.  Completions iterate extensions and certify full-coset results
//! through a pair with strictly positive difference.

use crate::error::{Error, Result};
use crate::index::{FreqSet, MultiIndex};
use crate::lattice::{
    self, affine_lattice, enumerate_orthant, nonneg_direction, EnumerationTag,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

/// Guard on the number of pair subtractions a single extension may perform.
const PAIR_GUARD: usize = 60_000_000;
/// Guard on the size of any sumset layer.
const LAYER_GUARD: usize = 2_000_000;

/// The exponent of a Hardy space, kept in a form that distinguishes the even
/// integers (where the geometric criterion applies) from everything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PExponent {
    /// `p = 2k` for an integer `k >= 1`.
    Even(u32),
    /// A rational `p >= 1` that is not an even integer.
    Real(BigRational),
    Infinity,
}

impl PExponent {
    pub fn even(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("even exponent needs k >= 1"));
        }
        Ok(PExponent::Even(k))
    }

    /// Normalize a rational exponent: even integers become `Even`, anything
    /// else at least one becomes `Real`.
    pub fn from_rational(p: BigRational) -> Result<Self> {
        if p < BigRational::from(BigInt::from(1)) {
            return Err(Error::input("exponent must be at least 1"));
        }
        if p.is_integer() {
            let n = p.to_integer();
            if (&n % BigInt::from(2)).is_zero() {
                let k = (n / BigInt::from(2))
                    .to_u32()
                    .ok_or_else(|| Error::input("exponent too large"))?;
                return PExponent::even(k);
            }
        }
        Ok(PExponent::Real(p))
    }

    /// Parse `"2"`, `"9/2"`, `"inf"`; decimal notation is rejected as
    /// ambiguous.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(PExponent::Infinity);
        }
        if s.contains('.') {
            return Err(Error::input(format!(
                "decimal exponent {s:?} is ambiguous; use a fraction like 9/2"
            )));
        }
        let p = BigRational::from_str(s)
            .map_err(|_| Error::input(format!("cannot parse exponent {s:?}")))?;
        Self::from_rational(p)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            PExponent::Even(k) => 2.0 * *k as f64,
            PExponent::Real(p) => p.to_f64().unwrap_or(f64::NAN),
            PExponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_even_integer(&self) -> bool {
        matches!(self, PExponent::Even(_))
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Even(k) => write!(f, "{}", 2 * k),
            PExponent::Real(p) => write!(f, "{p}"),
            PExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for PExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PExponent::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Distinct k-fold sumsets of `points` for `k = 0..=depth`.
///
/// `clip` bounds every coordinate of every retained sum; for orthant point
/// sets partial sums are monotone, so clipping intermediate layers at the
/// final bound loses nothing.
fn sum_layers(
    points: &[MultiIndex],
    depth: u32,
    dim: usize,
    clip: Option<&[i64]>,
) -> Result<Vec<HashSet<MultiIndex>>> {
    let mut ignored = false;
    sum_layers_flagged(points, depth, dim, clip, &mut ignored)
}

fn sum_layers_flagged(
    points: &[MultiIndex],
    depth: u32,
    dim: usize,
    clip: Option<&[i64]>,
    clipped: &mut bool,
) -> Result<Vec<HashSet<MultiIndex>>> {
    let mut layers: Vec<HashSet<MultiIndex>> = Vec::with_capacity(depth as usize + 1);
    let mut base = HashSet::new();
    base.insert(MultiIndex::zero(dim)?);
    layers.push(base);
    for _ in 0..depth {
        let previous = layers.last().expect("nonempty");
        let mut next = HashSet::with_capacity(previous.len() * 2);
        for s in previous {
            for p in points {
                let sum = s.add(p)?;
                if let Some(clip) = clip {
                    if sum.entries().iter().zip(clip).any(|(&e, &c)| e > c) {
                        *clipped = true;
                        continue;
                    }
                }
                next.insert(sum);
                if next.len() > LAYER_GUARD {
                    return Err(Error::resource("sumset layer exceeded size guard"));
                }
            }
        }
        layers.push(next);
    }
    Ok(layers)
}

fn extend_inner(
    gamma: &[MultiIndex],
    n: u32,
    dim: usize,
    clip: Option<&[i64]>,
    clipped: &mut bool,
    pair_guard: usize,
) -> Result<Vec<MultiIndex>> {
    // Positive layers may be clipped at clip + n * (coordinate max), since a
    // nonnegative result below the clip uses a subtracted part of at most
    // n * max per coordinate.  Dropping a larger partial sum can only lose
    // results that exceed the clip themselves, which sets the flag anyway.
    let plus_clip: Option<Vec<i64>> = match clip {
        Some(clip) => {
            let mut coord_max = vec![0i64; dim];
            for p in gamma {
                for (m, &e) in coord_max.iter_mut().zip(p.entries()) {
                    *m = (*m).max(e);
                }
            }
            Some(
                clip.iter()
                    .zip(&coord_max)
                    .map(|(&c, &m)| c.saturating_add((n as i64).saturating_mul(m)))
                    .collect(),
            )
        }
        None => None,
    };
    let mut plus_clipped = false;
    let plus = sum_layers_flagged(gamma, n + 1, dim, plus_clip.as_deref(), &mut plus_clipped)?;
    let minus = sum_layers(gamma, n, dim, None)?;
    if plus_clipped {
        *clipped = true;
    }
    let a = &plus[(n + 1) as usize];
    let b = &minus[n as usize];
    if a.len().saturating_mul(b.len()) > pair_guard {
        return Err(Error::resource("extension pair scan exceeded guard"));
    }
    let mut out = HashSet::new();
    for bb in b {
        for aa in a {
            let lam = aa.sub(bb)?;
            if !lam.is_orthant() {
                continue;
            }
            if let Some(clip) = clip {
                if lam.entries().iter().zip(clip).any(|(&e, &c)| e > c) {
                    *clipped = true;
                    continue;
                }
            }
            out.insert(lam);
        }
    }
    Ok(out.into_iter().collect())
}

/// A membership certificate for the n-extension: multisets of set elements
/// whose signed sum is the target point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCertificate {
    pub lam: MultiIndex,
    /// `n + 1` points, with repetition, summed positively.
    pub plus: Vec<MultiIndex>,
    /// `n` points, with repetition, summed negatively.
    pub minus: Vec<MultiIndex>,
}

impl ExtensionCertificate {
    /// Re-verify the defining identity `sum(plus) - sum(minus) = lam`.
    pub fn verify(&self) -> Result<bool> {
        let mut total = MultiIndex::zero(self.lam.dim())?;
        for p in &self.plus {
            total = total.add(p)?;
        }
        for m in &self.minus {
            total = total.sub(m)?;
        }
        Ok(total == self.lam && self.lam.is_orthant() && self.plus.len() == self.minus.len() + 1)
    }
}

/// Exhibit multisets witnessing `lam` as an n-extension point of `gamma`,
/// the first in canonical order; `None` when `lam` is not in the extension.
pub fn extension_certificate(
    gamma: &FreqSet,
    n: u32,
    lam: &MultiIndex,
) -> Result<Option<ExtensionCertificate>> {
    if !gamma.is_orthant() || !lam.is_orthant() {
        return Err(Error::input("certificates live in the nonnegative orthant"));
    }
    if lam.dim() != gamma.dim() {
        return Err(Error::input("certificate dimension mismatch"));
    }
    let points = gamma.points();
    // Canonical-order search: nondecreasing positive multiset, then a
    // matching negative multiset for the residual.
    fn pick(
        points: &[MultiIndex],
        start: usize,
        slots: u32,
        acc: &MultiIndex,
        residual_for: &mut dyn FnMut(&MultiIndex) -> Result<Option<Vec<MultiIndex>>>,
        chosen: &mut Vec<MultiIndex>,
    ) -> Result<Option<(Vec<MultiIndex>, Vec<MultiIndex>)>> {
        if slots == 0 {
            return Ok(residual_for(acc)?.map(|minus| (chosen.clone(), minus)));
        }
        for (i, p) in points.iter().enumerate().skip(start) {
            let next = acc.add(p)?;
            chosen.push(p.clone());
            if let Some(found) = pick(points, i, slots - 1, &next, residual_for, chosen)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }
    fn match_minus(
        points: &[MultiIndex],
        start: usize,
        slots: u32,
        target: &MultiIndex,
        chosen: &mut Vec<MultiIndex>,
    ) -> Result<Option<Vec<MultiIndex>>> {
        if slots == 0 {
            return Ok(if target.is_zero() {
                Some(chosen.clone())
            } else {
                None
            });
        }
        for (i, p) in points.iter().enumerate().skip(start) {
            let rest = target.sub(p)?;
            chosen.push(p.clone());
            if let Some(found) = match_minus(points, i, slots - 1, &rest, chosen)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }
    let zero = MultiIndex::zero(gamma.dim())?;
    let mut residual_for = |acc: &MultiIndex| -> Result<Option<Vec<MultiIndex>>> {
        let target = acc.sub(lam)?;
        match_minus(points, 0, n, &target, &mut Vec::new())
    };
    let found = pick(points, 0, n + 1, &zero, &mut residual_for, &mut Vec::new())?;
    Ok(found.map(|(plus, minus)| ExtensionCertificate {
        lam: lam.clone(),
        plus,
        minus,
    }))
}

/// The n-extension of an orthant frequency set: all sums of `n + 1` elements
/// minus `n` elements that stay in the nonnegative orthant.
pub fn extend(gamma: &FreqSet, n: u32) -> Result<FreqSet> {
    if !gamma.is_orthant() {
        return Err(Error::input("extension needs an orthant frequency set"));
    }
    let mut clipped = false;
    let points = extend_inner(gamma.points(), n, gamma.dim(), None, &mut clipped, PAIR_GUARD)?;
    FreqSet::new(points)
}

/// Minimal `n` such that `lam` is a sum of `n + 1` elements minus `n`
/// elements of `gamma`, without any orthant restriction; `None` when `lam`
/// is not on the coset generated by `gamma`.
pub fn distance(gamma: &FreqSet, lam: &MultiIndex) -> Result<Option<u32>> {
    if lam.dim() != gamma.dim() {
        return Err(Error::input("distance frequency dimension mismatch"));
    }
    let lat = affine_lattice(gamma);
    if !lattice::contains(&lat, lam)? {
        return Ok(None);
    }
    // Iterative deepening; termination is guaranteed because membership in
    // the coset provides some finite representation.
    let mut plus = sum_layers(gamma.points(), 1, gamma.dim(), None)?;
    let mut minus = sum_layers(gamma.points(), 0, gamma.dim(), None)?;
    for n in 0u32.. {
        while plus.len() <= (n + 1) as usize {
            grow_layers(&mut plus, gamma.points())?;
        }
        while minus.len() <= n as usize {
            grow_layers(&mut minus, gamma.points())?;
        }
        let a = &plus[(n + 1) as usize];
        for b in &minus[n as usize] {
            if a.contains(&lam.add(b)?) {
                return Ok(Some(n));
            }
        }
    }
    unreachable!()
}

fn grow_layers(layers: &mut Vec<HashSet<MultiIndex>>, points: &[MultiIndex]) -> Result<()> {
    let previous = layers.last().expect("nonempty");
    let mut next = HashSet::with_capacity(previous.len() * 2);
    for s in previous {
        for p in points {
            next.insert(s.add(p)?);
            if next.len() > LAYER_GUARD {
                return Err(Error::resource("sumset layer exceeded size guard"));
            }
        }
    }
    layers.push(next);
    Ok(())
}

/// Budget for completion runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_rounds: u32,
    pub max_coord: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_rounds: 16,
            max_coord: 128,
        }
    }
}

impl Budget {
    fn validate(&self) -> Result<()> {
        if self.max_rounds == 0 || self.max_coord <= 0 {
            return Err(Error::input("budget values must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureTag {
    /// The extension fixed the set: the completion is computed in full.
    FixedPoint,
    /// A pair with strictly positive difference certifies that the
    /// completion is the full coset restriction.
    FullCoset,
    /// The budget ran out before a verdict; `set` is a correct lower bound.
    Exhausted,
}

/// Outcome of an n-completion run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub tag: ClosureTag,
    pub set: FreqSet,
    pub pair: Option<(MultiIndex, MultiIndex)>,
    pub rounds: u32,
}

/// First pair `(alpha, beta)` in canonical order with `beta - alpha`
/// strictly positive in every coordinate.
fn positive_pair(points: &[MultiIndex]) -> Option<(MultiIndex, MultiIndex)> {
    for beta in points {
        for alpha in points {
            if alpha != beta
                && beta
                    .entries()
                    .iter()
                    .zip(alpha.entries())
                    .all(|(&b, &a)| b - a >= 1)
            {
                return Some((alpha.clone(), beta.clone()));
            }
        }
    }
    None
}

/// Iterate n-extensions of `tee` until a fixed point, a full-coset
/// certificate, or budget exhaustion.
///
/// After every round the current set is scanned for a pair whose difference
/// is strictly positive in every coordinate; such a pair proves that the
/// completion is the whole coset restriction.  When the direction cone is
/// trivial the coset restriction is finite and rounds only need to test the
/// finitely many candidate points.  A budget overrun never produces a wrong
/// verdict, only the `Exhausted` tag.
pub fn complete(tee: &FreqSet, n: u32, budget: &Budget) -> Result<ClosureResult> {
    if n == 0 {
        return Err(Error::input("completion needs n >= 1"));
    }
    budget.validate()?;
    if !tee.is_orthant() {
        return Err(Error::input("completion needs an orthant frequency set"));
    }
    if let Some(pair) = positive_pair(tee.points()) {
        return Ok(ClosureResult {
            tag: ClosureTag::FullCoset,
            set: tee.clone(),
            pair: Some(pair),
            rounds: 0,
        });
    }
    let lat = affine_lattice(tee);
    let cone_trivial = nonneg_direction(&lat).is_none();
    if cone_trivial {
        return complete_candidates(tee, n, budget, &lat);
    }
    // Without a strictly positive lattice direction no pair can ever certify
    // the full coset, so only a fixed point would end the run; spend far less
    // effort before conceding Exhausted.
    let pair_guard = if lattice::strictly_positive_direction(&lat).is_some() {
        PAIR_GUARD
    } else {
        PAIR_GUARD / 30
    };
    let clip = vec![budget.max_coord; tee.dim()];
    let mut current = tee.clone();
    let mut clipped_any = false;
    for round in 1..=budget.max_rounds {
        // A tripped size guard is a budget outcome, not a failure: the set
        // collected so far is a correct lower bound for the completion.
        let extended = match extend_inner(
            current.points(),
            n,
            current.dim(),
            Some(&clip),
            &mut clipped_any,
            pair_guard,
        ) {
            Ok(points) => points,
            Err(Error::Resource(_)) => {
                return Ok(ClosureResult {
                    tag: ClosureTag::Exhausted,
                    set: current,
                    pair: None,
                    rounds: round - 1,
                });
            }
            Err(e) => return Err(e),
        };
        let extended = FreqSet::new(extended)?;
        if let Some(pair) = positive_pair(extended.points()) {
            return Ok(ClosureResult {
                tag: ClosureTag::FullCoset,
                set: extended,
                pair: Some(pair),
                rounds: round,
            });
        }
        if extended == current {
            // When nothing was ever dropped by the clip the whole clipped
            // iteration was the exact one, so this is a genuine fixed point.
            let tag = if clipped_any {
                ClosureTag::Exhausted
            } else {
                ClosureTag::FixedPoint
            };
            return Ok(ClosureResult {
                tag,
                set: current,
                pair: None,
                rounds: round,
            });
        }
        current = extended;
    }
    Ok(ClosureResult {
        tag: ClosureTag::Exhausted,
        set: current,
        pair: None,
        rounds: budget.max_rounds,
    })
}

/// Completion over a trivial direction cone: the coset restriction is
/// finite, every extension stays inside it, so each round only decides which
/// of the remaining candidate points joined the set.
fn complete_candidates(
    tee: &FreqSet,
    n: u32,
    budget: &Budget,
    lat: &lattice::AffineLattice,
) -> Result<ClosureResult> {
    let full = enumerate_orthant(lat, None)?;
    debug_assert_eq!(full.tag, EnumerationTag::Finite);
    let mut clipped_any = false;
    let mut candidates: Vec<MultiIndex> = full
        .points
        .iter()
        .filter(|p| !tee.contains(p))
        .filter(|p| {
            let inside = p.entries().iter().all(|&e| e <= budget.max_coord);
            if !inside {
                clipped_any = true;
            }
            inside
        })
        .cloned()
        .collect();
    let mut current = tee.clone();
    for round in 1..=budget.max_rounds {
        let layers = sum_layers(current.points(), n + 1, current.dim(), None).and_then(|plus| {
            let minus = sum_layers(current.points(), n, current.dim(), None)?;
            Ok((plus, minus))
        });
        let (plus, minus) = match layers {
            Ok(layers) => layers,
            Err(Error::Resource(_)) => {
                return Ok(ClosureResult {
                    tag: ClosureTag::Exhausted,
                    set: current,
                    pair: None,
                    rounds: round - 1,
                });
            }
            Err(e) => return Err(e),
        };
        let a = &plus[(n + 1) as usize];
        let b = &minus[n as usize];
        let mut joined = Vec::new();
        let mut remaining = Vec::new();
        'candidate: for lam in candidates.into_iter() {
            for bb in b {
                if a.contains(&lam.add(bb)?) {
                    joined.push(lam);
                    continue 'candidate;
                }
            }
            remaining.push(lam);
        }
        candidates = remaining;
        if joined.is_empty() {
            let tag = if clipped_any {
                ClosureTag::Exhausted
            } else {
                ClosureTag::FixedPoint
            };
            return Ok(ClosureResult {
                tag,
                set: current,
                pair: None,
                rounds: round,
            });
        }
        let mut points = current.points().to_vec();
        points.extend(joined);
        current = FreqSet::new(points)?;
    }
    Ok(ClosureResult {
        tag: ClosureTag::Exhausted,
        set: current,
        pair: None,
        rounds: budget.max_rounds,
    })
}

/// Whether `gamma` is exactly the intersection of its coset with the
/// nonnegative orthant.  On failure the second component exhibits a point of
/// the intersection outside `gamma`.
pub fn is_coset_restriction(gamma: &FreqSet) -> Result<(bool, Option<MultiIndex>)> {
    if !gamma.is_orthant() {
        return Err(Error::input(
            "coset restriction test needs an orthant frequency set",
        ));
    }
    let lat = affine_lattice(gamma);
    let result = enumerate_orthant(&lat, None)?;
    match result.tag {
        EnumerationTag::Finite => {
            if result.points == gamma.points() {
                Ok((true, None))
            } else {
                let evidence = result
                    .points
                    .iter()
                    .find(|p| !gamma.contains(p))
                    .cloned()
                    .expect("finite enumeration differs from gamma only by extra points");
                Ok((false, Some(evidence)))
            }
        }
        EnumerationTag::Infinite => {
            let witness = result.witness.expect("infinite result carries a witness");
            let mut evidence = gamma.points().last().expect("nonempty").clone();
            loop {
                evidence = evidence.add(&witness)?;
                if !gamma.contains(&evidence) {
                    return Ok((false, Some(evidence)));
                }
            }
        }
        EnumerationTag::Truncated => unreachable!("no cap was supplied"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    /// Every set projects contractively at p = 2.
    Always2,
    CosetRestriction,
    NotCosetRestriction,
    ExtensionFixed,
    ExtensionGrew,
}

/// Decision for one frequency set and one exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub contractive: bool,
    pub reason: Reason,
    pub evidence: Option<MultiIndex>,
}

/// Decide whether the projection onto `gamma` is a contraction on the Hardy
/// space with exponent `p`.
///
/// At `p = 2` every set qualifies.  At an even `p = 2(n+1)` the answer is
/// governed by whether the n-extension fixes the set.  At every other
/// exponent, including infinity, only coset restrictions qualify.
pub fn is_contractive_projection_set(gamma: &FreqSet, p: &PExponent) -> Result<Verdict> {
    if !gamma.is_orthant() {
        return Err(Error::input(
            "contractivity test needs an orthant frequency set",
        ));
    }
    match p {
        PExponent::Even(1) => Ok(Verdict {
            contractive: true,
            reason: Reason::Always2,
            evidence: None,
        }),
        PExponent::Even(k) => {
            let n = k - 1;
            let extended = extend(gamma, n)?;
            if extended == *gamma {
                Ok(Verdict {
                    contractive: true,
                    reason: Reason::ExtensionFixed,
                    evidence: None,
                })
            } else {
                let evidence = extended
                    .iter()
                    .find(|p| !gamma.contains(p))
                    .cloned()
                    .expect("grown extension has a new point");
                Ok(Verdict {
                    contractive: false,
                    reason: Reason::ExtensionGrew,
                    evidence: Some(evidence),
                })
            }
        }
        PExponent::Real(_) | PExponent::Infinity => {
            let (restriction, evidence) = is_coset_restriction(gamma)?;
            Ok(Verdict {
                contractive: restriction,
                reason: if restriction {
                    Reason::CosetRestriction
                } else {
                    Reason::NotCosetRestriction
                },
                evidence,
            })
        }
    }
}

/// Whether every k-dimensional contractive projection set for the Hardy
/// space on the d-torus is a coset restriction.
///
/// The answer depends only on which of three regimes `(d, k)` falls into:
/// low dimension (`d = 2` or `k = 1`), intermediate (`d = k = 3`, or
/// `d >= 3` and `k = 2`), and high (`d >= 4`, `k >= 3`).
pub fn restriction_property(d: u32, k: u32, p: &PExponent) -> Result<bool> {
    if d < 1 || k < 1 || k > d {
        return Err(Error::input("restriction property needs 1 <= k <= d"));
    }
    if d == 2 || k == 1 {
        return Ok(!matches!(p, PExponent::Even(1)));
    }
    if (d == 3 && k == 3) || k == 2 {
        return Ok(!matches!(p, PExponent::Even(1) | PExponent::Even(2)));
    }
    Ok(!p.is_even_integer())
}

/// Reflection of `alpha` through `beta`: `2 beta - alpha`.
pub fn linear_reflection(alpha: &MultiIndex, beta: &MultiIndex) -> Result<MultiIndex> {
    beta.scale(2)?.sub(alpha)
}

/// Reflection of `alpha` through the pair `beta`, `gamma`:
/// `beta + gamma - alpha`.
pub fn triangular_reflection(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    gamma: &MultiIndex,
) -> Result<MultiIndex> {
    beta.add(gamma)?.sub(alpha)
}

/// The negativity index of a full family of linearly independent vectors:
/// the sum over coordinates of the clamped minima.
pub fn negativity_index(vectors: &[MultiIndex]) -> Result<i64> {
    let Some(first) = vectors.first() else {
        return Err(Error::input("negativity index needs vectors"));
    };
    let d = first.dim();
    if vectors.len() != d || vectors.iter().any(|v| v.dim() != d) {
        return Err(Error::input(
            "negativity index needs d vectors of dimension d",
        ));
    }
    let rank = crate::lattice::AffineLattice::from_generators(MultiIndex::zero(d)?, vectors)?.rank();
    if rank != d {
        return Err(Error::input("negativity index needs independent vectors"));
    }
    let mut total = 0i64;
    for j in 0..d {
        let column_min = vectors
            .iter()
            .map(|v| v.entries()[j])
            .min()
            .expect("nonempty");
        total += column_min.min(0);
    }
    Ok(total)
}

/// Search the growing n-completion of `tee` for a point strictly above
/// `alpha` in every coordinate.
///
/// Returns the first such point in canonical order within the computed
/// closure; when the closure certifies the full coset through some other
/// pair, the translate of `alpha` by that pair's difference is returned.
pub fn find_positive_direction(
    tee: &FreqSet,
    alpha: &MultiIndex,
    n: u32,
    budget: &Budget,
) -> Result<Option<MultiIndex>> {
    if !tee.contains(alpha) {
        return Err(Error::input("search point must belong to the set"));
    }
    if n == 0 {
        return Err(Error::input("positive direction search needs n >= 1"));
    }
    let closure = complete(tee, n, budget)?;
    let direct = closure.set.iter().find(|beta| {
        beta.entries()
            .iter()
            .zip(alpha.entries())
            .all(|(&b, &a)| b - a >= 1)
    });
    if let Some(beta) = direct {
        return Ok(Some(beta.clone()));
    }
    if let Some((a, b)) = &closure.pair {
        // The certified pair proves the completion is the full coset
        // restriction, which contains every nonnegative translate.
        let beta = alpha.add(&b.sub(a)?)?;
        return Ok(Some(beta));
    }
    Ok(None)
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

    fn symmetric_quad() -> FreqSet {
        set(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]])
    }

    #[test]
    fn extension_of_the_corner_trio() {
        let gamma = corner_trio();
        assert_eq!(extend(&gamma, 0).unwrap(), gamma);
        assert_eq!(extend(&gamma, 1).unwrap(), gamma);
        let e2 = extend(&gamma, 2).unwrap();
        let expect = set(&[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1], &[0, 0, 3]]);
        assert_eq!(e2, expect);
    }

    #[test]
    fn extension_on_a_line() {
        let gamma = set(&[&[0], &[2]]);
        assert_eq!(extend(&gamma, 1).unwrap(), set(&[&[0], &[2], &[4]]));
    }

    #[test]
    fn distances_on_the_corner_trio() {
        let gamma = corner_trio();
        assert_eq!(distance(&gamma, &mi(&[0, 0, 3])).unwrap(), Some(2));
        assert_eq!(distance(&gamma, &mi(&[2, 2, -1])).unwrap(), Some(1));
        assert_eq!(distance(&gamma, &mi(&[1, 1, 1])).unwrap(), Some(0));
        assert_eq!(distance(&gamma, &mi(&[1, 0, 0])).unwrap(), None);
    }

    #[test]
    fn completion_reaches_fixed_point() {
        let gamma = corner_trio();
        let result = complete(&gamma, 2, &Budget::default()).unwrap();
        assert_eq!(result.tag, ClosureTag::FixedPoint);
        assert_eq!(
            result.set,
            set(&[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1], &[0, 0, 3]])
        );
    }

    #[test]
    fn completion_certifies_full_coset() {
        let gamma = symmetric_quad();
        let result = complete(&gamma, 2, &Budget::default()).unwrap();
        assert_eq!(result.tag, ClosureTag::FullCoset);
        assert_eq!(result.rounds, 1);
        let (a, b) = result.pair.unwrap();
        assert_eq!(b.sub(&a).unwrap(), mi(&[1, 1, 1]));
    }

    #[test]
    fn coset_restriction_outcomes() {
        assert_eq!(
            is_coset_restriction(&corner_trio()).unwrap(),
            (false, Some(mi(&[0, 0, 3])))
        );
        assert_eq!(is_coset_restriction(&set(&[&[1, 1]])).unwrap(), (true, None));
        let (ok, evidence) = is_coset_restriction(&set(&[&[0], &[1], &[2]])).unwrap();
        assert!(!ok);
        assert_eq!(evidence, Some(mi(&[3])));
    }

    #[test]
    fn contractivity_of_the_corner_trio() {
        let gamma = corner_trio();
        let p4 = is_contractive_projection_set(&gamma, &PExponent::even(2).unwrap()).unwrap();
        assert!(p4.contractive);
        let p6 = is_contractive_projection_set(&gamma, &PExponent::even(3).unwrap()).unwrap();
        assert!(!p6.contractive);
        assert_eq!(p6.evidence, Some(mi(&[0, 0, 3])));
        let p2 = is_contractive_projection_set(&gamma, &PExponent::even(1).unwrap()).unwrap();
        assert!(p2.contractive);
        assert_eq!(p2.reason, Reason::Always2);
        let pinf = is_contractive_projection_set(&gamma, &PExponent::Infinity).unwrap();
        assert!(!pinf.contractive);
    }

    #[test]
    fn restriction_property_spot_values() {
        let p = |s: &str| PExponent::parse(s).unwrap();
        assert!(restriction_property(2, 1, &p("4")).unwrap());
        assert!(!restriction_property(3, 2, &p("4")).unwrap());
        assert!(!restriction_property(3, 3, &p("4")).unwrap());
        assert!(!restriction_property(4, 3, &p("6")).unwrap());
        assert!(restriction_property(4, 3, &p("3")).unwrap());
        assert!(restriction_property(4, 3, &PExponent::Infinity).unwrap());
        assert!(!restriction_property(5, 1, &p("2")).unwrap());
        assert!(restriction_property(1, 1, &p("4")).unwrap());
        assert!(restriction_property(6, 6, &p("9/2")).unwrap());
    }

    #[test]
    fn reflections() {
        assert_eq!(
            linear_reflection(&mi(&[3, 0, 0]), &mi(&[1, 1, 1])).unwrap(),
            mi(&[-1, 2, 2])
        );
        let a = mi(&[2, 5]);
        assert_eq!(linear_reflection(&a, &a).unwrap(), a);
        assert_eq!(linear_reflection(&mi(&[0]), &mi(&[2])).unwrap(), mi(&[4]));
        assert_eq!(
            triangular_reflection(&mi(&[1, 1, 1]), &mi(&[3, 0, 0]), &mi(&[0, 3, 0])).unwrap(),
            mi(&[2, 2, -1])
        );
        let g = mi(&[7, -2, 0]);
        assert_eq!(triangular_reflection(&a3(), &a3(), &g).unwrap(), g);
        assert_eq!(
            triangular_reflection(&mi(&[1, 1, 1]), &mi(&[4, 0, 0]), &mi(&[0, 4, 0])).unwrap(),
            mi(&[3, 3, -1])
        );
    }

    fn a3() -> MultiIndex {
        mi(&[5, 5, 5])
    }

    #[test]
    fn negativity_index_values() {
        assert_eq!(
            negativity_index(&[mi(&[1, 0]), mi(&[0, 1])]).unwrap(),
            0
        );
        assert_eq!(
            negativity_index(&[mi(&[1, -1]), mi(&[-2, 1])]).unwrap(),
            -3
        );
        assert_eq!(
            negativity_index(&[mi(&[2, -1, -1]), mi(&[-1, 2, -1]), mi(&[-1, -1, 1])]).unwrap(),
            -3
        );
        assert!(negativity_index(&[mi(&[1, 1]), mi(&[2, 2])]).is_err());
        // Vectors summing to zero are dependent and rejected.
        assert!(
            negativity_index(&[mi(&[2, -1, -1]), mi(&[-1, 2, -1]), mi(&[-1, -1, 2])]).is_err()
        );
    }

    #[test]
    fn positive_direction_on_symmetric_quad() {
        let found = find_positive_direction(
            &symmetric_quad(),
            &mi(&[1, 1, 1]),
            2,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(found, Some(mi(&[2, 2, 2])));
    }

    #[test]
    fn certificates_witness_membership() {
        let gamma = corner_trio();
        let cert = extension_certificate(&gamma, 2, &mi(&[0, 0, 3]))
            .unwrap()
            .unwrap();
        assert!(cert.verify().unwrap());
        assert_eq!(cert.plus.len(), 3);
        assert_eq!(cert.minus.len(), 2);
        // No certificate below the true distance.
        assert!(extension_certificate(&gamma, 1, &mi(&[0, 0, 3]))
            .unwrap()
            .is_none());
        // Points of the set certify trivially by padding.
        let cert = extension_certificate(&gamma, 1, &mi(&[1, 1, 1]))
            .unwrap()
            .unwrap();
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn budget_validation() {
        let gamma = corner_trio();
        for bad in [
            Budget {
                max_rounds: 0,
                max_coord: 128,
            },
            Budget {
                max_rounds: 16,
                max_coord: 0,
            },
        ] {
            assert!(complete(&gamma, 2, &bad).is_err());
        }
        assert!(complete(&gamma, 0, &Budget::default()).is_err());
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(PExponent::parse("2").unwrap(), PExponent::Even(1));
        assert_eq!(PExponent::parse("4").unwrap(), PExponent::Even(2));
        assert!(matches!(PExponent::parse("3").unwrap(), PExponent::Real(_)));
        assert!(matches!(PExponent::parse("9/2").unwrap(), PExponent::Real(_)));
        assert_eq!(PExponent::parse("inf").unwrap(), PExponent::Infinity);
        assert!(PExponent::parse("4.0").is_err());
        assert!(PExponent::parse("1/2").is_err());
    }
}
