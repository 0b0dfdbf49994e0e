//! Floating-point verification layer.
//!
//! Everything here is a verifier or an estimator, not a prover: norms come
//! from tensor-grid quadrature with a reported refinement gap, sup norms from
//! a grid maximum with local polish, and operator norms from searched lower
//! bounds.  The exact-arithmetic side of the crate lives in `polyoracle`;
//! the two are cross-checked in the test suites.

mod grid;

pub use grid::{GridSpec, DEFAULT_GRID_BUDGET};

use crate::error::{Error, Result};
use crate::extensions::{self, PExponent};
use crate::index::{FreqSet, MultiIndex};
use crate::lattice::{affine_lattice, enumerate_orthant};
use crate::polyoracle::{even_norm, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A quadrature norm together with its one-step refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    /// The same norm on the grid with doubled resolution.
    pub refined: f64,
    /// `|value - refined| / max(refined, tiny)`; reported, never hidden.
    pub rel_gap: f64,
}

fn norm_on_grid(f: &LaurentPoly, p: &PExponent, spec: &GridSpec) -> Result<f64> {
    let values = grid::grid_values(f, spec)?;
    let total = values.len() as f64;
    Ok(match p {
        PExponent::Infinity => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        _ => {
            let pf = p.as_f64();
            let mean: f64 = values.iter().map(|v| v.norm().powf(pf)).sum::<f64>() / total;
            mean.powf(1.0 / pf)
        }
    })
}

/// Estimate the Lebesgue norm of `f` on the torus by uniform tensor-grid
/// quadrature (maximum over the grid at exponent infinity).
pub fn lp_norm_estimate(f: &LaurentPoly, p: &PExponent, spec: &GridSpec) -> Result<NormEstimate> {
    if let PExponent::Real(r) = p {
        if r < &BigRational::one() {
            return Err(Error::input("exponent must be at least 1"));
        }
    }
    let value = norm_on_grid(f, p, spec)?;
    let refined = norm_on_grid(f, p, &spec.doubled()?)?;
    let rel_gap = (value - refined).abs() / refined.abs().max(1e-300);
    Ok(NormEstimate {
        value,
        refined,
        rel_gap,
    })
}

/// Mean of `|f|^{p-2} f conj(z^lam)` over the grid: a quadrature estimate of
/// the duality pairing, real for real-coefficient `f`.
pub fn pairing_estimate(
    f: &LaurentPoly,
    p: f64,
    lam: &MultiIndex,
    spec: &GridSpec,
) -> Result<f64> {
    if lam.dim() != f.dim() {
        return Err(Error::input("pairing frequency dimension mismatch"));
    }
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(Error::input("pairing exponent must be finite, at least 1"));
    }
    let values = grid::grid_values(f, spec)?;
    let mins = grid::support_minima(f);
    // Values carry the modulation z^{-mins}; pair against lam - mins so the
    // product matches the unshifted integrand.
    let shifted: Vec<f64> = lam
        .entries()
        .iter()
        .zip(&mins)
        .map(|(&l, &m)| (l - m) as f64)
        .collect();
    let mut acc = 0.0f64;
    for (flat, v) in values.iter().enumerate() {
        let theta = grid::angles_of(flat, spec);
        let phase: f64 = theta.iter().zip(&shifted).map(|(&t, &s)| t * s).sum();
        let weight = v.norm().powf(p - 2.0);
        let rotated = v * rustfft::num_complex::Complex::from_polar(1.0, -phase);
        acc += weight * rotated.re;
    }
    Ok(acc / values.len() as f64)
}

fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_f64(x).ok_or_else(|| Error::input("value is not a finite float"))
}

/// `c_p eps conj(z) + 1 + eps z` against `1 + eps z` on the circle.
fn line_pair(p: &PExponent, eps: f64) -> Result<(LaurentPoly, LaurentPoly)> {
    let c_p = match p {
        PExponent::Infinity => -1.0,
        _ => 2.0 / p.as_f64() - 1.0,
    };
    let mut left = LaurentPoly::one(1)?;
    left.insert(MultiIndex::new(vec![-1])?, rational_from_f64(c_p * eps)?);
    left.insert(MultiIndex::new(vec![1])?, rational_from_f64(eps)?);
    let mut right = LaurentPoly::one(1)?;
    right.insert(MultiIndex::new(vec![1])?, rational_from_f64(eps)?);
    Ok((left, right))
}

fn strict_norm_drop(
    left: &LaurentPoly,
    right: &LaurentPoly,
    p: &PExponent,
    spec: &GridSpec,
) -> Result<bool> {
    let l = lp_norm_estimate(left, p, spec)?;
    let r = lp_norm_estimate(right, p, spec)?;
    let gap = (l.value - l.refined).abs() + (r.value - r.refined).abs() + 1e-14;
    Ok(l.refined + gap < r.refined - gap)
}

/// Check that tilting the one-variable test function strictly lowers the
/// norm at exponent `p`, halving `eps` up to six times before giving up.
///
/// A verifier, not a prover: the inequality must hold beyond the measured
/// quadrature gap.
pub fn verify_line_lemma(p: &PExponent, eps: f64) -> Result<bool> {
    if eps <= 0.0 {
        return Ok(false);
    }
    let spec = GridSpec::new(512, 1)?;
    let mut eps = eps;
    for _ in 0..=6 {
        let (left, right) = line_pair(p, eps)?;
        if strict_norm_drop(&left, &right, p, &spec)? {
            return Ok(true);
        }
        eps /= 2.0;
    }
    Ok(false)
}

/// Two-variable counterpart of [`verify_line_lemma`]: the competitor gains
/// the cross term `(1 - p/2) eps^2 z1 z2`.
pub fn verify_plane_lemma(p: &PExponent, eps: f64) -> Result<bool> {
    if matches!(p, PExponent::Infinity) {
        return Err(Error::input("the plane verifier needs a finite exponent"));
    }
    if eps <= 0.0 {
        return Ok(false);
    }
    let c_p = 1.0 - p.as_f64() / 2.0;
    let spec = GridSpec::new(128, 2)?;
    let mut eps = eps;
    for _ in 0..=6 {
        let mut right = LaurentPoly::one(2)?;
        right.insert(MultiIndex::new(vec![1, 0])?, rational_from_f64(eps)?);
        right.insert(MultiIndex::new(vec![0, 1])?, rational_from_f64(eps)?);
        let mut left = right.clone();
        left.insert(
            MultiIndex::new(vec![1, 1])?,
            rational_from_f64(c_p * eps * eps)?,
        );
        if strict_norm_drop(&left, &right, p, &spec)? {
            return Ok(true);
        }
        eps /= 2.0;
    }
    Ok(false)
}

fn sup_norm_refined(f: &LaurentPoly, spec: &GridSpec) -> Result<(f64, f64)> {
    let values = grid::grid_values(f, spec)?;
    let (argmax, grid_max) = values
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.norm()))
        .fold((0usize, f64::MIN), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let mut theta = grid::angles_of(argmax, spec);
    let h = std::f64::consts::TAU / spec.points_per_dim as f64;
    // Coordinate-wise ternary search around the grid maximizer.
    for _ in 0..4 {
        for k in 0..theta.len() {
            let mut lo = theta[k] - h;
            let mut hi = theta[k] + h;
            for _ in 0..40 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                let mut t1 = theta.clone();
                t1[k] = m1;
                let mut t2 = theta.clone();
                t2[k] = m2;
                if grid::abs_at(f, &t1) < grid::abs_at(f, &t2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            theta[k] = (lo + hi) / 2.0;
        }
    }
    let refined = grid::abs_at(f, &theta).max(grid_max);
    Ok((grid_max, refined))
}

/// Check that subtracting `eps z^alpha` from the extremal sup-norm test
/// function `d + z_1 + ... + z_d` strictly lowers the sup norm, whose value
/// without the spike is exactly `2d`.
///
/// The sup norm is estimated by a grid maximum with local ternary-search
/// polish; the error margin is heuristic, so this is a verifier.
pub fn verify_inf_lemma(alpha: &MultiIndex, eps: f64) -> Result<bool> {
    let d = alpha.dim();
    if d > 4 {
        return Err(Error::resource(
            "sup-norm verifier supports up to 4 variables",
        ));
    }
    if eps <= 0.0 {
        return Ok(false);
    }
    let n = match d {
        1 => 4096,
        2 => 512,
        3 => 64,
        _ => 32,
    };
    let spec = GridSpec::new(n, d)?;
    let right = 2.0 * d as f64;
    let mut eps = eps;
    for _ in 0..=6 {
        let mut f = LaurentPoly::monomial(
            MultiIndex::zero(d)?,
            BigRational::from(BigInt::from(d as i64)),
        );
        for j in 0..d {
            let mut unit = vec![0i64; d];
            unit[j] = 1;
            f.insert(MultiIndex::new(unit)?, BigRational::one());
        }
        let spike = rational_from_f64(-eps)?;
        let prior = f.coeff(alpha);
        f.insert(alpha.clone(), prior + spike);
        let (grid_max, refined) = sup_norm_refined(&f, &spec)?;
        let margin = 2.0 * (refined - grid_max).abs() + 1e-9;
        if refined + margin < right {
            return Ok(true);
        }
        eps /= 2.0;
    }
    Ok(false)
}

/// Fit the second-order coefficient of `||c eps conj(z) + 1 + eps z||_p^p - 1`
/// in `eps` by Richardson extrapolation, and return it with the closed-form
/// prediction `(p^2/4)(c + 1 - 2/p)^2 + p - 1`.
pub fn quadratic_coefficient_check(p: f64, c: f64) -> Result<(f64, f64)> {
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(Error::input("exponent must be finite, at least 1"));
    }
    let spec = GridSpec::new(1024, 1)?;
    let eps_grid = [1e-2, 5e-3, 2.5e-3];
    let mut g = [0.0f64; 3];
    for (i, &eps) in eps_grid.iter().enumerate() {
        let mut f = LaurentPoly::one(1)?;
        f.insert(MultiIndex::new(vec![-1])?, rational_from_f64(c * eps)?);
        f.insert(MultiIndex::new(vec![1])?, rational_from_f64(eps)?);
        let norm = norm_on_grid(&f, &PExponent::from_rational(rational_from_f64(p)?)?, &spec)?;
        g[i] = (norm.powf(p) - 1.0) / (eps * eps);
    }
    // The expansion is even in eps, so extrapolate on eps^2 twice.
    let h1 = (4.0 * g[1] - g[0]) / 3.0;
    let h2 = (4.0 * g[2] - g[1]) / 3.0;
    let fitted = (16.0 * h2 - h1) / 15.0;
    let predicted = (p * p / 4.0) * (c + 1.0 - 2.0 / p).powi(2) + p - 1.0;
    Ok((fitted, predicted))
}

fn generalized_binomial(x: f64, k: u32) -> f64 {
    let mut num = 1.0;
    for i in 0..k {
        num *= x - i as f64;
    }
    let mut den = 1.0;
    for i in 1..=k {
        den *= i as f64;
    }
    num / den
}

fn multinomial(total: u32, parts: &[u32]) -> f64 {
    debug_assert_eq!(total, parts.iter().sum::<u32>());
    let mut value = 1.0f64;
    let mut drawn = 0u32;
    for &part in parts {
        for i in 1..=part {
            drawn += 1;
            value *= drawn as f64 / i as f64;
        }
    }
    value
}

/// Leading coefficient of the pairing expansion at a non-even exponent for a
/// lattice representation with coefficients `m`: a product of generalized
/// binomials and multinomials, nonzero whenever some `m_j` is positive.
pub fn shapiro_leading_coefficient(p: f64, m: &[i64]) -> Result<f64> {
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(Error::input("exponent must be finite, at least 1"));
    }
    if p.fract() == 0.0 && (p as i64) % 2 == 0 {
        return Err(Error::input("exponent must not be an even integer"));
    }
    if !m.iter().any(|&v| v > 0) {
        return Err(Error::input("at least one coefficient must be positive"));
    }
    let positives: Vec<u32> = m.iter().filter(|&&v| v > 0).map(|&v| v as u32).collect();
    let negatives: Vec<u32> = m.iter().filter(|&&v| v < 0).map(|&v| (-v) as u32).collect();
    let m_plus: u32 = positives.iter().sum();
    let m_minus: u32 = negatives.iter().sum();
    let x = p / 2.0 - 1.0;
    let value = generalized_binomial(x, m_minus)
        * multinomial(m_plus, &positives)
        * multinomial(m_minus, &negatives)
        * (generalized_binomial(x, m_plus) + generalized_binomial(x, m_plus - 1));
    Ok(value)
}

/// Effort knobs for the operator-norm lower-bound search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Depth of the geometric `eps` grid.
    pub eps_levels: u32,
    /// Depth of the geometric `c` grid per `eps`.
    pub c_levels: u32,
    /// Random perturbation polish attempts on the best candidate.
    pub polish_rounds: u32,
    /// Per-coordinate cap when sampling coset points at non-even exponents.
    pub enum_cap: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            eps_levels: 8,
            c_levels: 24,
            polish_rounds: 120,
            enum_cap: 24,
        }
    }
}

fn default_grid(dims: usize) -> Result<GridSpec> {
    let n = match dims {
        1 => 1024,
        2 => 256,
        3 => 64,
        4 => 32,
        _ => return Err(Error::resource("quadrature supports up to 4 variables")),
    };
    GridSpec::new(n, dims)
}

/// Ratio `||f||_p / ||f + c z^lam||_p` measured by quadrature.
fn quadrature_ratio(
    f: &LaurentPoly,
    lam: &MultiIndex,
    c: f64,
    p: &PExponent,
    spec: &GridSpec,
) -> Result<f64> {
    let h = f.add(&LaurentPoly::monomial(lam.clone(), rational_from_f64(c)?))?;
    let nf = norm_on_grid(f, p, spec)?;
    let nh = norm_on_grid(&h, p, spec)?;
    Ok(nf / nh)
}

/// The same ratio with exact even norms, returned as a float.
fn exact_ratio(f: &LaurentPoly, lam: &MultiIndex, c: &BigRational, k: u32) -> Result<f64> {
    let h = f.add(&LaurentPoly::monomial(lam.clone(), c.clone()))?;
    let nf = even_norm(f, k)?;
    let nh = even_norm(&h, k)?;
    let ratio = (nf / nh).to_f64().unwrap_or(0.0);
    Ok(ratio.powf(1.0 / (2.0 * k as f64)))
}

/// Test family `z^{gamma_0} + eps sum z^gamma` over the rest of the set.
fn family(gamma: &FreqSet, eps: &BigRational) -> LaurentPoly {
    let base = gamma.min_point();
    let mut f = LaurentPoly::monomial(base.clone(), BigRational::one());
    for point in gamma.iter().filter(|g| *g != base) {
        f.insert(point.clone(), eps.clone());
    }
    f
}

fn polish_even(
    best: &mut f64,
    state: (LaurentPoly, MultiIndex, BigRational),
    k: u32,
    rounds: u32,
) -> Result<()> {
    let (f, lam, c) = state;
    let mut rng = ChaCha8Rng::seed_from_u64(0x636f6e65);
    let mut current = (f, c);
    for _ in 0..rounds {
        let mut f2 = LaurentPoly::zero(lam.dim());
        for (idx, coeff) in current.0.terms() {
            let jitter = rational_from_f64(1.0 + 0.25 * (rng.gen::<f64>() - 0.5))?;
            f2.insert(idx.clone(), coeff * jitter);
        }
        let c2 = &current.1 * rational_from_f64(1.0 + 0.25 * (rng.gen::<f64>() - 0.5))?;
        let ratio = exact_ratio(&f2, &lam, &c2, k)?;
        if ratio > *best {
            *best = ratio;
            current = (f2, c2);
        }
    }
    Ok(())
}

fn polish_quadrature(
    best: &mut f64,
    state: (LaurentPoly, MultiIndex, f64),
    p: &PExponent,
    spec: &GridSpec,
    rounds: u32,
) -> Result<()> {
    let (f, lam, c) = state;
    let mut rng = ChaCha8Rng::seed_from_u64(0x636f6e65);
    let mut current = (f, c);
    for _ in 0..rounds {
        let mut f2 = LaurentPoly::zero(lam.dim());
        for (idx, coeff) in current.0.terms() {
            let jitter = rational_from_f64(1.0 + 0.25 * (rng.gen::<f64>() - 0.5))?;
            f2.insert(idx.clone(), coeff * jitter);
        }
        let c2 = current.1 * (1.0 + 0.25 * (rng.gen::<f64>() - 0.5));
        let ratio = quadrature_ratio(&f2, &lam, c2, p, spec)?;
        if ratio > *best {
            *best = ratio;
            current = (f2, c2);
        }
    }
    Ok(())
}

/// Search a lower bound for the operator norm of the projection onto
/// `gamma` at exponent `p`.
///
/// Always at least one, since the projection fixes functions supported on
/// `gamma`.  At even exponents the perturbation frequencies come from the
/// extension points and ratios are evaluated exactly; elsewhere candidates
/// come from sampled coset points and ratios from quadrature.  A seeded
/// random perturbation polish refines the best candidate found.
pub fn operator_norm_lower_bound(
    gamma: &FreqSet,
    p: &PExponent,
    budget: &SearchBudget,
) -> Result<f64> {
    let mut best = 1.0f64;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    match p {
        PExponent::Even(1) => Ok(1.0),
        PExponent::Even(k) => {
            let n = k - 1;
            let extension = extensions::extend(gamma, n)?;
            let candidates: Vec<MultiIndex> = extension
                .iter()
                .filter(|lam| !gamma.contains(lam))
                .cloned()
                .collect();
            if candidates.is_empty() {
                return Ok(1.0);
            }
            let mut best_state: Option<(LaurentPoly, MultiIndex, BigRational)> = None;
            for lam in &candidates {
                let mut eps = BigRational::one();
                for _ in 0..budget.eps_levels {
                    let f = family(gamma, &eps);
                    let mut magnitude = BigRational::one();
                    for _ in 0..n {
                        magnitude *= &eps;
                    }
                    for _ in 0..budget.c_levels {
                        for sign in [1i64, -1] {
                            let c = &magnitude * BigRational::from(BigInt::from(sign));
                            let ratio = exact_ratio(&f, lam, &c, *k)?;
                            if ratio > best {
                                best = ratio;
                                best_state = Some((f.clone(), lam.clone(), c.clone()));
                            }
                        }
                        magnitude *= &half;
                    }
                    eps *= &half;
                }
            }
            if let Some(state) = best_state {
                polish_even(&mut best, state, *k, budget.polish_rounds)?;
            }
            Ok(best)
        }
        _ => {
            let spec = default_grid(gamma.dim())?;
            let lat = affine_lattice(gamma);
            let sample = enumerate_orthant(&lat, Some(budget.enum_cap))?;
            let candidates: Vec<MultiIndex> = sample
                .points
                .iter()
                .filter(|lam| !gamma.contains(lam))
                .cloned()
                .collect();
            if candidates.is_empty() {
                return Ok(1.0);
            }
            let mut best_state: Option<(LaurentPoly, MultiIndex, f64)> = None;
            for lam in &candidates {
                let mut eps = BigRational::one();
                for _ in 0..budget.eps_levels {
                    let f = family(gamma, &eps);
                    let mut magnitude = 1.0f64;
                    for _ in 0..budget.c_levels {
                        for sign in [1.0, -1.0] {
                            let c = sign * magnitude;
                            let ratio = quadrature_ratio(&f, lam, c, p, &spec)?;
                            if ratio > best {
                                best = ratio;
                                best_state = Some((f.clone(), lam.clone(), c));
                            }
                        }
                        magnitude /= 2.0;
                    }
                    eps *= &half;
                }
            }
            if let Some(state) = best_state {
                polish_quadrature(&mut best, state, p, &spec, budget.polish_rounds)?;
            }
            Ok(best.max(1.0))
        }
    }
}

/// The frequency family driving the growth construction: the corner trio in
/// three variables at `n = 1`, the skew quadruple in four variables for
/// `n >= 2`.
pub fn tn_frequency_set(n: u32) -> FreqSet {
    if n <= 1 {
        FreqSet::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 1]]).expect("static set")
    } else {
        let n = n as i64;
        FreqSet::from_rows(&[
            vec![n, 1, 0, 1],
            vec![n + 1, 0, 1, 0],
            vec![0, 0, n + 1, 0],
            vec![0, 0, 0, n + 1],
        ])
        .expect("static set")
    }
}

/// Lower bounds `(1 + delta_p)^m / m^2` for the norm of the operator built
/// from `m` independent blocks of the projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub delta_p: f64,
    /// Rows `(m, (1 + delta_p)^m / m^2)`; lower bounds only.
    pub rows: Vec<(u32, f64)>,
}

/// Tabulate the norm growth of the blocked operator at exponent `p`.
///
/// Refused when `p` is one of the even integers `2, 4, ..., 2(n+1)`: there
/// every block projects contractively and the operator is bounded, so no
/// growth exists to tabulate.
pub fn tn_growth_table(n: u32, p: &PExponent, m_max: u32) -> Result<GrowthTable> {
    if n == 0 {
        return Err(Error::input("growth table needs n >= 1"));
    }
    if let PExponent::Even(k) = p {
        if *k <= n + 1 {
            return Err(Error::input(format!(
                "the blocked operator is bounded exactly when p = 2, 4, ..., {}; \
                 a growth table needs p outside this range",
                2 * (n + 1)
            )));
        }
    }
    let gamma = tn_frequency_set(n);
    let delta_p = operator_norm_lower_bound(&gamma, p, &SearchBudget::default())? - 1.0;
    let mut rows = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let value = (1.0 + delta_p).powi(m as i32) / (m as f64 * m as f64);
        rows.push((m, value));
    }
    Ok(GrowthTable { delta_p, rows })
}
