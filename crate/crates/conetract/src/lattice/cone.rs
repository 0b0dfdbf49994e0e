//! Exact Fourier-Motzkin elimination over the rationals.
//!
//! Small systems only: the lattice ranks in this crate are at most the
//! ambient dimension (<= 6 in practice), where the elimination blowup is
//! negligible and a feasible point falls out of back-substitution directly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

/// A linear inequality `coeffs . t >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ineq {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Ineq {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Ineq { coeffs, rhs }
    }

    /// Scale to a canonical integer form with content one, for dedup.
    fn canonicalize(&mut self) {
        let mut lcm = BigInt::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let scale = BigRational::from(lcm);
        for c in self.coeffs.iter_mut() {
            *c *= &scale;
        }
        self.rhs *= &scale;
        let mut gcd = BigInt::zero();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            gcd = num_integer::gcd(gcd, c.numer().clone());
        }
        if !gcd.is_zero() && !gcd.is_one() {
            let scale = BigRational::from(gcd).recip();
            for c in self.coeffs.iter_mut() {
                *c *= &scale;
            }
            self.rhs *= &scale;
        }
    }
}

/// Outcome of maximizing a linear objective over a polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Max(BigRational),
}

/// Result of eliminating all variables: per-level systems for witness
/// extraction. Level `k` constrains variables `0..=k`.
struct Elimination {
    levels: Vec<Vec<Ineq>>,
    constants: Vec<Ineq>,
}

fn eliminate(ineqs: Vec<Ineq>, nvars: usize) -> Elimination {
    let mut levels: Vec<Vec<Ineq>> = Vec::with_capacity(nvars);
    let mut current = ineqs;
    for var in (0..nvars).rev() {
        dedup(&mut current);
        levels.push(current.clone());
        let mut lower = Vec::new(); // coeff > 0: bounds var from below
        let mut upper = Vec::new(); // coeff < 0: bounds var from above
        let mut rest = Vec::new();
        for ineq in current.into_iter() {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                rest.push(ineq);
            } else if c.is_positive() {
                lower.push(ineq);
            } else {
                upper.push(ineq);
            }
        }
        for lo in &lower {
            for hi in &upper {
                // lo: a t_var >= b - L(t');  hi: -c t_var >= d - U(t') with a,c > 0
                let a = lo.coeffs[var].clone();
                let c = -hi.coeffs[var].clone();
                let mut coeffs = Vec::with_capacity(var);
                for i in 0..var {
                    coeffs.push(&lo.coeffs[i] * &c + &hi.coeffs[i] * &a);
                }
                let rhs = &lo.rhs * &c + &hi.rhs * &a;
                let mut combined = Ineq::new(coeffs, rhs);
                combined.canonicalize();
                rest.push(combined);
            }
        }
        for ineq in rest.iter_mut() {
            ineq.coeffs.truncate(var);
        }
        current = rest;
    }
    dedup(&mut current);
    levels.reverse();
    Elimination {
        levels,
        constants: current,
    }
}

fn dedup(ineqs: &mut Vec<Ineq>) {
    let mut seen = HashSet::new();
    ineqs.retain_mut(|i| {
        i.canonicalize();
        // drop trivially satisfied rows
        if i.coeffs.iter().all(Zero::is_zero) && !i.rhs.is_positive() {
            return false;
        }
        seen.insert(i.clone())
    });
}

/// A feasible point of the system, when one exists.
pub fn feasible_point(ineqs: Vec<Ineq>, nvars: usize) -> Option<Vec<BigRational>> {
    let elim = eliminate(ineqs, nvars);
    for c in &elim.constants {
        if c.rhs.is_positive() {
            return None;
        }
    }
    let mut point: Vec<BigRational> = Vec::with_capacity(nvars);
    for var in 0..nvars {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for ineq in &elim.levels[var] {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let mut bound = ineq.rhs.clone();
            for (i, value) in point.iter().enumerate() {
                bound -= &ineq.coeffs[i] * value;
            }
            bound /= c.clone();
            if c.is_positive() {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            }
        }
        let value = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
        point.push(value);
    }
    Some(point)
}

/// Maximize `objective . t + constant` subject to the system.
pub fn maximize(ineqs: &[Ineq], nvars: usize, objective: &[BigRational]) -> LpOutcome {
    // Append y as variable nvars with y = objective . t, then eliminate t.
    let mut extended: Vec<Ineq> = Vec::with_capacity(ineqs.len() + 2);
    for ineq in ineqs {
        let mut coeffs = ineq.coeffs.clone();
        coeffs.push(BigRational::zero());
        extended.push(Ineq::new(coeffs, ineq.rhs.clone()));
    }
    let mut up: Vec<BigRational> = objective.iter().map(|c| -c.clone()).collect();
    up.push(BigRational::one());
    extended.push(Ineq::new(up, BigRational::zero()));
    let mut down: Vec<BigRational> = objective.to_vec();
    down.push(-BigRational::one());
    extended.push(Ineq::new(down, BigRational::zero()));

    // Reorder so y is variable 0 and the t's are eliminated after it.
    let perm = |ineq: &Ineq| {
        let mut coeffs = Vec::with_capacity(nvars + 1);
        coeffs.push(ineq.coeffs[nvars].clone());
        coeffs.extend_from_slice(&ineq.coeffs[..nvars]);
        Ineq::new(coeffs, ineq.rhs.clone())
    };
    let reordered: Vec<Ineq> = extended.iter().map(perm).collect();
    let elim = eliminate(reordered, nvars + 1);
    for c in &elim.constants {
        if c.rhs.is_positive() {
            return LpOutcome::Infeasible;
        }
    }
    let mut best: Option<BigRational> = None;
    for ineq in &elim.levels[0] {
        let c = &ineq.coeffs[0];
        if c.is_negative() {
            let bound = &ineq.rhs / c;
            best = Some(match best {
                Some(b) if b <= bound => b,
                _ => bound,
            });
        }
    }
    match best {
        Some(b) => LpOutcome::Max(b),
        None => LpOutcome::Unbounded,
    }
}
