//! Uniform-grid evaluation of Laurent polynomials on the torus.
//!
//! The coefficient array is filled after shifting every index to the
//! nonnegative box (a modulation of modulus one, invariant for every norm
//! used here) and evaluated by a multidimensional FFT along each axis.

use crate::error::{Error, Result};
use crate::polyoracle::LaurentPoly;
use num_traits::ToPrimitive;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

/// Default bound on the total number of grid points.
pub const DEFAULT_GRID_BUDGET: usize = 1 << 24;

/// A tensor grid on the torus: `points_per_dim` equispaced points per
/// coordinate, `dims` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub points_per_dim: usize,
    pub dims: usize,
}

impl GridSpec {
    pub fn new(points_per_dim: usize, dims: usize) -> Result<Self> {
        Self::with_budget(points_per_dim, dims, DEFAULT_GRID_BUDGET)
    }

    pub fn with_budget(points_per_dim: usize, dims: usize, budget: usize) -> Result<Self> {
        if points_per_dim < 8 || !points_per_dim.is_power_of_two() {
            return Err(Error::input(
                "grid resolution must be a power of two, at least 8",
            ));
        }
        if dims == 0 {
            return Err(Error::input("grid needs at least one dimension"));
        }
        let spec = GridSpec {
            points_per_dim,
            dims,
        };
        match spec.total() {
            Some(total) if total <= budget => Ok(spec),
            _ => Err(Error::resource("grid exceeds the configured point budget")),
        }
    }

    pub fn total(&self) -> Option<usize> {
        self.points_per_dim.checked_pow(self.dims as u32)
    }

    /// The one-step refinement grid used to report a resolution gap.  It may
    /// exceed the base budget by a couple of doublings, nothing more.
    pub(crate) fn doubled(&self) -> Result<GridSpec> {
        let spec = GridSpec {
            points_per_dim: self.points_per_dim * 2,
            dims: self.dims,
        };
        match spec.total() {
            Some(total) if total <= DEFAULT_GRID_BUDGET << 2 => Ok(spec),
            _ => Err(Error::resource("refinement grid exceeds the point budget")),
        }
    }
}

/// Per-coordinate minima of the support: the shift applied before
/// evaluation.
pub(crate) fn support_minima(f: &LaurentPoly) -> Vec<i64> {
    let mut mins = vec![0i64; f.dim()];
    for (i, (idx, _)) in f.terms().enumerate() {
        for (m, &e) in mins.iter_mut().zip(idx.entries()) {
            if i == 0 || e < *m {
                *m = e;
            }
        }
    }
    mins
}

/// Values of `z^{-mins} f` on the tensor grid, row-major: entry `j` holds
/// the value at angles `theta_k = 2 pi j_k / n`.
pub(crate) fn grid_values(f: &LaurentPoly, grid: &GridSpec) -> Result<Vec<Complex<f64>>> {
    if f.dim() != grid.dims {
        return Err(Error::input("grid dimension must match the polynomial"));
    }
    let n = grid.points_per_dim;
    let d = grid.dims;
    let total = grid
        .total()
        .ok_or_else(|| Error::resource("grid too large"))?;
    let mins = support_minima(f);
    let mut data = vec![Complex::new(0.0, 0.0); total];
    for (idx, coeff) in f.terms() {
        let mut flat = 0usize;
        for (&e, &m) in idx.entries().iter().zip(&mins) {
            let shifted = (e - m) as usize;
            if shifted >= n {
                return Err(Error::input(
                    "grid too small for the polynomial degree span",
                ));
            }
            flat = flat * n + shifted;
        }
        let c = coeff
            .to_f64()
            .ok_or_else(|| Error::input("coefficient does not fit in a float"))?;
        data[flat] += Complex::new(c, 0.0);
    }
    // The inverse transform evaluates sum c_a exp(+i <theta_j, a>), i.e. the
    // polynomial itself at the grid angles; rustfft applies no scaling.
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_inverse(n);
    let mut scratch = vec![Complex::new(0.0, 0.0); n];
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        let lines = total / n;
        for line in 0..lines {
            let block_index = line / stride;
            let offset = line % stride;
            let start = block_index * block + offset;
            for j in 0..n {
                scratch[j] = data[start + j * stride];
            }
            fft.process(&mut scratch);
            for j in 0..n {
                data[start + j * stride] = scratch[j];
            }
        }
    }
    Ok(data)
}

/// Direct evaluation of `|f|` at explicit angles, for local refinement of
/// sup-norm estimates.
pub(crate) fn abs_at(f: &LaurentPoly, theta: &[f64]) -> f64 {
    let mut acc = Complex::new(0.0, 0.0);
    for (idx, coeff) in f.terms() {
        let phase: f64 = idx
            .entries()
            .iter()
            .zip(theta)
            .map(|(&e, &t)| e as f64 * t)
            .sum();
        let c = coeff.to_f64().unwrap_or(0.0);
        acc += Complex::new(c, 0.0) * Complex::from_polar(1.0, phase);
    }
    acc.norm()
}

/// Grid angles of a flattened row-major index.
pub(crate) fn angles_of(flat: usize, grid: &GridSpec) -> Vec<f64> {
    let n = grid.points_per_dim;
    let mut rem = flat;
    let mut out = vec![0.0; grid.dims];
    for k in (0..grid.dims).rev() {
        out[k] = (rem % n) as f64 * std::f64::consts::TAU / n as f64;
        rem /= n;
    }
    out
}
