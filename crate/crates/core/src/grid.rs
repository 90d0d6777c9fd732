//! Uniform periodic grids and their discrete-transform duals.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest grid the spectral solvers accept.
pub const MIN_POINTS: usize = 64;

/// Uniform periodic grid `x_j = x_min + j·dx`, `j = 0..n`, with
/// `dx = (x_max − x_min)/n` (the right endpoint is the periodic image of the
/// left one).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::Grid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < MIN_POINTS || !n.is_power_of_two() {
            return Err(Error::Grid(format!(
                "point count must be a power of two >= {MIN_POINTS}, got {n}"
            )));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Grid on `[−half_width, half_width)`; `x = 0` is node `n/2`.
    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn period(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Index of the node closest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        let j = ((x - self.x_min) / self.dx()).round();
        j.clamp(0.0, (self.n - 1) as f64) as usize
    }

    /// Nyquist wavenumber `π/dx`.
    pub fn k_max(&self) -> f64 {
        PI / self.dx()
    }

    /// Dual wavenumbers in standard FFT order: `2πm/L` for `m < n/2`, then
    /// `2π(m − n)/L`. Entry `n/2` is the Nyquist mode `−π/dx`.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = 2.0 * PI / self.period();
        let n = self.n as isize;
        (0..n)
            .map(|m| {
                let m = if m < n / 2 { m } else { m - n };
                m as f64 * dk
            })
            .collect()
    }
}

/// Square grid, the same [`Grid1D`] along both axes. Values are stored
/// row-major with `x` as the fast index: `values[j_y · n + j_x]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    axis: Grid1D,
}

impl Grid2D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        Ok(Self {
            axis: Grid1D::new(x_min, x_max, n)?,
        })
    }

    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    pub fn axis(&self) -> &Grid1D {
        &self.axis
    }

    pub fn side(&self) -> usize {
        self.axis.len()
    }

    pub fn len(&self) -> usize {
        self.side() * self.side()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, jx: usize, jy: usize) -> usize {
        jy * self.side() + jx
    }

    pub fn point(&self, jx: usize, jy: usize) -> (f64, f64) {
        (self.axis.x(jx), self.axis.x(jy))
    }

    pub fn cell_area(&self) -> f64 {
        self.axis.dx() * self.axis.dx()
    }
}
