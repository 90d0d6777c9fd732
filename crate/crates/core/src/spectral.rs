//! Periodic spectral transforms on [`Grid1D`]/[`Grid2D`] with the
//! `w(k) = ∫ e^{ikx} W(x) dx` sign convention.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::grid::{Grid1D, Grid2D};

fn plans(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    let mut planner = FftPlanner::new();
    (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
}

/// `multiplier(k)` at every dual wavenumber in FFT order. The Nyquist mode
/// gets the average of `M(±π/dx)` so conjugate-symmetric symbols give real
/// fields.
pub fn spectrum(grid: &Grid1D, multiplier: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
    let n = grid.len();
    grid.wavenumbers()
        .iter()
        .enumerate()
        .map(|(m, &k)| {
            if m == n / 2 {
                (multiplier(k) + multiplier(-k)) * 0.5
            } else {
                multiplier(k)
            }
        })
        .collect()
}

/// Field on the grid whose transform is `multiplier(k)` (delta initial data
/// evolved by the multiplier): `W_j = (1/L) Σ_m M(k_m) e^{−i k_m x_j}`.
pub fn synthesize(grid: &Grid1D, multiplier: impl Fn(f64) -> Complex64) -> Vec<f64> {
    synthesize_spectrum(grid, &spectrum(grid, multiplier))
}

/// [`synthesize`] from precomputed multiplier values in FFT order.
pub fn synthesize_spectrum(grid: &Grid1D, values: &[Complex64]) -> Vec<f64> {
    let n = grid.len();
    assert_eq!(values.len(), n, "spectrum does not match grid");
    let x_min = grid.x_min();
    let mut buf: Vec<Complex64> = values
        .iter()
        .zip(grid.wavenumbers())
        .map(|(v, k)| v * Complex64::from_polar(1.0, -k * x_min))
        .collect();
    let (forward, _) = plans(n);
    forward.process(&mut buf);
    let inv_len = 1.0 / grid.period();
    buf.iter().map(|c| c.re * inv_len).collect()
}

/// Discrete transform of samples, `Ŵ_m = Σ_j W_j e^{2πi mj/n}` (unscaled).
pub fn analyze(values: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let (_, inverse) = plans(values.len());
    inverse.process(&mut buf);
    buf
}

/// Multiplies the spectrum of `values` by `multiplier(k)` and transforms back.
pub fn evolve(grid: &Grid1D, values: &[f64], multiplier: impl Fn(f64) -> Complex64) -> Vec<f64> {
    evolve_spectrum(grid, values, &spectrum(grid, multiplier))
}

/// [`evolve`] from precomputed multiplier values in FFT order.
pub fn evolve_spectrum(grid: &Grid1D, values: &[f64], multipliers: &[Complex64]) -> Vec<f64> {
    let n = grid.len();
    assert_eq!(values.len(), n, "field does not match grid");
    assert_eq!(multipliers.len(), n, "spectrum does not match grid");
    let mut spec = analyze(values);
    for (c, m) in spec.iter_mut().zip(multipliers) {
        *c *= m;
    }
    let (forward, _) = plans(n);
    forward.process(&mut spec);
    let inv_n = 1.0 / n as f64;
    spec.iter().map(|c| c.re * inv_n).collect()
}

fn transform_2d(data: &mut [Complex64], n: usize, fft: &Arc<dyn Fft<f64>>) {
    for row in data.chunks_mut(n) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for jx in 0..n {
        for jy in 0..n {
            column[jy] = data[jy * n + jx];
        }
        fft.process(&mut column);
        for jy in 0..n {
            data[jy * n + jx] = column[jy];
        }
    }
}

/// 2-D analogue of [`synthesize`] for a real radial-or-not multiplier
/// `M(k_x, k_y)`.
pub fn synthesize_2d(grid: &Grid2D, multiplier: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let n = grid.side();
    let axis = grid.axis();
    let ks = axis.wavenumbers();
    let x_min = axis.x_min();
    let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
    for jy in 0..n {
        let ky = ks[jy];
        for jx in 0..n {
            let kx = ks[jx];
            let phase = Complex64::from_polar(1.0, -(kx + ky) * x_min);
            buf[jy * n + jx] = phase * multiplier(kx, ky);
        }
    }
    let (forward, _) = plans(n);
    transform_2d(&mut buf, n, &forward);
    let inv_area = 1.0 / (axis.period() * axis.period());
    buf.iter().map(|c| c.re * inv_area).collect()
}

/// 2-D analogue of [`evolve`].
pub fn evolve_2d(grid: &Grid2D, values: &[f64], multiplier: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let n = grid.side();
    assert_eq!(values.len(), n * n, "field does not match grid");
    let ks = grid.axis().wavenumbers();
    let (forward, inverse) = plans(n);
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform_2d(&mut buf, n, &inverse);
    for jy in 0..n {
        for jx in 0..n {
            buf[jy * n + jx] *= multiplier(ks[jx], ks[jy]);
        }
    }
    transform_2d(&mut buf, n, &forward);
    let scale = 1.0 / (n * n) as f64;
    buf.iter().map(|c| c.re * scale).collect()
}
