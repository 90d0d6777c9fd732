//! Spectral solvers for the classical, space-fractional, time-fractional and
//! coupled space-time diffusion equations, and the continuous-time random
//! walk whose scaling limits they describe.
//!
//! All solvers work on periodic grids with the transform convention
//! `w(k, t) = ∫ e^{ikx} W(x, t) dx`. Delta initial data is represented by
//! `ŵ(k, 0) ≡ 1`, never as a grid spike, so the output is the exact
//! periodization of the propagator up to spectral truncation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, Open01, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::fracops::{
    asymmetric_generator_symbol, laplacian_symbol, AsymmetryWeights, FractionalOrder, TimeOrder,
};
use crate::grid::{Grid1D, Grid2D};
use crate::rng::fill_parallel;
use crate::specfun::mittag_leffler;
use crate::spectral;
use crate::stable::{standard_stable_variate, StableParams, CUTOFF_TAIL};

/// Tolerance on the mass of sampled initial data.
pub const MASS_TOLERANCE: f64 = 1e-8;

/// Talbot node counts for the coupled solver: the answer and the check.
pub const TALBOT_NODES: usize = 32;
pub const TALBOT_CHECK_NODES: usize = 48;

/// Largest accepted `|f₃₂ − f₄₈|` per mode. Mode amplitudes are bounded by
/// the `k = 0` amplitude 1, so the tolerance is absolute on that scale.
pub const TALBOT_TOLERANCE: f64 = 1e-8;

/// Initial concentration.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// Unit point source at `x = 0`.
    Delta,
    /// Samples on the solver grid (row-major for 2-D grids), unit mass.
    Sampled(Vec<f64>),
}

/// Concentration field `W(x, t)` on a 1-D grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Propagator {
    pub grid: Grid1D,
    pub t: f64,
    pub values: Vec<f64>,
    /// Trapezoid integral of `values` (periodic grid).
    pub mass: f64,
}

impl Propagator {
    fn new(grid: Grid1D, t: f64, values: Vec<f64>) -> Self {
        let mass = values.iter().sum::<f64>() * grid.dx();
        Self {
            grid,
            t,
            values,
            mass,
        }
    }

    /// Value at the grid node nearest `x`.
    pub fn at(&self, x: f64) -> f64 {
        self.values[self.grid.nearest(x)]
    }

    /// Smallest value, before any clamping.
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `∫ x^p W dx` by the trapezoid rule.
    pub fn moment(&self, p: i32) -> f64 {
        let dx = self.grid.dx();
        self.grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(x, w)| x.powi(p) * w)
            .sum::<f64>()
            * dx
    }

    /// Point where the cumulative mass reaches `level` (as a fraction of the
    /// total), with the cumulative sum read as the distribution function at
    /// cell edges `x_j + dx/2` and interpolated linearly.
    pub fn quantile(&self, level: f64) -> f64 {
        let dx = self.grid.dx();
        let target = level * self.mass;
        let mut acc = 0.0;
        for (j, w) in self.values.iter().enumerate() {
            let next = acc + w * dx;
            if next >= target {
                let frac = if next > acc {
                    (target - acc) / (next - acc)
                } else {
                    0.0
                };
                return self.grid.x(j) - 0.5 * dx + frac * dx;
            }
            acc = next;
        }
        self.grid.x_max()
    }
}

/// Concentration field `W(x, y, t)` on a square 2-D grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Propagator2D {
    pub grid: Grid2D,
    pub t: f64,
    pub values: Vec<f64>,
    pub mass: f64,
}

impl Propagator2D {
    fn new(grid: Grid2D, t: f64, values: Vec<f64>) -> Self {
        let mass = values.iter().sum::<f64>() * grid.cell_area();
        Self {
            grid,
            t,
            values,
            mass,
        }
    }

    pub fn at(&self, x: f64, y: f64) -> f64 {
        let axis = self.grid.axis();
        self.values[self.grid.index(axis.nearest(x), axis.nearest(y))]
    }
}

fn check_time(function: &'static str, t: f64) -> Result<()> {
    finite(function, "t", t)?;
    if t < 0.0 {
        return Err(Error::Domain {
            function,
            name: "t",
            value: t,
        });
    }
    Ok(())
}

fn check_sampled(values: &[f64], len: usize, cell: f64) -> Result<()> {
    if values.len() != len {
        return Err(Error::Grid(format!(
            "initial data has {} samples, grid has {len}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Parameter {
            name: "w0",
            value: *v,
            expected: "finite samples",
        });
    }
    let mass = values.iter().sum::<f64>() * cell;
    if (mass - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Parameter {
            name: "w0",
            value: mass,
            expected: "unit mass (within 1e-8)",
        });
    }
    Ok(())
}

/// The cutoff rule for delta data: the multiplier modulus at the Nyquist
/// wavenumber must be below [`CUTOFF_TAIL`].
fn check_cutoff(function: &'static str, cutoff: f64, tail: f64, t: f64) -> Result<()> {
    if t == 0.0 {
        return Err(Error::Domain {
            function,
            name: "t",
            value: t,
        });
    }
    if tail < CUTOFF_TAIL {
        Ok(())
    } else {
        Err(Error::Resolution {
            cutoff,
            tail,
            limit: CUTOFF_TAIL,
        })
    }
}

fn apply_1d(
    grid: &Grid1D,
    t: f64,
    w0: &InitialData,
    multipliers: &[Complex64],
) -> Result<Propagator> {
    let values = match w0 {
        InitialData::Delta => spectral::synthesize_spectrum(grid, multipliers),
        InitialData::Sampled(v) => {
            check_sampled(v, grid.len(), grid.dx())?;
            if t == 0.0 {
                v.clone()
            } else {
                spectral::evolve_spectrum(grid, v, multipliers)
            }
        }
    };
    Ok(Propagator::new(*grid, t, values))
}

/// Classical diffusion `∂_t W = ½ ∂_x² W`, multiplier `exp(−k²t/2)`.
///
/// For delta data this is the Gaussian `(2πt)^{−1/2} e^{−x²/2t}`.
pub fn solve_classical(grid: &Grid1D, t: f64, w0: &InitialData) -> Result<Propagator> {
    check_time("solve_classical", t)?;
    if *w0 == InitialData::Delta {
        let k = grid.k_max();
        check_cutoff("solve_classical", k, (-0.5 * k * k * t).exp(), t)?;
    }
    let m = spectral::spectrum(grid, |k| Complex64::new((-0.5 * k * k * t).exp(), 0.0));
    apply_1d(grid, t, w0, &m)
}

/// Space-fractional diffusion `∂_t W = [p∂_x^α + q∂_{−x}^α] W` with the
/// stable-generator normalization (symmetric case `−|k|^α`).
pub fn solve_space_fractional(
    grid: &Grid1D,
    t: f64,
    order: FractionalOrder,
    weights: AsymmetryWeights,
    w0: &InitialData,
) -> Result<Propagator> {
    check_time("solve_space_fractional", t)?;
    // surfaces the α = 1 skewed case before any work
    asymmetric_generator_symbol(1.0, order, weights)?;
    if *w0 == InitialData::Delta {
        let k = grid.k_max();
        check_cutoff(
            "solve_space_fractional",
            k,
            (-k.powf(order.alpha()) * t).exp(),
            t,
        )?;
    }
    let m = spectral::spectrum(grid, |k| {
        let symbol = asymmetric_generator_symbol(k, order, weights).expect("validated above");
        (symbol * t).exp()
    });
    apply_1d(grid, t, w0, &m)
}

/// 2-D fractional Laplacian diffusion `∂_t W = Δ^{α/2} W`, multiplier
/// `exp(−‖k‖^α t)`.
pub fn solve_space_fractional_2d(
    grid: &Grid2D,
    t: f64,
    order: FractionalOrder,
    w0: &InitialData,
) -> Result<Propagator2D> {
    check_time("solve_space_fractional_2d", t)?;
    let alpha = order.alpha();
    let multiplier = |kx: f64, ky: f64| (laplacian_symbol(&[kx, ky], order) * t).exp();
    let values = match w0 {
        InitialData::Delta => {
            let k = grid.axis().k_max();
            check_cutoff(
                "solve_space_fractional_2d",
                k,
                (-k.powf(alpha) * t).exp(),
                t,
            )?;
            spectral::synthesize_2d(grid, multiplier)
        }
        InitialData::Sampled(v) => {
            check_sampled(v, grid.len(), grid.cell_area())?;
            if t == 0.0 {
                v.clone()
            } else {
                spectral::evolve_2d(grid, v, multiplier)
            }
        }
    };
    Ok(Propagator2D::new(*grid, t, values))
}

/// Time-fractional (Zaslavsky) diffusion
/// `∂_t^β W = ∂_{|x|}^α W + W(x, 0) t^{−β}/Γ(1−β)`, solved mode by mode as
/// `ŵ(k, t) = E_β(−|k|^α t^β) ŵ(k, 0)`.
///
/// The multiplier decays only like `|k|^{−α}`, so delta data is not subject
/// to the exponential cutoff rule; the truncated spectrum shows up as grid
/// ripple near the origin.
pub fn solve_zaslavsky(
    grid: &Grid1D,
    t: f64,
    order: FractionalOrder,
    torder: TimeOrder,
    w0: &InitialData,
) -> Result<Propagator> {
    check_time("solve_zaslavsky", t)?;
    if t == 0.0 && *w0 == InitialData::Delta {
        return Err(Error::Domain {
            function: "solve_zaslavsky",
            name: "t",
            value: t,
        });
    }
    let alpha = order.alpha();
    let beta = torder.beta();
    let tb = t.powf(beta);
    let ks = grid.wavenumbers();
    let n = grid.len();
    let m: Vec<Complex64> = ks
        .par_iter()
        .map(|&k| {
            let e = mittag_leffler(beta, -k.abs().powf(alpha) * tb).expect("valid arguments");
            Complex64::new(e, 0.0)
        })
        .collect();
    debug_assert_eq!(m.len(), n);
    apply_1d(grid, t, w0, &m)
}

/// Fixed-Talbot inversion of `F` at time `t` with `nodes` contour points:
/// `s(θ) = rθ(cot θ + i)`, `r = 2M/(5t)`.
pub fn talbot_inverse(f: impl Fn(Complex64) -> Complex64, t: f64, nodes: usize) -> f64 {
    let m = nodes as f64;
    let r = 2.0 * m / (5.0 * t);
    let mut total = 0.5 * f(Complex64::new(r, 0.0)).re * (r * t).exp();
    for j in 1..nodes {
        let theta = j as f64 * PI / m;
        let cot = 1.0 / theta.tan();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        total += ((s * t).exp() * f(s) * Complex64::new(1.0, sigma)).re;
    }
    r / m * total
}

/// Amplitude `ŵ(k, t)` of the coupled-operator propagator, the inverse
/// Laplace transform of `s^{β−1}/(s + k²)^β`, with its Talbot residual.
pub fn coupled_mode(k: f64, t: f64, torder: TimeOrder) -> Result<(f64, f64)> {
    let beta = torder.beta();
    // the contour runs into Re s < 0, so the symbol is continued past the
    // Laplace half-plane on the principal branch (cut along s < −k²)
    let transform = |s: Complex64| s.powf(beta - 1.0) / (s + k * k).powf(beta);
    let value = talbot_inverse(transform, t, TALBOT_NODES);
    let check = talbot_inverse(transform, t, TALBOT_CHECK_NODES);
    let residual = (value - check).abs();
    if !(residual <= TALBOT_TOLERANCE) {
        return Err(Error::Inversion {
            k,
            residual,
            tolerance: TALBOT_TOLERANCE,
        });
    }
    Ok((value, residual))
}

/// Coupled space-time fractional diffusion with Fourier–Laplace symbol
/// `(s + k²)^β`: `ŵ(k, s) = s^{β−1}/(s + k²)^β`, inverted per mode by
/// fixed-Talbot quadrature.
pub fn solve_coupled(
    grid: &Grid1D,
    t: f64,
    torder: TimeOrder,
    w0: &InitialData,
) -> Result<Propagator> {
    check_time("solve_coupled", t)?;
    if t == 0.0 {
        return Err(Error::Domain {
            function: "solve_coupled",
            name: "t",
            value: t,
        });
    }
    let ks = grid.wavenumbers();
    let m = ks
        .par_iter()
        .map(|&k| coupled_mode(k, t, torder).map(|(v, _)| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    apply_1d(grid, t, w0, &m)
}

/// Jump distribution of a random walk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum JumpLaw {
    /// Normal jumps with the given variance (zero allowed: a pure renewal
    /// counter).
    Gaussian { variance: f64 },
    /// Symmetric stable jumps with cf `exp(−|k|^α t)`.
    Stable(StableParams),
}

/// Waiting-time distribution between jumps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WaitLaw {
    Exponential {
        rate: f64,
    },
    /// `P(J > t) = (t/scale)^{−β}` for `t ≥ scale`.
    Pareto {
        beta: f64,
        scale: f64,
    },
}

/// Whether each jump depends on the wait that precedes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coupling {
    Independent,
    /// Given wait `J`, the jump is `Normal(0, σ²J)` with `σ²` the Gaussian
    /// jump variance (`σ² = 2` gives variance `2J`).
    Coupled,
}

/// A continuous-time random walk observed at time `horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CtrwModel {
    pub jump: JumpLaw,
    pub wait: WaitLaw,
    pub coupling: Coupling,
    pub horizon: f64,
}

impl CtrwModel {
    pub fn new(jump: JumpLaw, wait: WaitLaw, coupling: Coupling, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::Parameter {
                name: "horizon",
                value: horizon,
                expected: "(0, inf)",
            });
        }
        match jump {
            JumpLaw::Gaussian { variance } if !(variance >= 0.0 && variance.is_finite()) => {
                return Err(Error::Parameter {
                    name: "variance",
                    value: variance,
                    expected: "[0, inf)",
                })
            }
            JumpLaw::Stable(p) if coupling == Coupling::Coupled => {
                return Err(Error::Unsupported {
                    function: "CtrwModel",
                    name: "alpha",
                    value: p.alpha.alpha(),
                    reason:
                        "coupled walks draw Gaussian jumps with variance proportional to the wait",
                })
            }
            _ => {}
        }
        match wait {
            WaitLaw::Exponential { rate } if !(rate > 0.0 && rate.is_finite()) => {
                return Err(Error::Parameter {
                    name: "rate",
                    value: rate,
                    expected: "(0, inf)",
                })
            }
            WaitLaw::Pareto { beta, .. } if !(beta > 0.0 && beta <= 1.0) => {
                return Err(Error::Parameter {
                    name: "beta",
                    value: beta,
                    expected: "(0, 1]",
                })
            }
            WaitLaw::Pareto { scale, .. } if !(scale > 0.0 && scale.is_finite()) => {
                return Err(Error::Parameter {
                    name: "scale",
                    value: scale,
                    expected: "(0, inf)",
                })
            }
            _ => {}
        }
        Ok(Self {
            jump,
            wait,
            coupling,
            horizon,
        })
    }
}

/// Walker positions at the horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkEnsemble {
    pub positions: Vec<f64>,
    /// Jumps completed by the horizon, per walker.
    pub renewals: Vec<u64>,
    pub seed: u64,
    pub model: CtrwModel,
}

/// Minimum ensemble size accepted by [`ctrw_simulate`].
pub const MIN_WALKERS: usize = 1000;

fn draw_wait<R: Rng + ?Sized>(rng: &mut R, law: WaitLaw) -> f64 {
    match law {
        WaitLaw::Exponential { rate } => {
            let e: f64 = rng.sample(Exp1);
            e / rate
        }
        WaitLaw::Pareto { beta, scale } => {
            let u: f64 = rng.sample(Open01);
            scale * u.powf(-1.0 / beta)
        }
    }
}

/// Simulates `n_walkers` independent walks from the origin.
///
/// Each walker alternates (wait, jump) pairs; a jump happens at the end of
/// its wait, so the position at the horizon excludes the jump whose wait
/// overshoots it. Walkers are generated in fixed blocks with one RNG stream
/// per block, so the ensemble does not depend on the thread count.
pub fn ctrw_simulate(model: &CtrwModel, n_walkers: usize, seed: u64) -> Result<WalkEnsemble> {
    if n_walkers < MIN_WALKERS {
        return Err(Error::SampleSize {
            what: "ctrw_simulate",
            got: n_walkers,
            need: MIN_WALKERS,
        });
    }
    let m = *model;
    let walks = fill_parallel(n_walkers, seed, |rng| {
        let mut clock = 0.0;
        let mut x = 0.0;
        let mut count = 0u64;
        loop {
            let wait = draw_wait(rng, m.wait);
            clock += wait;
            if clock > m.horizon {
                break;
            }
            x += match (m.coupling, m.jump) {
                (Coupling::Coupled, JumpLaw::Gaussian { variance }) => {
                    let z: f64 = rng.sample(StandardNormal);
                    (variance * wait).sqrt() * z
                }
                (_, JumpLaw::Gaussian { variance }) => {
                    let z: f64 = rng.sample(StandardNormal);
                    variance.sqrt() * z
                }
                (_, JumpLaw::Stable(p)) => {
                    p.scale() * standard_stable_variate(rng, p.alpha.alpha())
                }
            };
            count += 1;
        }
        (x, count)
    });
    let (positions, renewals) = walks.into_iter().unzip();
    Ok(WalkEnsemble {
        positions,
        renewals,
        seed,
        model: m,
    })
}

/// Empirical characteristic function `(1/N) Σ cos(k X_j)` of a symmetric
/// ensemble.
pub fn empirical_cf(positions: &[f64], k: f64) -> f64 {
    positions.par_iter().map(|x| (k * x).cos()).sum::<f64>() / positions.len() as f64
}
