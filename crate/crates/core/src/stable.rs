//! Symmetric α-stable laws with characteristic function
//! `w(k, t) = exp(−|k|^α t)`.
//!
//! Pointwise densities and distribution functions come from Zolotarev's
//! non-oscillatory integral representation (for `x > 0`, `α ≠ 1`):
//!
//! ```text
//! g(θ) = x^{α/(α−1)} (cos θ / sin αθ)^{α/(α−1)} cos((α−1)θ) / cos θ
//! f(x) = α / (π |α−1| x) ∫₀^{π/2} g e^{−g} dθ
//! S(x) = (1/π) ∫₀^{π/2} e^{−g} dθ            (α > 1)
//! S(x) = (1/π) ∫₀^{π/2} (1 − e^{−g}) dθ      (α < 1)
//! ```
//!
//! `g` is monotone in `θ`; the integrals are split where `g = 1`, the peak of
//! `g e^{−g}`. The periodic grid version ([`stable_density_on_grid`]) is the
//! spectral inversion shared with the diffusion solvers.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, Open01, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::fracops::FractionalOrder;
use crate::grid::Grid1D;
use crate::quad::Quadrature;
use crate::rng::fill_parallel;
use crate::specfun::gamma_fn;
use crate::spectral;

/// Spectral cutoff test: `exp(−K^α t)` must fall below this.
pub const CUTOFF_TAIL: f64 = 1e-16;

/// Negative inversion ripple smaller than this is clamped to zero.
pub const RIPPLE_CLAMP: f64 = 1e-12;

/// Hill estimates above this are reported as "no heavy tail".
pub const HEAVY_TAIL_LIMIT: f64 = 2.5;

/// Stability index and time (scale) of a symmetric stable law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: FractionalOrder,
    pub t: f64,
}

impl StableParams {
    pub fn new(alpha: f64, t: f64) -> Result<Self> {
        let alpha = FractionalOrder::new(alpha)?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Parameter {
                name: "t",
                value: t,
                expected: "(0, inf)",
            });
        }
        Ok(Self { alpha, t })
    }

    /// Scale `t^{1/α}` of the law.
    pub fn scale(&self) -> f64 {
        self.t.powf(1.0 / self.alpha.alpha())
    }
}

/// Characteristic function `exp(−|k|^α t)`.
pub fn stable_cf(k: f64, params: StableParams) -> f64 {
    (-k.abs().powf(params.alpha.alpha()) * params.t).exp()
}

/// `ln g(θ)` for the Zolotarev representation at `x > 0`.
fn ln_g(theta: f64, ln_x: f64, alpha: f64) -> f64 {
    let e = alpha / (alpha - 1.0);
    e * (ln_x + theta.cos().ln() - (alpha * theta).sin().ln()) + ((alpha - 1.0) * theta).cos().ln()
        - theta.cos().ln()
}

/// Point in `(0, π/2)` where `g = 1`, or an endpoint if `g` never crosses 1.
fn peak_angle(ln_x: f64, alpha: f64) -> f64 {
    // g increases in θ for α < 1 and decreases for α > 1
    let increasing = alpha < 1.0;
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let above = ln_g(mid, ln_x, alpha) > 0.0;
        if above == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn zolotarev_quad() -> Quadrature {
    Quadrature::new(1e-300, 1e-13).with_max_intervals(4000)
}

fn split_points(theta_star: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    if theta_star > 1e-12 && theta_star < FRAC_PI_2 - 1e-12 {
        pts.push(theta_star);
    }
    pts.push(FRAC_PI_2);
    pts
}

/// Standard (`t = 1`) symmetric stable density at `x`.
fn standard_density(x: f64, alpha: f64) -> f64 {
    let x = x.abs();
    if alpha == 1.0 {
        return 1.0 / (PI * (1.0 + x * x));
    }
    let f0 = gamma_fn(1.0 + 1.0 / alpha).unwrap_or(f64::NAN) / PI;
    // below this |x| the quadratic term of the Taylor series is negligible
    let g3 = gamma_fn(3.0 / alpha).unwrap_or(f64::INFINITY);
    let g1 = gamma_fn(1.0 / alpha).unwrap_or(1.0);
    let curvature = 0.5 * g3 / g1;
    if x == 0.0 || curvature * x * x < 1e-17 {
        return f0;
    }
    let ln_x = x.ln();
    let theta_star = peak_angle(ln_x, alpha);
    let integrand = |theta: f64| {
        let lg = ln_g(theta, ln_x, alpha);
        if lg > 6.6 {
            // g > 735: g e^{−g} underflows
            0.0
        } else {
            let g = lg.exp();
            g * (-g).exp()
        }
    };
    let est = zolotarev_quad().integrate_points(integrand, &split_points(theta_star));
    alpha / (PI * (alpha - 1.0).abs() * x) * est.value
}

/// Standard survival function `P(X > x)` for `x ≥ 0`.
fn standard_survival_pos(x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    if alpha == 1.0 {
        return 0.5 - x.atan() / PI;
    }
    let ln_x = x.ln();
    let theta_star = peak_angle(ln_x, alpha);
    let pts = split_points(theta_star);
    let q = zolotarev_quad();
    let est = if alpha > 1.0 {
        q.integrate_points(
            |theta: f64| {
                let lg = ln_g(theta, ln_x, alpha);
                if lg > 6.6 {
                    0.0
                } else {
                    (-lg.exp()).exp()
                }
            },
            &pts,
        )
    } else {
        q.integrate_points(
            |theta: f64| {
                let lg = ln_g(theta, ln_x, alpha);
                if lg > 6.6 {
                    1.0
                } else {
                    -(-lg.exp()).exp_m1()
                }
            },
            &pts,
        )
    };
    est.value / PI
}

/// Density `W(x, t)` of the symmetric stable law at each `x`.
///
/// Evaluated pointwise on the real line (no periodization); scaling
/// `W(x, t) = t^{−1/α} W(x t^{−1/α}, 1)`.
pub fn stable_density(xs: &[f64], params: StableParams) -> Result<Vec<f64>> {
    for &x in xs {
        finite("stable_density", "x", x)?;
    }
    let alpha = params.alpha.alpha();
    let scale = params.scale();
    Ok(xs
        .par_iter()
        .map(|&x| standard_density(x / scale, alpha) / scale)
        .collect())
}

/// Survival function `P(X > x)`.
pub fn stable_survival(x: f64, params: StableParams) -> Result<f64> {
    finite("stable_survival", "x", x)?;
    let alpha = params.alpha.alpha();
    let y = x / params.scale();
    if y >= 0.0 {
        Ok(standard_survival_pos(y, alpha))
    } else {
        Ok(1.0 - standard_survival_pos(-y, alpha))
    }
}

/// Distribution function `P(X ≤ x)`.
pub fn stable_cdf(x: f64, params: StableParams) -> Result<f64> {
    finite("stable_cdf", "x", x)?;
    let alpha = params.alpha.alpha();
    let y = x / params.scale();
    if y >= 0.0 {
        Ok(1.0 - standard_survival_pos(y, alpha))
    } else {
        Ok(standard_survival_pos(-y, alpha))
    }
}

/// Outcome of a spectral inversion on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    pub values: Vec<f64>,
    /// Number of slightly negative values clamped to zero.
    pub clamped: usize,
}

/// Checks the spectral cutoff rule `exp(−K^α t) < 1e−16`, `K = π/dx`.
pub fn check_resolution(grid: &Grid1D, params: StableParams) -> Result<()> {
    let cutoff = grid.k_max();
    let tail = (-cutoff.powf(params.alpha.alpha()) * params.t).exp();
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

/// Periodized density `Σ_m W(x + mL, t)` on `grid` by spectral inversion of
/// the characteristic function.
///
/// This is the same transform the diffusion solvers apply to delta initial
/// data. Ripple below `−1e−12` is an error; smaller negative values are
/// clamped and counted.
pub fn stable_density_on_grid(grid: &Grid1D, params: StableParams) -> Result<GridDensity> {
    check_resolution(grid, params)?;
    let mut values = spectral::synthesize(grid, |k| Complex64::new(stable_cf(k, params), 0.0));
    let mut clamped = 0;
    for v in values.iter_mut() {
        if *v < 0.0 {
            if *v < -RIPPLE_CLAMP {
                return Err(Error::NegativeDensity {
                    value: *v,
                    limit: RIPPLE_CLAMP,
                });
            }
            *v = 0.0;
            clamped += 1;
        }
    }
    Ok(GridDensity { values, clamped })
}

/// One draw from the standard symmetric stable law (cf `exp(−|k|^α)`) by the
/// Chambers–Mallows–Stuck construction.
pub fn standard_stable_variate<R: Rng + ?Sized>(rng: &mut R, alpha: f64) -> f64 {
    if alpha == 2.0 {
        let z: f64 = rng.sample(StandardNormal);
        return std::f64::consts::SQRT_2 * z;
    }
    let u: f64 = rng.sample(Open01);
    let v = PI * (u - 0.5);
    if alpha == 1.0 {
        return v.tan();
    }
    let w: f64 = rng.sample(Exp1);
    let av = alpha * v;
    av.sin() / v.cos().powf(1.0 / alpha)
        * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Reproducible set of stable variates.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub seed: u64,
    pub params: StableParams,
}

/// `n` i.i.d. symmetric stable variates with cf `exp(−|k|^α t)`.
pub fn stable_sample(n: usize, params: StableParams, seed: u64) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::SampleSize {
            what: "stable_sample",
            got: 0,
            need: 1,
        });
    }
    let alpha = params.alpha.alpha();
    let scale = params.scale();
    let values = fill_parallel(n, seed, |rng| scale * standard_stable_variate(rng, alpha));
    Ok(SampleSet {
        values,
        seed,
        params,
    })
}

/// Symmetric α-stable time series (`t = 1`).
pub fn sas_series(n: usize, alpha: f64, seed: u64) -> Result<SampleSet> {
    stable_sample(n, StableParams::new(alpha, 1.0)?, seed)
}

/// Hill estimate of the tail index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailIndex {
    pub alpha: f64,
    /// Number of upper order statistics used.
    pub k: usize,
    /// False when the estimate exceeds [`HEAVY_TAIL_LIMIT`].
    pub heavy_tail: bool,
}

/// Minimum sample size accepted by [`tail_index`].
pub const TAIL_MIN_SAMPLES: usize = 10_000;

/// Hill estimator over the `top_fraction` largest `|x|`:
/// `α̂ = k / Σ_{i<k} ln(X_(i) / X_(k))`.
pub fn tail_index(values: &[f64], top_fraction: f64) -> Result<TailIndex> {
    if !(top_fraction > 0.0 && top_fraction <= 0.1) {
        return Err(Error::Parameter {
            name: "top_fraction",
            value: top_fraction,
            expected: "(0, 0.1]",
        });
    }
    if values.len() < TAIL_MIN_SAMPLES {
        return Err(Error::SampleSize {
            what: "tail_index",
            got: values.len(),
            need: TAIL_MIN_SAMPLES,
        });
    }
    let k = ((top_fraction * values.len() as f64).floor() as usize).max(1);
    let mut mags: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    // the k+1 largest at the front, in descending order
    mags.select_nth_unstable_by(k, |a, b| b.total_cmp(a));
    let threshold = mags[k];
    let sum: f64 = mags[..k].iter().map(|&x| (x / threshold).ln()).sum();
    let alpha = k as f64 / sum;
    Ok(TailIndex {
        alpha,
        k,
        heavy_tail: alpha <= HEAVY_TAIL_LIMIT,
    })
}
