//! Independent numerical oracles shared by the integration tests.
//!
//! Nothing here calls into the library's own quadrature or special-function
//! paths: integrals use a separate adaptive Simpson rule with Richardson
//! extrapolation.

#![allow(dead_code)]

use num_complex::Complex64;

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol.max(1e-17 * whole.abs()) {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of a real integrand on `[a, b]`.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    // pre-split so the first estimate already sees the integrand's structure
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = lo + h;
            let m = 0.5 * (lo + hi);
            let (fa, fm, fb) = (f(lo), f(m), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_step(&f, lo, hi, fa, fm, fb, whole, tol / pieces as f64, 22)
        })
        .sum()
}

pub fn simpson_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    let re = simpson(|x| f(x).re, a, b, tol);
    let im = simpson(|x| f(x).im, a, b, tol);
    Complex64::new(re, im)
}

/// `∫₀ˣ cos t² dt`, `∫₀ˣ sin t² dt` by direct quadrature.
pub fn fresnel_quadrature(x: f64) -> (f64, f64) {
    let c = simpson(|t| (t * t).cos(), 0.0, x, 1e-15);
    let s = simpson(|t| (t * t).sin(), 0.0, x, 1e-15);
    (c, s)
}

/// `∫ᵤ^∞ e^{it²} dt` for `u ≥ 0` along the steepest-descent ray
/// `t = u + s e^{iπ/4}`, where the integrand decays like `e^{−s² − √2 u s}`.
pub fn fresnel_tail_ray(u: f64) -> Complex64 {
    let dir = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let f = |s: f64| {
        let t = Complex64::new(u, 0.0) + dir * s;
        (Complex64::i() * t * t).exp() * dir
    };
    simpson_complex(f, 0.0, 9.0, 1e-15)
}

/// Mittag-Leffler `E_β(z)` by direct series summation with compensated
/// accumulation, plus the largest term magnitude (cancellation indicator).
pub fn mittag_leffler_series(beta: f64, z: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut largest: f64 = 0.0;
    for k in 0..600 {
        let term = z.powi(k) / statrs::function::gamma::gamma(beta * k as f64 + 1.0);
        if !term.is_finite() {
            break;
        }
        largest = largest.max(term.abs());
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k > 10 && term.abs() < 1e-20 {
            break;
        }
    }
    (sum, largest)
}

/// `(1/π) ∫₀^K cos(kx) e^{−k^α t} dk` by direct quadrature of the inverse
/// Fourier integral (for modest |x|).
pub fn stable_density_fourier(x: f64, alpha: f64, t: f64) -> f64 {
    let kmax = (40.0 / t).powf(1.0 / alpha);
    // split off [0, 1e-3·kmax] to resolve the k^α cusp
    let cusp = 1e-3 * kmax;
    let f = |k: f64| (k * x).cos() * (-k.powf(alpha) * t).exp();
    (simpson(f, 0.0, cusp, 1e-16) + simpson(f, cusp, kmax, 1e-15)) / std::f64::consts::PI
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Two-sample-free KS distance of samples against a CDF.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64 + Sync) -> f64 {
    use rayon::prelude::*;
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            (f - lo).abs().max((hi - f).abs())
        })
        .reduce(|| 0.0, f64::max)
}

/// Standard normal CDF via `erfc` from an independent implementation.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

/// Kummer `₁F₁(β; 1; −z) = Σ (β)_n (−z)^n / (n!)²`, the coupled-operator mode
/// amplitude at `z = k²t`; returns `(value, largest term)`.
pub fn kummer_series(beta: f64, z: f64) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut largest: f64 = 1.0;
    for n in 0..400 {
        let nf = n as f64;
        term *= (beta + nf) * (-z) / ((nf + 1.0) * (nf + 1.0));
        sum += term;
        largest = largest.max(term.abs());
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && n > 5 {
            break;
        }
    }
    (sum, largest)
}

/// `₁F₁(1/2; 1; −z) = e^{−z/2} I₀(z/2)` from the angular integral
/// `I₀(y) = (1/π) ∫₀^π e^{y cos φ} dφ`.
pub fn kummer_half(z: f64) -> f64 {
    let y = 0.5 * z;
    let i0 = simpson(
        |phi| (y * phi.cos()).exp(),
        0.0,
        std::f64::consts::PI,
        1e-15,
    ) / std::f64::consts::PI;
    (-y).exp() * i0
}

/// Skewed stable variate (cf `exp(−|k|^α (1 − iβ sgn(k) tan(πα/2)))`,
/// `α ≠ 1`) by the Chambers–Mallows–Stuck construction.
pub fn skewed_stable<R: rand::Rng>(rng: &mut R, alpha: f64, beta: f64) -> f64 {
    use std::f64::consts::PI;
    let tan = (PI * alpha / 2.0).tan();
    let b = (beta * tan).atan() / alpha;
    let s = (1.0 + beta * beta * tan * tan).powf(1.0 / (2.0 * alpha));
    let v = PI * (rng.gen::<f64>() - 0.5);
    let w = -(1.0 - rng.gen::<f64>()).ln();
    s * (alpha * (v + b)).sin() / v.cos().powf(1.0 / alpha)
        * ((v - alpha * (v + b)).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Periodized Cauchy density `Σ_m t/(π((x+mL)² + t²))` in closed form.
pub fn periodic_cauchy(x: f64, t: f64, period: f64) -> f64 {
    let a = 2.0 * std::f64::consts::PI / period;
    (a * t).sinh() / (period * ((a * t).cosh() - (a * x).cos()))
}

/// Periodized Gaussian with variance `var` (image sum).
pub fn periodic_gaussian(x: f64, var: f64, period: f64) -> f64 {
    let norm = 1.0 / (2.0 * std::f64::consts::PI * var).sqrt();
    (-20..=20)
        .map(|m| {
            let y = x + m as f64 * period;
            norm * (-y * y / (2.0 * var)).exp()
        })
        .sum()
}

/// `∫ᵤ^∞ e^{i(θ − t²)} dt` by direct adaptive quadrature on `[u, 50]` plus
/// the three-term asymptotic tail beyond `t = 50`.
pub fn oscillatory_mode(theta: f64, u: f64) -> Complex64 {
    let cut: f64 = 50.0;
    let body = simpson_complex(|t| Complex64::from_polar(1.0, theta - t * t), u, cut, 1e-13);
    // ∫_T^∞ e^{−it²} dt ~ e^{−iT²}(−i/(2T) + 1/(4T³) + 3i/(8T⁵))
    let tail = Complex64::from_polar(1.0, theta - cut * cut)
        * Complex64::new(
            1.0 / (4.0 * cut.powi(3)),
            -1.0 / (2.0 * cut) + 3.0 / (8.0 * cut.powi(5)),
        );
    body + tail
}
