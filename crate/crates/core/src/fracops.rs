//! Fractional derivative operators in physical space and their Fourier and
//! Laplace symbols.
//!
//! Transform convention: `w(k) = ∫ e^{ikx} W(x) dx`, so `∂_x ↔ −ik`. All
//! fractional powers of complex numbers take the principal branch,
//! `arg ∈ (−π, π]`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::quad::{QuadValue, Quadrature};

/// Space-fractional order `α ∈ (0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 2.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::Parameter {
                name: "alpha",
                value: alpha,
                expected: "(0, 2]",
            })
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }
}

/// Time-fractional order `β ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct TimeOrder(f64);

impl TimeOrder {
    pub fn new(beta: f64) -> Result<Self> {
        if beta > 0.0 && beta <= 1.0 {
            Ok(Self(beta))
        } else {
            Err(Error::Parameter {
                name: "beta",
                value: beta,
                expected: "(0, 1]",
            })
        }
    }

    pub fn beta(self) -> f64 {
        self.0
    }
}

/// Jump asymmetry: `p` is the asymptotic fraction of positive jumps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryWeights {
    p: f64,
    q: f64,
}

impl AsymmetryWeights {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter {
                name: "p",
                value: p,
                expected: "[0, 1]",
            });
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Parameter {
                name: "q",
                value: q,
                expected: "[0, 1]",
            });
        }
        if (p + q - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter {
                name: "q",
                value: q,
                expected: "1 - p",
            });
        }
        Ok(Self { p, q })
    }

    pub fn from_p(p: f64) -> Result<Self> {
        Self::new(p, 1.0 - p)
    }

    pub fn symmetric() -> Self {
        Self { p: 0.5, q: 0.5 }
    }

    pub fn p(self) -> f64 {
        self.p
    }

    pub fn q(self) -> f64 {
        self.q
    }

    pub fn is_symmetric(self) -> bool {
        self.p == self.q
    }

    /// Skewness `p − q` of the matching stable law.
    pub fn skewness(self) -> f64 {
        self.p - self.q
    }
}

/// Samples `f(x0 + j·h)`, `j = 0..len`, of a function on a uniform grid
/// whose left endpoint is the lower terminal of the fractional operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    x0: f64,
    h: f64,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(x0: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) || !x0.is_finite() {
            return Err(Error::Grid(format!(
                "need finite x0 and step h > 0, got x0 = {x0}, h = {h}"
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("sample value {v} is not finite")));
        }
        Ok(Self { x0, h, values })
    }

    /// Samples `f` at `n + 1` nodes covering `[a, b]` including both ends.
    pub fn from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Grid("need at least one interval".into()));
        }
        let h = (b - a) / n as f64;
        let values = (0..=n).map(|j| f(a + j as f64 * h)).collect();
        Self::new(a, h, values)
    }

    /// Builds from explicit abscissae, which must be uniformly spaced.
    pub fn from_points(xs: &[f64], values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::Grid(format!(
                "{} abscissae for {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::Grid("need at least two samples".into()));
        }
        let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        for (j, &x) in xs.iter().enumerate() {
            let expected = xs[0] + j as f64 * h;
            if (x - expected).abs() > 1e-9 * h.abs().max(x.abs()) {
                return Err(Error::Grid(format!(
                    "nonuniform grid: x[{j}] = {x}, expected {expected}"
                )));
            }
        }
        Self::new(xs[0], h, values)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.h
    }
}

/// Grünwald–Letnikov weights `w_m = (−1)^m C(α, m)`.
pub fn gl_weights(alpha: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    if count == 0 {
        return w;
    }
    w.push(1.0);
    for m in 1..count {
        let prev = w[m - 1];
        w.push(prev * (m as f64 - 1.0 - alpha) / m as f64);
    }
    w
}

/// Grünwald–Letnikov derivative of order `α ∈ (0, 1]` with the lower
/// terminal at the first sample:
/// `D^α f(x_j) ≈ h^{−α} Σ_{m=0}^{j} w_m f(x_{j−m})`.
///
/// First-order accurate; reduces to the backward difference at `α = 1`.
pub fn gl_derivative(f: &SampledFunction, order: FractionalOrder) -> Result<SampledFunction> {
    let alpha = order.alpha();
    if alpha > 1.0 {
        return Err(Error::Parameter {
            name: "alpha",
            value: alpha,
            expected: "(0, 1] for the Grünwald–Letnikov operator",
        });
    }
    let n = f.len();
    let w = gl_weights(alpha, n);
    let scale = f.h.powf(-alpha);
    let values = (0..n)
        .map(|j| {
            let sum: f64 = (0..=j).map(|m| w[m] * f.values[j - m]).sum();
            scale * sum
        })
        .collect();
    Ok(SampledFunction {
        x0: f.x0,
        h: f.h,
        values,
    })
}

fn abel_transform<T: QuadValue>(f: &impl Fn(f64) -> T, z: f64, z0: f64) -> T {
    // ∫_{z0}^{z} f(ζ)/√(z−ζ) dζ, split at the midpoint so that both endpoint
    // behaviours (√ at z0 in f, 1/√ at z in the kernel) become smooth
    let span = z - z0;
    let mid = 0.5 * span;
    let q = Quadrature::new(1e-15, 1e-13).with_max_intervals(3000);
    let lower = q.integrate(
        |r: f64| {
            let r2 = r * r;
            f(z0 + r2) * (2.0 * r / (span - r2).sqrt())
        },
        0.0,
        mid.sqrt(),
    );
    let upper = q.integrate(|s: f64| f(z - s * s) * 2.0, 0.0, mid.sqrt());
    lower.value + upper.value
}

fn rl_half_generic<T: QuadValue>(f: impl Fn(f64) -> T, z: f64, z0: f64) -> Result<T> {
    finite("rl_half_derivative", "z", z)?;
    finite("rl_half_derivative", "z0", z0)?;
    if z <= z0 {
        return Err(Error::Domain {
            function: "rl_half_derivative",
            name: "z",
            value: z,
        });
    }
    let h = (1e-5 * z.abs().max(1.0)).min(0.5 * (z - z0));
    let forward = abel_transform(&f, z + h, z0);
    let backward = abel_transform(&f, z - h, z0);
    Ok((forward - backward) * (1.0 / (2.0 * h * PI.sqrt())))
}

/// Riemann–Liouville half derivative
/// `₀D^{1/2} f(z) = (1/√π) ∂_z ∫_{z0}^{z} f(ζ) dζ / √(z − ζ)`.
///
/// The Abel integral is evaluated by adaptive quadrature and differentiated by
/// a central difference with step `1e−5·max(1, |z|)`.
pub fn rl_half_derivative(f: impl Fn(f64) -> f64, z: f64, z0: f64) -> Result<f64> {
    rl_half_generic(f, z, z0)
}

/// Complex-valued variant of [`rl_half_derivative`].
pub fn rl_half_derivative_complex(
    f: impl Fn(f64) -> Complex64,
    z: f64,
    z0: f64,
) -> Result<Complex64> {
    rl_half_generic(f, z, z0)
}

/// Riesz symbol `−|k|^α` of the symmetric operator `∂_{|x|}^α`.
pub fn riesz_symbol(k: f64, order: FractionalOrder) -> f64 {
    -k.abs().powf(order.alpha())
}

/// `(ik)^α` on the principal branch.
fn i_k_pow(k: f64, alpha: f64) -> Complex64 {
    if k == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(k.abs().powf(alpha), k.signum() * FRAC_PI_2 * alpha)
}

/// Symbol `p(−ik)^α + q(ik)^α` of `p∂_x^α + q∂_{−x}^α`.
///
/// For `p = q` this is `|k|^α cos(πα/2)`, which vanishes identically at
/// `α = 1`; that case is rejected. The raw combination has a nonpositive real
/// part only for `α ≥ 1`; see [`asymmetric_generator_symbol`] for the
/// normalized form the solvers use.
pub fn asymmetric_symbol(k: f64, order: FractionalOrder, w: AsymmetryWeights) -> Result<Complex64> {
    let alpha = order.alpha();
    if alpha == 1.0 && w.is_symmetric() {
        return Err(Error::DegenerateSymbol);
    }
    Ok(i_k_pow(-k, alpha) * w.p + i_k_pow(k, alpha) * w.q)
}

/// Evolution symbol of the asymmetric stable generator,
/// `[p(−ik)^α + q(ik)^α] / (−cos(πα/2))`, for `α ≠ 1`.
///
/// The normalization makes the symmetric case equal to `−|k|^α` for every
/// `α` and keeps the real part nonpositive on all of `(0, 2]`; for `k > 0` it
/// equals `−k^α (1 − i(p − q) tan(πα/2))`. At `α = 1` the symmetric case
/// routes through [`riesz_symbol`] and skewed jumps are unsupported.
pub fn asymmetric_generator_symbol(
    k: f64,
    order: FractionalOrder,
    w: AsymmetryWeights,
) -> Result<Complex64> {
    let alpha = order.alpha();
    if w.is_symmetric() {
        return Ok(Complex64::new(riesz_symbol(k, order), 0.0));
    }
    if alpha == 1.0 {
        return Err(Error::Unsupported {
            function: "asymmetric_generator_symbol",
            name: "alpha",
            value: alpha,
            reason: "skewed jumps at alpha = 1 need a logarithmic drift term",
        });
    }
    let raw = asymmetric_symbol(k, order, w)?;
    Ok(raw / (-(FRAC_PI_2 * alpha).cos()))
}

/// Symbol `−‖k‖^α` of the fractional Laplacian `Δ^{α/2}`.
pub fn laplacian_symbol(kvec: &[f64], order: FractionalOrder) -> f64 {
    let norm = kvec.iter().map(|k| k * k).sum::<f64>().sqrt();
    -norm.powf(order.alpha())
}

/// Fourier–Laplace symbol `(s + k²)^β` of the coupled space-time operator.
pub fn coupled_symbol(s: Complex64, k: f64, order: TimeOrder) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::HalfPlane(s.re));
    }
    let base = s + k * k;
    if order.beta() == 1.0 {
        return Ok(base);
    }
    Ok(base.powf(order.beta()))
}
