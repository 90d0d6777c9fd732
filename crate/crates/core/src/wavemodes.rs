//! Modes of the Helmholtz and wave equations built from the complementary
//! Fresnel integral, and residual checks for them.
//!
//! Every oscillatory integral reduces to `E(u) = ∫ᵤ^∞ e^{it²} dt`:
//!
//! ```text
//! ∫ᵤ^∞ cos(θ − t²) dt = Re[e^{iθ} conj E(u)]
//! ∫ᵤ^∞ sin(θ − t²) dt = Im[e^{iθ} conj E(u)]
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::fracops::rl_half_derivative_complex;
use crate::grid::Grid2D;
use crate::specfun::{fresnel_comp, fresnel_comp_conj};

/// Width of the band (in grid steps) dropped around singular loci.
pub const EXCLUSION_STEPS: f64 = 3.0;

/// Wavevector `(a, b)` of a 2-D mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveVector {
    pub a: f64,
    pub b: f64,
}

impl WaveVector {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        finite("WaveVector", "a", a)?;
        finite("WaveVector", "b", b)?;
        if a == 0.0 && b == 0.0 {
            return Err(Error::Parameter {
                name: "k",
                value: 0.0,
                expected: "nonzero wavevector",
            });
        }
        Ok(Self { a, b })
    }

    pub fn norm(&self) -> f64 {
        self.a.hypot(self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeFamily {
    PlaneSin,
    PlaneCos,
    FresnelCos,
    FresnelSin,
}

impl ModeFamily {
    pub const ALL: [ModeFamily; 4] = [
        ModeFamily::PlaneSin,
        ModeFamily::PlaneCos,
        ModeFamily::FresnelCos,
        ModeFamily::FresnelSin,
    ];

    pub fn is_fresnel(self) -> bool {
        matches!(self, ModeFamily::FresnelCos | ModeFamily::FresnelSin)
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeFamily::PlaneSin => "plane_sin",
            ModeFamily::PlaneCos => "plane_cos",
            ModeFamily::FresnelCos => "fresnel_cos",
            ModeFamily::FresnelSin => "fresnel_sin",
        }
    }
}

impl std::str::FromStr for ModeFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModeFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown mode family '{s}' (plane_sin, plane_cos, fresnel_cos, fresnel_sin)"
                )
            })
    }
}

/// Branch sign: `ax ± by` for edge waves, `√(±ik)` for eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Selects a mode: family, wavevector, sign and (wave equation only) the
/// lower terminal `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub family: ModeFamily,
    pub wavevector: WaveVector,
    pub sign: Sign,
    pub lower_terminal: f64,
}

impl ModeSpec {
    pub fn new(family: ModeFamily, wavevector: WaveVector, sign: Sign) -> Self {
        Self {
            family,
            wavevector,
            sign,
            lower_terminal: 0.0,
        }
    }
}

/// `e^{iθ} ∫ᵤ^∞ e^{−it²} dt`, whose real and imaginary parts are the two
/// Fresnel families.
fn fresnel_mode(theta: f64, u: f64) -> Result<Complex64> {
    Ok(Complex64::from_polar(1.0, theta) * fresnel_comp_conj(u)?)
}

fn family_value(family: ModeFamily, theta: f64, u: f64) -> Result<f64> {
    Ok(match family {
        ModeFamily::PlaneSin => theta.sin(),
        ModeFamily::PlaneCos => theta.cos(),
        ModeFamily::FresnelCos => fresnel_mode(theta, u)?.re,
        ModeFamily::FresnelSin => fresnel_mode(theta, u)?.im,
    })
}

/// The 1-D real modes `sin kx`, `cos kx`, `∫_{√(kx)}^∞ cos(kx − t²) dt`,
/// `∫_{√(kx)}^∞ sin(kx − t²) dt`.
///
/// The Fresnel pair satisfies the Helmholtz equation only up to a power of
/// `x`: `Φ'' + k²Φ = −ik^{3/2}/(2√x) + √k/(4x^{3/2})` for the complex mode.
pub fn helmholtz_modes_1d(k: f64, x: f64, family: ModeFamily) -> Result<f64> {
    finite("helmholtz_modes_1d", "x", x)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Parameter {
            name: "k",
            value: k,
            expected: "(0, inf)",
        });
    }
    if x < 0.0 {
        return Err(Error::Domain {
            function: "helmholtz_modes_1d",
            name: "x",
            value: x,
        });
    }
    family_value(family, k * x, (k * x).sqrt())
}

/// Extended eigenfunction of the half-order factor `₀D^{1/2} + √(±ik)`:
///
/// ```text
/// y₊(x) = (1 − i)/√(2πkx) + (2/√π) e^{ikx} ∫_{√(kx)}^∞ e^{−it²} dt
/// y₋(x) = conj y₊(x)
/// ```
///
/// `(₀D^{1/2} + √(ik)) y₊ = c x^{−1/2}` with the constant
/// `c = √(ik)((1 − i)/√2 − i)/√(πk)`, a defect of the permitted power form.
pub fn fractional_eigen_1d(k: f64, x: f64, sign: Sign) -> Result<Complex64> {
    finite("fractional_eigen_1d", "x", x)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Parameter {
            name: "k",
            value: k,
            expected: "(0, inf)",
        });
    }
    if x <= 0.0 {
        return Err(Error::Singularity {
            function: "fractional_eigen_1d",
            name: "x",
            value: x,
        });
    }
    let kx = k * x;
    let algebraic = Complex64::new(1.0, -1.0) / (2.0 * PI * kx).sqrt();
    let integral = fresnel_mode(kx, kx.sqrt())? * (2.0 / PI.sqrt());
    let plus = algebraic + integral;
    Ok(match sign {
        Sign::Plus => plus,
        Sign::Minus => plus.conj(),
    })
}

/// `√(±ik)` on the principal branch.
pub fn root_ik(k: f64, sign: Sign) -> Complex64 {
    Complex64::from_polar(k.sqrt(), sign.value() * PI / 4.0)
}

/// Defect fit of `r(ξ) = ₀D^{1/2} f(ξ) + √(±ik) f(ξ)` on a window around `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectFit {
    /// Best-fit coefficient of `ξ^{−1/2}`.
    pub coefficient: Complex64,
    /// Largest `|r(ξ) − c ξ^{−1/2}|` over the window.
    pub residual: f64,
}

/// Number of window points used by [`defect_fit`].
pub const DEFECT_WINDOW_POINTS: usize = 9;

/// Applies the half-order factor to `f` at points `ξ ∈ [0.8x, 1.2x]`,
/// least-squares fits the defect `c ξ^{−1/2}`, and reports what is left.
pub fn defect_fit(
    f: impl Fn(f64) -> Complex64 + Sync,
    k: f64,
    x: f64,
    sign: Sign,
) -> Result<DefectFit> {
    finite("defect_fit", "x", x)?;
    if x <= 0.0 {
        return Err(Error::Domain {
            function: "defect_fit",
            name: "x",
            value: x,
        });
    }
    let root = root_ik(k, sign);
    let m = DEFECT_WINDOW_POINTS;
    let xis: Vec<f64> = (0..m)
        .map(|j| x * (0.8 + 0.4 * j as f64 / (m - 1) as f64))
        .collect();
    let residuals = xis
        .par_iter()
        .map(|&xi| Ok(rl_half_derivative_complex(&f, xi, 0.0)? + root * f(xi)))
        .collect::<Result<Vec<Complex64>>>()?;
    // c = Σ r_j φ_j / Σ φ_j², φ = ξ^{−1/2}
    let (num, den) =
        xis.iter()
            .zip(&residuals)
            .fold((Complex64::new(0.0, 0.0), 0.0), |(n, d), (xi, r)| {
                let phi = xi.powf(-0.5);
                (n + r * phi, d + phi * phi)
            });
    let coefficient = num / den;
    let residual = xis
        .iter()
        .zip(&residuals)
        .map(|(xi, r)| (r - coefficient * xi.powf(-0.5)).norm())
        .fold(0.0, f64::max);
    Ok(DefectFit {
        coefficient,
        residual,
    })
}

/// Certifies the extended-eigenfunction property of
/// [`fractional_eigen_1d`]: the residual left after removing the best
/// `c x^{−1/2}` defect (small when the property holds).
pub fn eigen_defect_check(k: f64, x: f64, sign: Sign) -> Result<f64> {
    fractional_eigen_1d(k, x, sign)?;
    let f =
        |xi: f64| fractional_eigen_1d(k, xi, sign).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    Ok(defect_fit(f, k, x, sign)?.residual)
}

/// The 2-D modes: plane `sin/cos(ax ± by)` and the edge waves
/// `∫_{u}^∞ cos/sin(ax ± by − t²) dt` with `u = √(‖k‖r + ax ± by)`.
pub fn edge_wave_2d(spec: &ModeSpec, x: f64, y: f64) -> Result<f64> {
    finite("edge_wave_2d", "x", x)?;
    finite("edge_wave_2d", "y", y)?;
    let wv = spec.wavevector;
    if wv.norm() == 0.0 {
        return Err(Error::Parameter {
            name: "k",
            value: 0.0,
            expected: "nonzero wavevector",
        });
    }
    let theta = wv.a * x + spec.sign.value() * wv.b * y;
    let u2 = wv.norm() * x.hypot(y) + theta;
    // nonnegative by Cauchy–Schwarz; rounding can leave −ε on the shadow line
    let u = u2.max(0.0).sqrt();
    family_value(spec.family, theta, u)
}

/// Whether `(x, y)` lies within `width` of the shadow half-line of `spec`
/// (where `u = 0`), or within `width` of the origin.
pub fn near_shadow_line(spec: &ModeSpec, x: f64, y: f64, width: f64) -> bool {
    let wv = spec.wavevector;
    // the shadow ray points along −(a, ±b)
    let (dx, dy) = (-wv.a / wv.norm(), -spec.sign.value() * wv.b / wv.norm());
    let along = x * dx + y * dy;
    let across = (x * dy - y * dx).abs();
    x.hypot(y) < width || (along > 0.0 && across < width)
}

/// Solution `Ψ = ∫_A^u e^{it²} dt`, `u = √(‖k‖ct ± k·x)`, of the wave
/// equation `ΔΨ = c^{−2} ∂_t² Ψ` in any dimension.
pub fn wave_fractional_solution(
    kvec: &[f64],
    c: f64,
    x: &[f64],
    t: f64,
    a: f64,
    sign: Sign,
) -> Result<Complex64> {
    if kvec.len() != x.len() || kvec.is_empty() {
        return Err(Error::Parameter {
            name: "x",
            value: x.len() as f64,
            expected: "same dimension as the wavevector",
        });
    }
    for &v in kvec.iter().chain(x) {
        finite("wave_fractional_solution", "x", v)?;
    }
    finite("wave_fractional_solution", "t", t)?;
    finite("wave_fractional_solution", "A", a)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Parameter {
            name: "c",
            value: c,
            expected: "(0, inf)",
        });
    }
    let norm = kvec.iter().map(|k| k * k).sum::<f64>().sqrt();
    let dot: f64 = kvec.iter().zip(x).map(|(k, x)| k * x).sum();
    let radicand = norm * c * t + sign.value() * dot;
    if radicand < 0.0 {
        return Err(Error::Domain {
            function: "wave_fractional_solution",
            name: "u^2",
            value: radicand,
        });
    }
    let u = radicand.sqrt();
    if u == a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(fresnel_comp(a)? - fresnel_comp(u)?)
}

/// Field sampled on a square grid, with the points a residual check must
/// skip.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldOnGrid {
    pub grid: Grid2D,
    pub values: Vec<Complex64>,
    pub excluded: Vec<bool>,
}

impl FieldOnGrid {
    /// Samples `f` at every node; nodes where `exclude` holds, or where `f`
    /// fails, are marked excluded (their value is set to zero).
    pub fn sample(
        grid: Grid2D,
        f: impl Fn(f64, f64) -> Result<Complex64> + Sync,
        exclude: impl Fn(f64, f64) -> bool + Sync,
    ) -> Self {
        let n = grid.side();
        let (values, excluded): (Vec<Complex64>, Vec<bool>) = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (x, y) = grid.point(idx % n, idx / n);
                if exclude(x, y) {
                    return (Complex64::new(0.0, 0.0), true);
                }
                match f(x, y) {
                    Ok(v) if v.re.is_finite() && v.im.is_finite() => (v, false),
                    _ => (Complex64::new(0.0, 0.0), true),
                }
            })
            .unzip();
        Self {
            grid,
            values,
            excluded,
        }
    }

    /// A 2-D mode on the grid, excluding a `3h` band around its shadow
    /// half-line (Fresnel families).
    pub fn edge_wave(spec: &ModeSpec, grid: Grid2D) -> Self {
        let width = EXCLUSION_STEPS * grid.axis().dx();
        let fresnel = spec.family.is_fresnel();
        Self::sample(
            grid,
            |x, y| edge_wave_2d(spec, x, y).map(|v| Complex64::new(v, 0.0)),
            |x, y| fresnel && near_shadow_line(spec, x, y, width),
        )
    }

    /// Additionally excludes every node within `radius` of `(x0, y0)`.
    pub fn exclude_disk(mut self, x0: f64, y0: f64, radius: f64) -> Self {
        let n = self.grid.side();
        for j in 0..n {
            for i in 0..n {
                let (x, y) = self.grid.point(i, j);
                if (x - x0).hypot(y - y0) < radius {
                    let idx = self.grid.index(i, j);
                    self.excluded[idx] = true;
                    self.values[idx] = Complex64::new(0.0, 0.0);
                }
            }
        }
        self
    }

    /// A 1-D mode `Φ(x, y) = f(x)` on the grid, excluding `x < 3h`.
    pub fn mode_1d(k: f64, family: ModeFamily, grid: Grid2D) -> Self {
        let width = EXCLUSION_STEPS * grid.axis().dx();
        Self::sample(
            grid,
            |x, _| helmholtz_modes_1d(k, x, family).map(|v| Complex64::new(v, 0.0)),
            |x, _| x < width,
        )
    }
}

/// Helmholtz residual `max |Δ_h Φ + k²Φ| / (k² max|Φ|)` over nodes whose
/// 4th-order stencil (two nodes each way) avoids excluded nodes and the grid
/// edge.
pub fn residual_helmholtz(field: &FieldOnGrid, k_norm: f64) -> Result<f64> {
    let n = field.grid.side();
    let h = field.grid.axis().dx();
    let scale = field
        .values
        .iter()
        .zip(&field.excluded)
        .filter(|(_, &ex)| !ex)
        .map(|(v, _)| v.norm())
        .fold(0.0, f64::max);
    let k2 = k_norm * k_norm;
    let idx = |i: usize, j: usize| j * n + i;
    let usable = |i: usize, j: usize| {
        (i - 2..=i + 2).all(|ii| !field.excluded[idx(ii, j)])
            && (j - 2..=j + 2).all(|jj| !field.excluded[idx(i, jj)])
    };
    let worst = (2..n - 2)
        .into_par_iter()
        .flat_map_iter(|j| (2..n - 2).map(move |i| (i, j)))
        .filter(|&(i, j)| usable(i, j))
        .map(|(i, j)| {
            let v = |ii: usize, jj: usize| field.values[idx(ii, jj)];
            let c = v(i, j);
            let dxx =
                -v(i - 2, j) + v(i - 1, j) * 16.0 - c * 30.0 + v(i + 1, j) * 16.0 - v(i + 2, j);
            let dyy =
                -v(i, j - 2) + v(i, j - 1) * 16.0 - c * 30.0 + v(i, j + 1) * 16.0 - v(i, j + 2);
            let lap = (dxx + dyy) / (12.0 * h * h);
            Some((lap + c * k2).norm())
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(f64::max(x, y)),
                (x, None) => x,
                (None, y) => y,
            },
        );
    match worst {
        Some(w) if scale > 0.0 => Ok(w / (k2 * scale)),
        _ => Err(Error::Grid(
            "no grid node has a complete residual stencil".into(),
        )),
    }
}

/// Wave-equation residual `|ΔΨ − c^{−2}∂_t²Ψ| / (‖k‖² max|Ψ|)` at `(x, y, t)`
/// for a 2-D field, with 4th-order central differences of step `h` in
/// space and time.
pub fn residual_wave(
    f: impl Fn(f64, f64, f64) -> Result<Complex64>,
    x: f64,
    y: f64,
    t: f64,
    c: f64,
    k_norm: f64,
    h: f64,
) -> Result<f64> {
    let weights = [-1.0, 16.0, -30.0, 16.0, -1.0];
    let mut lap = Complex64::new(0.0, 0.0);
    let mut tt = Complex64::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for (m, w) in weights.iter().enumerate() {
        let o = (m as f64 - 2.0) * h;
        let vx = f(x + o, y, t)?;
        let vy = f(x, y + o, t)?;
        let vt = f(x, y, t + o)?;
        lap += (vx + vy) * *w;
        tt += vt * *w;
        scale = scale.max(vx.norm()).max(vy.norm()).max(vt.norm());
    }
    let denom = 12.0 * h * h;
    let r = (lap - tt / (c * c)) / denom;
    Ok(r.norm() / (k_norm * k_norm * scale))
}
