//! Solutions of the paraxial (parabolic) wave equation
//! `2ik ∂_z u + Δ_⊥ u = 0` built from the complementary Fresnel integral,
//! and a finite-difference residual for checking them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::fracops::rl_half_derivative_complex;
use crate::specfun::fresnel_comp;
use crate::wavemodes::Sign;

/// Largest total derivative order `m + n` of [`hermite_beam`].
pub const MAX_BEAM_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BeamVariant {
    First1d,
    Mother1d,
    Product2d,
    Diagonal2d,
}

impl BeamVariant {
    pub const ALL: [BeamVariant; 4] = [
        BeamVariant::First1d,
        BeamVariant::Mother1d,
        BeamVariant::Product2d,
        BeamVariant::Diagonal2d,
    ];

    pub fn is_2d(self) -> bool {
        matches!(self, BeamVariant::Product2d | BeamVariant::Diagonal2d)
    }

    pub fn name(self) -> &'static str {
        match self {
            BeamVariant::First1d => "first_1d",
            BeamVariant::Mother1d => "mother_1d",
            BeamVariant::Product2d => "product_2d",
            BeamVariant::Diagonal2d => "diagonal_2d",
        }
    }
}

impl std::str::FromStr for BeamVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BeamVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| {
                format!("unknown beam variant '{s}' (first_1d, mother_1d, product_2d, diagonal_2d)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSpec {
    pub k: f64,
    pub variant: BeamVariant,
    pub m: usize,
    pub n: usize,
}

impl BeamSpec {
    pub fn new(k: f64, variant: BeamVariant, m: usize, n: usize) -> Result<Self> {
        check_k(k)?;
        if variant != BeamVariant::Product2d && (m > 0 || n > 0) {
            return Err(Error::Parameter {
                name: "m",
                value: (m + n) as f64,
                expected: "0 unless the variant is product_2d",
            });
        }
        if m + n > MAX_BEAM_ORDER {
            return Err(Error::Parameter {
                name: "m",
                value: (m + n) as f64,
                expected: "m + n <= 8",
            });
        }
        Ok(Self { k, variant, m, n })
    }
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "k",
            value: k,
            expected: "(0, inf)",
        })
    }
}

fn check_z(function: &'static str, z: f64) -> Result<()> {
    finite(function, "z", z)?;
    if z <= 0.0 {
        return Err(Error::Domain {
            function,
            name: "z",
            value: z,
        });
    }
    Ok(())
}

/// `√(i/π)` on the principal branch.
fn sqrt_i_over_pi() -> Complex64 {
    Complex64::from_polar(PI.sqrt().recip(), PI / 4.0)
}

/// `u = x√k / √(2πi z³) · e^{ikx²/2z}`.
pub fn pwe_first_solution(x: f64, z: f64, k: f64) -> Result<Complex64> {
    finite("pwe_first_solution", "x", x)?;
    check_z("pwe_first_solution", z)?;
    check_k(k)?;
    let denom = Complex64::from_polar((2.0 * PI).sqrt() * z.powf(1.5), PI / 4.0);
    Ok(Complex64::from_polar(x * k.sqrt(), k * x * x / (2.0 * z)) / denom)
}

/// `u = (1/k)√(i/π) ∫_{x√(k/2z)}^∞ e^{it²} dt`; `u(0, z) = i/(2k)`.
pub fn pwe_mother_solution(x: f64, z: f64, k: f64) -> Result<Complex64> {
    finite("pwe_mother_solution", "x", x)?;
    check_z("pwe_mother_solution", z)?;
    check_k(k)?;
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.5 / k));
    }
    Ok(sqrt_i_over_pi() * fresnel_comp(x * (k / (2.0 * z)).sqrt())? / k)
}

/// The two (1+2)-D solutions:
///
/// ```text
/// product:  G = (i/π) E(x√(k/2z)) E(y√(k/2z))
/// diagonal: G = (k/π) E(((x + y)/2)√(k/z))
/// ```
pub fn pwe_2d_solution(x: f64, y: f64, z: f64, k: f64, variant: BeamVariant) -> Result<Complex64> {
    finite("pwe_2d_solution", "x", x)?;
    finite("pwe_2d_solution", "y", y)?;
    check_z("pwe_2d_solution", z)?;
    check_k(k)?;
    match variant {
        BeamVariant::Product2d => {
            let s = (k / (2.0 * z)).sqrt();
            Ok(Complex64::new(0.0, 1.0 / PI) * fresnel_comp(x * s)? * fresnel_comp(y * s)?)
        }
        BeamVariant::Diagonal2d => Ok(fresnel_comp(0.5 * (x + y) * (k / z).sqrt())? * (k / PI)),
        _ => Err(Error::Parameter {
            name: "variant",
            value: f64::NAN,
            expected: "product_2d or diagonal_2d",
        }),
    }
}

/// `d^m/dx^m E(x s)` with `s² = β`: `E(xs)` for `m = 0`, otherwise
/// `−s P_{m−1}(x) e^{iβx²}` where `P₀ = 1`, `P_{j+1} = P_j' + 2iβx P_j`.
fn fresnel_factor_derivative(x: f64, s: f64, m: usize) -> Result<Complex64> {
    if m == 0 {
        return fresnel_comp(x * s);
    }
    let beta = s * s;
    let two_i_beta = Complex64::new(0.0, 2.0 * beta);
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for _ in 1..m {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (j, &c) in poly.iter().enumerate() {
            if j > 0 {
                next[j - 1] += c * j as f64;
            }
            next[j + 1] += c * two_i_beta;
        }
        poly = next;
    }
    let p = poly
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c);
    Ok(-s * p * Complex64::from_polar(1.0, beta * x * x))
}

/// `∂_x^m ∂_y^n` of the product solution, in closed form.
pub fn hermite_beam(spec: &BeamSpec, x: f64, y: f64, z: f64) -> Result<Complex64> {
    finite("hermite_beam", "x", x)?;
    finite("hermite_beam", "y", y)?;
    check_z("hermite_beam", z)?;
    let spec = BeamSpec::new(spec.k, BeamVariant::Product2d, spec.m, spec.n)?;
    if spec.m == 0 && spec.n == 0 {
        return pwe_2d_solution(x, y, z, spec.k, BeamVariant::Product2d);
    }
    let s = (spec.k / (2.0 * z)).sqrt();
    Ok(Complex64::new(0.0, 1.0 / PI)
        * fresnel_factor_derivative(x, s, spec.m)?
        * fresnel_factor_derivative(y, s, spec.n)?)
}

/// Evaluates the beam selected by `spec` at `(x, y, z)`; 1-D variants
/// ignore `y`, 2-D variants with `m + n > 0` are Hermite beams.
pub fn beam_value(spec: &BeamSpec, x: f64, y: f64, z: f64) -> Result<Complex64> {
    match spec.variant {
        BeamVariant::First1d => pwe_first_solution(x, z, spec.k),
        BeamVariant::Mother1d => pwe_mother_solution(x, z, spec.k),
        BeamVariant::Product2d => hermite_beam(spec, x, y, z),
        BeamVariant::Diagonal2d => pwe_2d_solution(x, y, z, spec.k, BeamVariant::Diagonal2d),
    }
}

/// PWE residual `|2ik ∂_z u + ∂_x²u + ∂_y²u| / (k² max|u|)` at `(x, y, z)`,
/// with 4th-order central differences of step `h`; the maximum runs over
/// the stencil nodes.
pub fn residual_pwe(
    f: impl Fn(f64, f64, f64) -> Result<Complex64>,
    x: f64,
    y: f64,
    z: f64,
    k: f64,
    h: f64,
) -> Result<f64> {
    check_k(k)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Parameter {
            name: "h",
            value: h,
            expected: "(0, inf)",
        });
    }
    if z - 2.0 * h <= 0.0 {
        return Err(Error::Domain {
            function: "residual_pwe",
            name: "z",
            value: z,
        });
    }
    let second = [-1.0, 16.0, -30.0, 16.0, -1.0];
    let first = [1.0, -8.0, 0.0, 8.0, -1.0];
    let zero = Complex64::new(0.0, 0.0);
    let (mut dxx, mut dyy, mut dz) = (zero, zero, zero);
    let mut scale: f64 = 0.0;
    for m in 0..5 {
        let o = (m as f64 - 2.0) * h;
        let vx = f(x + o, y, z)?;
        let vy = f(x, y + o, z)?;
        let vz = f(x, y, z + o)?;
        dxx += vx * second[m];
        dyy += vy * second[m];
        dz += vz * first[m];
        scale = scale.max(vx.norm()).max(vy.norm()).max(vz.norm());
    }
    let lap = (dxx + dyy) / (12.0 * h * h);
    let dz = dz / (12.0 * h);
    let r = Complex64::new(0.0, 2.0 * k) * dz + lap;
    if scale == 0.0 {
        return Ok(r.norm());
    }
    Ok(r.norm() / (k * k * scale))
}

/// Fourier–Laplace symbol `‖κ‖^{1/2} ± (2k)^{1/4} s^{1/4} e^{−iπ/8}` of the
/// half-order factor of the (1+2)-D operator. Not used by any solver.
pub fn pwe_half_symbol(kappa: f64, s: Complex64, k: f64, sign: Sign) -> Complex64 {
    let quarter = if s == Complex64::new(0.0, 0.0) {
        s
    } else {
        s.powf(0.25)
    };
    Complex64::new(kappa.abs().sqrt(), 0.0)
        + sign.value() * (2.0 * k).powf(0.25) * quarter * Complex64::from_polar(1.0, -PI / 8.0)
}

/// Relative residual of the half-order factor
/// `∂_x ± √(2k) e^{−iπ/4} ₀D_z^{1/2}` applied to the mother solution at
/// `(x, z)`, `x > 0`: `|∂_x u ± √(2k)e^{−iπ/4} D_z^{1/2} u| / |∂_x u|`.
///
/// `∂_x u` is taken in closed form; the half derivative in `z` is numeric.
pub fn factorization_residual(x: f64, z: f64, k: f64, sign: Sign) -> Result<f64> {
    finite("factorization_residual", "x", x)?;
    check_z("factorization_residual", z)?;
    check_k(k)?;
    if x <= 0.0 {
        return Err(Error::Domain {
            function: "factorization_residual",
            name: "x",
            value: x,
        });
    }
    let s = (k / (2.0 * z)).sqrt();
    let dx = -sqrt_i_over_pi() * s * Complex64::from_polar(1.0, k * x * x / (2.0 * z)) / k;
    let half = rl_half_derivative_complex(
        |zeta| {
            if zeta <= 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                pwe_mother_solution(x, zeta, k).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            }
        },
        z,
        0.0,
    )?;
    let coupling = sign.value() * (2.0 * k).sqrt() * Complex64::from_polar(1.0, -PI / 4.0);
    Ok((dx + coupling * half).norm() / dx.norm())
}

/// A beam sampled on a rectangular grid: `(x, z)` for 1-D variants,
/// `(x, y)` at fixed `z` for 2-D variants. Values are row-major with the
/// second coordinate as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamField {
    pub spec: BeamSpec,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    /// `z` of the transverse slice (2-D variants).
    pub z: Option<f64>,
    pub values: Vec<Complex64>,
}

impl BeamField {
    /// Samples a 1-D variant over `xs × zs`.
    pub fn sample_xz(spec: BeamSpec, xs: Vec<f64>, zs: Vec<f64>) -> Result<Self> {
        let values = zs
            .par_iter()
            .flat_map_iter(|&z| xs.iter().map(move |&x| (x, z)))
            .map(|(x, z)| beam_value(&spec, x, 0.0, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec,
            first: xs,
            second: zs,
            z: None,
            values,
        })
    }

    /// Samples a 2-D variant over `xs × ys` at fixed `z`.
    pub fn sample_xy(spec: BeamSpec, xs: Vec<f64>, ys: Vec<f64>, z: f64) -> Result<Self> {
        let values = ys
            .par_iter()
            .flat_map_iter(|&y| xs.iter().map(move |&x| (x, y)))
            .map(|(x, y)| beam_value(&spec, x, y, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec,
            first: xs,
            second: ys,
            z: Some(z),
            values,
        })
    }
}
