//! Scalar special functions: Fresnel integrals, the complementary complex
//! Fresnel integral, the Mittag-Leffler function and Gamma.
//!
//! Fresnel integrals use the unnormalized argument,
//!
//! ```text
//! C(x) = ∫₀ˣ cos(t²) dt,    S(x) = ∫₀ˣ sin(t²) dt.
//! ```
//!
//! The normalized convention `C_N(x) = ∫₀ˣ cos(πt²/2) dt` used by many tables
//! is related by `C(x) = √(π/2) · C_N(x·√(2/π))` (and likewise for `S`).

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{finite, Error, Result};
use crate::quad::Quadrature;

/// Complex value type used throughout the crate.
pub type ComplexScalar = Complex64;

/// `√(π/8)`, the limit of `C(x)` and `S(x)` as `x → ∞`.
pub const FRESNEL_LIMIT: f64 = 0.626_657_068_657_750_1;

/// Below this argument the power series is used, above it the continued
/// fraction for the tail. At `u = 2` the series loses under two digits to
/// cancellation and the fraction converges in well under 100 steps.
const SERIES_CUTOFF: f64 = 2.0;

const CF_MAX_ITER: usize = 500;
const CF_EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// `E(0) = ∫₀^∞ e^{it²} dt = (√π/2) e^{iπ/4}`.
pub fn fresnel_full() -> Complex64 {
    Complex64::new(FRESNEL_LIMIT, FRESNEL_LIMIT)
}

/// `∫₀ᵘ e^{it²} dt` by its power series, `Σ iⁿ u^{2n+1} / (n! (2n+1))`.
fn fresnel_series(u: f64) -> Complex64 {
    let iu2 = Complex64::new(0.0, u * u);
    let mut power = Complex64::new(u, 0.0);
    let mut sum = power;
    for n in 1..200 {
        power = power * iu2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// `∫ᵤ^∞ e^{it²} dt` for `u ≥ SERIES_CUTOFF`, as `u e^{iu²} h(u)` where `h` is
/// the even contraction of the complementary error function continued
/// fraction, `1/(b₀ − 1·2/(b₀+4 − 3·4/(b₀+8 − …)))` with `b₀ = 1 − 2iu²`.
fn fresnel_tail(u: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, -2.0 * u * u);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    let mut n = -1.0;
    for _ in 0..CF_MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = one / (d * a + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < CF_EPS {
            break;
        }
    }
    Complex64::from_polar(u, u * u) * h
}

/// Fresnel integrals `(C(x), S(x))` in the unnormalized convention.
pub fn fresnel(x: f64) -> Result<(f64, f64)> {
    finite("fresnel", "x", x)?;
    if x == 0.0 {
        return Ok((0.0, 0.0));
    }
    let ax = x.abs();
    let value = if ax < SERIES_CUTOFF {
        fresnel_series(ax)
    } else {
        fresnel_full() - fresnel_tail(ax)
    };
    let sign = x.signum();
    Ok((sign * value.re, sign * value.im))
}

/// Complementary complex Fresnel integral `E(u) = ∫ᵤ^∞ e^{it²} dt`.
///
/// Evaluated without cancellation for large `u`, so the tail keeps full
/// relative accuracy as it decays like `1/(2u)`.
pub fn fresnel_comp(u: f64) -> Result<Complex64> {
    finite("fresnel_comp", "u", u)?;
    if u >= SERIES_CUTOFF {
        Ok(fresnel_tail(u))
    } else if u >= 0.0 {
        Ok(fresnel_full() - fresnel_series(u))
    } else if u > -SERIES_CUTOFF {
        Ok(fresnel_full() + fresnel_series(-u))
    } else {
        Ok(fresnel_full() * 2.0 - fresnel_tail(-u))
    }
}

/// `∫ᵤ^∞ e^{-it²} dt`, the conjugate kernel.
pub fn fresnel_comp_conj(u: f64) -> Result<Complex64> {
    fresnel_comp(u).map(|e| e.conj())
}

/// `e^{iπ/4}`.
pub fn exp_i_quarter_pi() -> Complex64 {
    Complex64::from_polar(1.0, FRAC_PI_4)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * lanczos(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// Gamma function.
pub fn gamma_fn(x: f64) -> Result<f64> {
    finite("gamma", "x", x)?;
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Domain {
            function: "gamma",
            name: "x",
            value: x,
        });
    }
    // exact for small positive integers
    if x == x.floor() && x <= 21.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    let value = lanczos(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            function: "gamma",
            name: "x",
            value: x,
        })
    }
}

/// Reciprocal Gamma that is zero at the poles instead of failing.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else {
        1.0 / lanczos(x)
    }
}

/// Mittag-Leffler function `E_β(z) = Σ zᵏ / Γ(βk + 1)` on the completely
/// monotone branch `0 < β ≤ 1`, `z ≤ 0`.
///
/// Taylor series for `|z| ≤ 1`; for larger `|z|` the Laplace-type
/// representation
///
/// ```text
/// E_β(−x) = sin(βπ)/(πβ) ∫₀^∞ exp(−σ^{1/β}) · x / (σ² + 2σx cos βπ + x²) dσ
/// ```
///
/// whose integrand is positive and smooth.
pub fn mittag_leffler(beta: f64, z: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Parameter {
            name: "beta",
            value: beta,
            expected: "(0, 1]",
        });
    }
    finite("mittag_leffler", "z", z)?;
    if z > 0.0 {
        return Err(Error::Unsupported {
            function: "mittag_leffler",
            name: "z",
            value: z,
            reason: "only z <= 0 is implemented",
        });
    }
    if beta == 1.0 {
        return Ok(z.exp());
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z >= -1.0 {
        return Ok(mittag_leffler_series(beta, z));
    }
    Ok(mittag_leffler_integral(beta, -z))
}

fn mittag_leffler_series(beta: f64, z: f64) -> f64 {
    let mut sum = 1.0;
    let mut power = 1.0;
    for k in 1..400 {
        power *= z;
        let term = power * rgamma(beta * k as f64 + 1.0);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k > 3 {
            break;
        }
    }
    sum
}

fn mittag_leffler_integral(beta: f64, x: f64) -> f64 {
    let (sin_bp, cos_bp) = (beta * PI).sin_cos();
    let inv_beta = 1.0 / beta;
    // exp(−σ^{1/β}) < 1e−320 beyond this point
    let sigma_max = 740f64.powf(beta);
    let integrand = |s: f64| (-s.powf(inv_beta)).exp() * x / (s * s + 2.0 * s * x * cos_bp + x * x);
    let mut points = vec![0.0];
    // the denominator |σ + x e^{iβπ}|² is smallest near σ = −x cos βπ
    let near = -x * cos_bp;
    let width = x * sin_bp;
    for p in [near - width, near, near + width] {
        if p > 0.0 && p < sigma_max {
            points.push(p);
        }
    }
    points.push(sigma_max);
    points.sort_by(f64::total_cmp);
    points.dedup();
    let q = Quadrature::new(0.0, 1e-13).with_max_intervals(4000);
    let est = q.integrate_points(integrand, &points);
    sin_bp / (PI * beta) * est.value
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fresnel_at_zero_and_infinity() {
        assert_eq!(fresnel(0.0).unwrap(), (0.0, 0.0));
        let (c, s) = fresnel(1e6).unwrap();
        assert!((c - FRESNEL_LIMIT).abs() < 1e-6);
        assert!((s - FRESNEL_LIMIT).abs() < 1e-6);
        assert_relative_eq!(FRESNEL_LIMIT, (PI / 8.0).sqrt(), epsilon = 1e-16);
    }

    #[test]
    fn fresnel_rejects_nan() {
        assert!(matches!(fresnel(f64::NAN), Err(Error::Domain { .. })));
        assert!(fresnel_comp(f64::INFINITY).is_err());
    }

    #[test]
    fn series_and_fraction_agree_at_crossover() {
        for u in [1.9, 2.0, 2.1, 2.5] {
            let series = fresnel_full() - fresnel_series(u);
            let tail = fresnel_tail(u);
            assert!(
                (series - tail).norm() < 2e-14,
                "u = {u}: {series} vs {tail}"
            );
        }
    }

    #[test]
    fn fresnel_comp_at_zero() {
        let e = fresnel_comp(0.0).unwrap();
        assert_relative_eq!(e.re, FRESNEL_LIMIT, epsilon = 1e-15);
        assert_relative_eq!(e.im, FRESNEL_LIMIT, epsilon = 1e-15);
    }

    #[test]
    fn fresnel_comp_negative_argument_reflects() {
        for u in [0.3, 1.7, 2.2, 9.0] {
            let lhs = fresnel_comp(-u).unwrap();
            let rhs = fresnel_full() * 2.0 - fresnel_comp(u).unwrap();
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn fresnel_comp_tail_asymptotics() {
        // E(u) = e^{iu²} (i/(2u) + 1/(4u³)) + O(u⁻⁵)
        let u = 300.0;
        let e = fresnel_comp(u).unwrap();
        let approx = Complex64::from_polar(1.0, u * u)
            * Complex64::new(1.0 / (4.0 * u * u * u), 1.0 / (2.0 * u));
        assert!((e - approx).norm() < 1e-9 * approx.norm());
    }

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma_fn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert_relative_eq!(
            gamma_fn(1.5).unwrap(),
            PI.sqrt() / 2.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gamma_fn(-0.5).unwrap(),
            -2.0 * PI.sqrt(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn gamma_poles_are_errors() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_fn(x), Err(Error::Domain { .. })));
        }
        assert!(gamma_fn(200.0).is_err());
    }

    #[test]
    fn mittag_leffler_reductions() {
        assert_relative_eq!(
            mittag_leffler(1.0, -1.0).unwrap(),
            (-1f64).exp(),
            max_relative = 1e-15
        );
        for b in [0.1, 0.5, 0.9] {
            assert_eq!(mittag_leffler(b, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn mittag_leffler_domain_errors() {
        assert!(matches!(
            mittag_leffler(0.0, -1.0),
            Err(Error::Parameter { .. })
        ));
        assert!(matches!(
            mittag_leffler(1.2, -1.0),
            Err(Error::Parameter { .. })
        ));
        assert!(matches!(
            mittag_leffler(0.5, 0.5),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn mittag_leffler_branches_join_continuously() {
        for b in [0.2, 0.5, 0.8, 0.99] {
            let series = mittag_leffler_series(b, -1.0);
            let integral = mittag_leffler_integral(b, 1.0);
            assert_relative_eq!(series, integral, max_relative = 1e-11);
        }
    }
}
