#![allow(clippy::excessive_precision, clippy::type_complexity)]

mod common;

use std::f64::consts::PI;

use fracwave_core::fracops::{
    asymmetric_generator_symbol, asymmetric_symbol, coupled_symbol, gl_derivative,
    laplacian_symbol, riesz_symbol, rl_half_derivative,
};
use fracwave_core::specfun::gamma_fn;
use fracwave_core::{AsymmetryWeights, Error, FractionalOrder, SampledFunction, TimeOrder};
use num_complex::Complex64;
use proptest::prelude::*;

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn gl_at_one(f: impl Fn(f64) -> f64, n: usize, alpha: f64) -> f64 {
    let s = SampledFunction::from_fn(0.0, 1.0, n, f).unwrap();
    *gl_derivative(&s, order(alpha))
        .unwrap()
        .values()
        .last()
        .unwrap()
}

#[test]
fn gl_linear_function_alpha_one() {
    let s = SampledFunction::from_fn(0.0, 1.0, 100, |x| x).unwrap();
    let d = gl_derivative(&s, order(1.0)).unwrap();
    for v in &d.values()[1..] {
        assert!((v - 1.0).abs() < 1e-12);
    }
}

#[test]
fn gl_converges_first_order_to_power_rule() {
    // D^{1/2} 1 = 1/√π and D^{1/2} x² = Γ(3)/Γ(5/2) x^{3/2} converge at O(h)
    let cases: [(fn(f64) -> f64, f64); 2] = [
        (|_| 1.0, 1.0 / PI.sqrt()),
        (|x| x * x, 2.0 / gamma_fn(2.5).unwrap()),
    ];
    for (f, exact) in cases {
        let slope = gl_slope(f, exact);
        assert!((slope - 1.0).abs() < 0.15, "slope {slope}");
        assert!((gl_at_one(f, 4096, 0.5) - exact).abs() < 2e-3);
    }
}

#[test]
fn gl_square_root_converges_faster() {
    // D^{1/2} √x is constant, so the O(h) term (∝ D^{3/2} f) vanishes and
    // the error falls like h^{3/2}
    let exact = PI.sqrt() / 2.0;
    let slope = gl_slope(|x| x.sqrt(), exact);
    assert!((slope - 1.5).abs() < 0.1, "slope {slope}");
    assert!((gl_at_one(|x| x.sqrt(), 4096, 0.5) - exact).abs() < 1e-4);
}

fn gl_slope(f: fn(f64) -> f64, exact: f64) -> f64 {
    let ns = [64usize, 128, 256, 512];
    let lh: Vec<f64> = ns.iter().map(|&n| (1.0 / n as f64).ln()).collect();
    let le: Vec<f64> = ns
        .iter()
        .map(|&n| (gl_at_one(f, n, 0.5) - exact).abs().ln())
        .collect();
    common::slope(&lh, &le)
}

#[test]
fn rl_half_power_rule() {
    let cases: [(fn(f64) -> f64, f64, f64); 3] = [
        (|_| 1.0, 1.0, 1.0 / PI.sqrt()),
        (|z| z.sqrt(), 1.0, PI.sqrt() / 2.0),
        (|z| z, 4.0, 2.0 * (4.0 / PI).sqrt()),
    ];
    for (f, z, exact) in cases {
        let got = rl_half_derivative(f, z, 0.0).unwrap();
        assert!((got - exact).abs() < 1e-6, "{got} vs {exact}");
    }
}

#[test]
fn rl_half_of_exponential_matches_series() {
    // D^{1/2} e^z = Σ z^{n−1/2}/Γ(n+1/2)
    let z: f64 = 1.3;
    let mut want = 0.0;
    for n in 0..40 {
        want += z.powf(n as f64 - 0.5) / gamma_fn(n as f64 + 0.5).unwrap();
    }
    let got = rl_half_derivative(|x| x.exp(), z, 0.0).unwrap();
    assert!((got - want).abs() < 1e-6);
}

#[test]
fn rl_half_shifted_terminal() {
    let got = rl_half_derivative(|_| 1.0, 3.0, 2.0).unwrap();
    assert!((got - 1.0 / PI.sqrt()).abs() < 1e-6);
    assert!(matches!(
        rl_half_derivative(|_| 1.0, 1.0, 1.0),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn symbol_examples() {
    assert_eq!(riesz_symbol(0.0, order(0.7)), 0.0);
    assert_eq!(riesz_symbol(2.0, order(2.0)), -4.0);
    assert!((riesz_symbol(3.0, order(1.5)) + 5.196152422706632).abs() < 1e-14);
    assert_eq!(laplacian_symbol(&[0.0, 0.0], order(1.3)), 0.0);
    assert!((laplacian_symbol(&[3.0, 4.0], order(1.0)) + 5.0).abs() < 1e-15);
    assert!((laplacian_symbol(&[1.0, 1.0], order(2.0)) + 2.0).abs() < 1e-15);

    let half = AsymmetryWeights::symmetric();
    let v = asymmetric_symbol(1.0, order(2.0), half).unwrap();
    assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    let v = asymmetric_symbol(1.0, order(0.5), AsymmetryWeights::new(1.0, 0.0).unwrap()).unwrap();
    assert!((v - Complex64::new(0.5f64.sqrt(), -(0.5f64.sqrt()))).norm() < 1e-15);
    assert!(matches!(
        asymmetric_symbol(1.0, order(1.0), half),
        Err(Error::DegenerateSymbol)
    ));

    let t = |b| TimeOrder::new(b).unwrap();
    assert_eq!(
        coupled_symbol(Complex64::new(1.0, 0.0), 1.0, t(1.0)).unwrap(),
        Complex64::new(2.0, 0.0)
    );
    assert!(
        (coupled_symbol(Complex64::new(1.0, 0.0), 1.0, t(0.5))
            .unwrap()
            .re
            - 2f64.sqrt())
        .abs()
            < 1e-15
    );
    let v = coupled_symbol(Complex64::new(1.0, 1.0), 0.0, t(0.5)).unwrap();
    // principal root via polar form: 2^{1/4} e^{iπ/8}
    let polar = Complex64::from_polar(2f64.powf(0.25), PI / 8.0);
    assert!((v - polar).norm() < 1e-15);
    assert!(matches!(
        coupled_symbol(Complex64::new(0.0, 1.0), 1.0, t(0.5)),
        Err(Error::HalfPlane(_))
    ));
}

#[test]
fn generator_symbol_matches_skewed_stable_cf() {
    // −k^α (1 − iβ tan(πα/2)) with β = p − q for k > 0
    for alpha in [0.6, 1.5, 1.9] {
        let w = AsymmetryWeights::new(0.8, 0.2).unwrap();
        for k in [0.3, 1.0, 2.5] {
            let got = asymmetric_generator_symbol(k, order(alpha), w).unwrap();
            let tan = (PI * alpha / 2.0).tan();
            let want = Complex64::new(-f64::powf(k, alpha), f64::powf(k, alpha) * 0.6 * tan);
            assert!((got - want).norm() < 1e-13 * want.norm());
            assert!(got.re <= 0.0);
        }
    }
}

proptest! {
    #[test]
    fn asymmetric_symbol_conjugate_symmetric(k in -20.0f64..20.0, alpha in 0.05f64..2.0, p in 0.0f64..1.0) {
        let w = AsymmetryWeights::from_p(p).unwrap();
        prop_assume!(!(alpha == 1.0 && w.is_symmetric()));
        let a = asymmetric_symbol(k, order(alpha), w).unwrap();
        let b = asymmetric_symbol(-k, order(alpha), w).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-14 * a.norm().max(1.0));
    }

    #[test]
    fn symmetric_asymmetric_is_cosine_form(k in -20.0f64..20.0, alpha in 0.05f64..2.0) {
        prop_assume!((alpha - 1.0).abs() > 1e-9);
        let v = asymmetric_symbol(k, order(alpha), AsymmetryWeights::symmetric()).unwrap();
        let want = k.abs().powf(alpha) * (PI * alpha / 2.0).cos();
        prop_assert!((v.re - want).abs() <= 1e-13 * want.abs().max(1.0));
        prop_assert!(v.im.abs() <= 1e-13 * want.abs().max(1.0));
    }

    #[test]
    fn generator_symbol_decays(k in -50.0f64..50.0, alpha in 0.05f64..2.0, p in 0.0f64..1.0) {
        prop_assume!((alpha - 1.0).abs() > 1e-9);
        let w = AsymmetryWeights::from_p(p).unwrap();
        let v = asymmetric_generator_symbol(k, order(alpha), w).unwrap();
        prop_assert!(v.re <= 0.0);
    }

    #[test]
    fn laplacian_is_rotation_invariant(kx in -10.0f64..10.0, ky in -10.0f64..10.0, phi in 0.0f64..6.3, alpha in 0.1f64..2.0) {
        let (s, c) = phi.sin_cos();
        let a = laplacian_symbol(&[kx, ky], order(alpha));
        let b = laplacian_symbol(&[c * kx - s * ky, s * kx + c * ky], order(alpha));
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn riesz_is_even_nonpositive(k in -100.0f64..100.0, alpha in 0.01f64..2.0) {
        let a = riesz_symbol(k, order(alpha));
        prop_assert!(a <= 0.0);
        prop_assert_eq!(a, riesz_symbol(-k, order(alpha)));
    }
}
