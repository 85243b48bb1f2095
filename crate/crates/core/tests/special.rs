use approx::assert_relative_eq;
use nls_lab::special::{integrate, ln_gamma};
use nls_lab::{beta, h_function, integrate_01, BetaArgs, QuadratureConfig};
use proptest::prelude::*;

fn b(x: f64, y: f64) -> f64 {
    beta(BetaArgs::new(x, y).unwrap())
}

fn h_direct(x: f64, y: f64) -> f64 {
    integrate_01(
        |t, c| {
            let one_minus = if t < 0.5 { 1.0 - t.powf(y) } else { -(y * (-c).ln_1p()).exp_m1() };
            t.powf(x - 1.0) * (one_minus / c) / c.sqrt()
        },
        &QuadratureConfig::tight(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn beta_symmetry(x in 0.05..20.0f64, y in 0.05..20.0f64) {
        prop_assert!(((b(x, y) - b(y, x)) / b(x, y)).abs() < 1e-12);
    }

    #[test]
    fn beta_recurrence(x in 0.05..20.0f64, y in 0.05..20.0f64) {
        let lhs = b(x + 1.0, y);
        let rhs = b(x, y) * x / (x + y);
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-12);
    }

    #[test]
    fn gamma_recurrence(x in 0.01..25.0f64) {
        let d = ln_gamma(x + 1.0) - ln_gamma(x) - x.ln();
        prop_assert!(d.abs() < 1e-13 * ln_gamma(x + 1.0).abs().max(1.0));
    }

    #[test]
    fn h_matches_singular_quadrature(x in 0.2..5.0f64, y in 0.2..5.0f64) {
        let closed = h_function(BetaArgs::new(x, y).unwrap());
        let direct = h_direct(x, y);
        prop_assert!(closed > 0.0);
        prop_assert!(((closed - direct) / direct).abs() < 1e-9, "{closed} vs {direct}");
    }

    #[test]
    fn quadrature_reproduces_beta(a in -0.9..3.0f64, c in -0.9..3.0f64) {
        let cfg = QuadratureConfig::default();
        let v = integrate_01(|s, t| s.powf(a) * t.powf(c), &cfg).unwrap();
        let exact = b(a + 1.0, c + 1.0);
        prop_assert!(((v - exact) / exact).abs() < 1e-9);
    }
}

#[test]
fn h_grid_and_unit_value() {
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        for k in 0..20 {
            // log-spaced on [0.2, 5]
            let x = 0.2 * 25f64.powf(i as f64 / 19.0);
            let y = 0.2 * 25f64.powf(k as f64 / 19.0);
            let closed = h_function(BetaArgs::new(x, y).unwrap());
            worst = worst.max(((closed - h_direct(x, y)) / closed).abs());
        }
    }
    assert!(worst < 1e-9, "{worst}");
    assert!((h_function(BetaArgs::new(1.0, 1.0).unwrap()) - 2.0).abs() <= 1e-12);
}

#[test]
fn shifted_interval() {
    let v = integrate(2.0, 5.0, |x, c| (x - 2.0).sqrt() / c.sqrt(), &QuadratureConfig::default()).unwrap();
    // ∫₂⁵ sqrt((x-2)/(5-x)) dx = 3π/2
    assert_relative_eq!(v, 1.5 * std::f64::consts::PI, max_relative = 1e-10);
}
