//! Double-exponential (tanh-sinh) quadrature.
//!
//! With `s(t) = 1 / (1 + exp(-π sinh t))` the integral over `(0, 1)` becomes
//! an integral over the real line whose integrand decays double
//! exponentially, which absorbs algebraic endpoint singularities such as
//! `(1-s)^(-1/2)` and `s^(-α)`. The trapezoidal rule in `t` is refined by
//! halving the step until two successive levels agree.
//!
//! Integrands receive both the abscissa and its distance to the right
//! endpoint, the latter computed without cancellation so that `1 - s` is
//! exact to relative precision even when `s` rounds to one.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Stopping rule for the refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinement_level: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_refinement_level: 12,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_refinement_level: u32) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::InvalidInput("quadrature tolerances must be positive".into()));
        }
        if max_refinement_level < 8 {
            return Err(Error::InvalidInput("max refinement level must be at least 8".into()));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_refinement_level,
        })
    }

    /// Near machine precision; used where results are differenced.
    pub fn tight() -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: 1e-13,
            max_refinement_level: 12,
        }
    }
}

const STEP0: f64 = 0.5;
/// `π sinh(T_MAX) ≈ 634`, so `s` and `1 - s` stay above `1e-275`.
const T_MAX: f64 = 6.0;
const MIN_LEVEL: u32 = 3;

/// Node of the transformed rule: abscissa `s`, complement `1 - s`, and the
/// Jacobian `ds/dt`.
#[inline]
fn node(t: f64) -> (f64, f64, f64) {
    let u = PI * t.sinh();
    let (s, c) = if u >= 0.0 {
        let e = (-u).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = u.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    };
    (s, c, PI * t.cosh() * s * c)
}

/// `∫₀¹ f(s) ds`, accepted once two levels differ by at most
/// `max(abs_tol, rel_tol ∫|f|)`. The closure is called as `f(s, 1 - s)` with both
/// arguments strictly positive; `s` itself may round to `1.0` when the
/// complement is below machine epsilon, so singular integrands should be
/// written in terms of the second argument.
pub fn integrate_01<F>(mut f: F, cfg: &QuadratureConfig) -> Result<f64>
where
    F: FnMut(f64, f64) -> f64,
{
    let abs_sum = std::cell::Cell::new(0.0);
    let mut eval = |t: f64| -> Result<f64> {
        let (s, c, w) = node(t);
        let v = f(s, c);
        if v.is_finite() {
            abs_sum.set(abs_sum.get() + (v * w).abs());
            Ok(v * w)
        } else {
            Err(Error::NonFinite(format!("integrand at s = {s:e} (1-s = {c:e})")))
        }
    };

    let n0 = (T_MAX / STEP0).round() as i64;
    let mut sum = eval(0.0)?;
    for k in 1..=n0 {
        let t = k as f64 * STEP0;
        sum += eval(t)? + eval(-t)?;
    }
    let mut h = STEP0;
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for level in 1..=cfg.max_refinement_level {
        h *= 0.5;
        let n = (T_MAX / h).round() as i64;
        let mut add = 0.0;
        let mut k = 1;
        while k <= n {
            let t = k as f64 * h;
            add += eval(t)? + eval(-t)?;
            k += 2;
        }
        sum += add;
        let cur = sum * h;
        err = (cur - prev).abs();
        // relative to ∫|f| so that integrals with cancellation still converge
        let scale = abs_sum.get() * h;
        if level >= MIN_LEVEL && err <= cfg.abs_tol.max(cfg.rel_tol * scale) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature {
        estimate: prev,
        error_bound: err,
    })
}

/// `∫ₐᵇ f(x) dx`. The closure is called as `f(x, b - x)`.
pub fn integrate<F>(a: f64, b: f64, mut f: F, cfg: &QuadratureConfig) -> Result<f64>
where
    F: FnMut(f64, f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("integration bounds must be finite".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    let len = b - a;
    let v = integrate_01(|s, c| f(a + len * s, len * c), cfg)?;
    Ok(v * len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn linear() {
        let v = integrate_01(|s, _| s, &cfg()).unwrap();
        assert_relative_eq!(v, 0.5, epsilon = 1e-13);
    }

    #[test]
    fn inverse_sqrt_at_one() {
        let v = integrate_01(|_, c| c.powf(-0.5), &cfg()).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-11);
    }

    #[test]
    fn arcsine_weight() {
        let v = integrate_01(|s, c| (s * c).powf(-0.5), &cfg()).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-11);
    }

    #[test]
    fn strong_left_singularity() {
        // ∫ s^(-0.9) = 10
        let v = integrate_01(|s, _| s.powf(-0.9), &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(v, 10.0, max_relative = 1e-9);
    }

    #[test]
    fn never_touches_endpoints() {
        integrate_01(
            |s, c| {
                assert!(s > 0.0 && s < 1.0 || s == 1.0 && c > 0.0);
                assert!(c > 0.0);
                1.0
            },
            &cfg(),
        )
        .unwrap();
    }

    #[test]
    fn general_interval() {
        let v = integrate(1.0, 3.0, |x, _| x * x, &cfg()).unwrap();
        assert_relative_eq!(v, 26.0 / 3.0, max_relative = 1e-12);
        let v = integrate(0.0, 2.0, |_, d| d.powf(-0.5), &cfg()).unwrap();
        assert_relative_eq!(v, 2.0 * 2f64.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn non_convergence_reports_estimate() {
        let tight = QuadratureConfig::new(1e-300, 1e-300, 8).unwrap();
        match integrate_01(|s, _| (50.0 * s).sin().abs(), &tight) {
            Err(Error::Quadrature { estimate, error_bound }) => {
                assert!(estimate.is_finite() && error_bound.is_finite());
            }
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 1e-10, 12).is_err());
        assert!(QuadratureConfig::new(1e-12, 1e-10, 4).is_err());
    }
}
