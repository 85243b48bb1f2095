//! Standing-wave profiles and their mass.
//!
//! The profile is even, decreasing on `x > 0`, and satisfies the first
//! integral `φ_x² = ω φ² - 2a_p/(p+1) φ^(p+1) - 2a_q/(q+1) φ^(q+1)`. At the
//! peak the right-hand side vanishes and the first-order equation loses
//! uniqueness, so the profile starts from `(φ₀, 0)` with the second-order
//! equation `φ'' = ωφ - a_p φ^p - a_q φ^q` and switches to the first-order
//! equation once `φ` has left the neighbourhood of the peak. The
//! first-order equation is contracting in the tail, where the second-order
//! one would amplify the growing mode.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::slope::{slope_quadrature, WaveState};

/// Sub-steps of the integrator per grid cell.
const SUBSTEPS: usize = 8;
/// Largest admissible tail `φ(L) / φ₀`.
const TAIL_TOL: f64 = 1e-8;

/// Samples of `φ_ω` on the symmetric grid `x_j = (j - n) dx`, `j = 0..=2n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub omega: f64,
    pub phi0: f64,
    pub dx: f64,
    /// `L = n dx`.
    pub half_width: f64,
    pub values: Vec<f64>,
    /// `φ_x` at the same nodes.
    pub derivative: Vec<f64>,
}

impl Profile {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of `x = 0`.
    pub fn center(&self) -> usize {
        self.values.len() / 2
    }

    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - self.center() as f64) * self.dx
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.x(j)).collect()
    }

    /// `φ(x)` by cubic Hermite interpolation, zero outside `[-L, L]`.
    pub fn eval(&self, x: f64) -> f64 {
        let r = x.abs();
        if r > self.half_width {
            return 0.0;
        }
        let c = self.center();
        let t = r / self.dx;
        let k = (t.floor() as usize).min(c - 1);
        let u = t - k as f64;
        let (y0, y1) = (self.values[c + k], self.values[c + k + 1]);
        let (d0, d1) = (self.derivative[c + k] * self.dx, self.derivative[c + k + 1] * self.dx);
        let u2 = u * u;
        let u3 = u2 * u;
        (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * d0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * d1
    }

    /// `½ ∫ φ² dx` by the trapezoid rule.
    pub fn l2_mass(&self) -> f64 {
        let n = self.values.len();
        let inner: f64 = self.values[1..n - 1].iter().map(|v| v * v).sum();
        let ends = 0.5 * (self.values[0].powi(2) + self.values[n - 1].powi(2));
        0.5 * self.dx * (inner + ends)
    }

    /// Largest pointwise residual of the first integral
    /// `-½φ_x² + ½ωφ² - a_p/(p+1) φ^(p+1) - a_q/(q+1) φ^(q+1)`.
    pub fn first_integral_residual(&self, model: &ModelParams) -> f64 {
        self.values
            .iter()
            .zip(&self.derivative)
            .map(|(&v, &d)| (-0.5 * d * d + 0.5 * v * v * reduced_g(model, self.omega, v)).abs())
            .fold(0.0, f64::max)
    }
}

/// `ω - 2a_p/(p+1) φ^(p-1) - 2a_q/(q+1) φ^(q-1)`, so that `φ_x² = φ² g(φ)`.
fn reduced_g(model: &ModelParams, omega: f64, phi: f64) -> f64 {
    omega - model.kp() * phi.powf(model.p() - 1.0) - model.kq() * phi.powf(model.q() - 1.0)
}

fn second_order_rhs(model: &ModelParams, omega: f64, phi: f64) -> f64 {
    let v = phi.max(0.0);
    omega * v - model.a_p() * v.powf(model.p()) - model.a_q() * v.powf(model.q())
}

fn first_order_rhs(model: &ModelParams, omega: f64, phi: f64) -> f64 {
    let v = phi.max(0.0);
    -v * reduced_g(model, omega, v).max(0.0).sqrt()
}

/// Builds the profile of frequency `omega` on `[-L, L]` with spacing `dx`.
///
/// `L` is rounded to a whole number of cells.
pub fn build_profile(model: &ModelParams, omega: f64, dx: f64, half_width: f64) -> Result<Profile> {
    if !(dx > 0.0 && dx.is_finite() && half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::InvalidInput("dx and L must be positive".into()));
    }
    let n = (half_width / dx).round() as usize;
    if n < 8 {
        return Err(Error::InvalidInput(format!(
            "grid too coarse: L/dx = {} (need at least 8)",
            half_width / dx
        )));
    }
    let phi0 = model.phi0_from_omega(omega)?.value();
    let h = dx / SUBSTEPS as f64;

    let mut right = Vec::with_capacity(n + 1);
    let mut right_d = Vec::with_capacity(n + 1);
    right.push(phi0);
    right_d.push(0.0);

    let f2 = |v: f64| second_order_rhs(model, omega, v);
    let f1 = |v: f64| first_order_rhs(model, omega, v);
    let (mut phi, mut dphi) = (phi0, 0.0);
    let mut first_order = false;
    let mut last = phi0;
    for _ in 0..n {
        for _ in 0..SUBSTEPS {
            if first_order {
                let k1 = f1(phi);
                let k2 = f1(phi + 0.5 * h * k1);
                let k3 = f1(phi + 0.5 * h * k2);
                let k4 = f1(phi + h * k3);
                phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                dphi = f1(phi);
            } else {
                let (a1, b1) = (dphi, f2(phi));
                let (a2, b2) = (dphi + 0.5 * h * b1, f2(phi + 0.5 * h * a1));
                let (a3, b3) = (dphi + 0.5 * h * b2, f2(phi + 0.5 * h * a2));
                let (a4, b4) = (dphi + h * b3, f2(phi + h * a3));
                phi += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
                dphi += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
                if reduced_g(model, omega, phi) >= 0.5 * omega {
                    first_order = true;
                }
            }
            if !phi.is_finite() {
                return Err(Error::NonFinite(format!("profile integration at omega = {omega}")));
            }
            // the exact profile decreases; anything else means dx does not
            // resolve the peak
            if phi > last || phi < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "dx = {dx} does not resolve the profile at omega = {omega}; decrease dx"
                )));
            }
            last = phi;
        }
        right.push(phi);
        right_d.push(dphi);
    }

    let tail = right[n];
    if !(tail < TAIL_TOL * phi0) {
        return Err(Error::InsufficientDomain {
            half_width: n as f64 * dx,
            tail,
        });
    }

    let mut values = Vec::with_capacity(2 * n + 1);
    let mut derivative = Vec::with_capacity(2 * n + 1);
    for j in (1..=n).rev() {
        values.push(right[j]);
        derivative.push(-right_d[j]);
    }
    values.extend_from_slice(&right);
    derivative.extend_from_slice(&right_d);
    Ok(Profile {
        omega,
        phi0,
        dx,
        half_width: n as f64 * dx,
        values,
        derivative,
    })
}

/// `M(φ_ω) = ½ ∫ φ_ω² dx`, from the quadrature `φ₀³ ∫₀¹ s / sqrt(Φ_p + Φ_q) ds`.
pub fn mass_of_wave(model: &ModelParams, omega: f64) -> Result<f64> {
    WaveState::from_omega(model, omega)?.mass(&slope_quadrature())
}
