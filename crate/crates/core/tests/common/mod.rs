#![allow(dead_code)]

use nls_lab::{Bound, ModelParams};
use proptest::prelude::*;

/// A model with standing waves: one of the three admissible sign patterns,
/// `|a| ∈ [0.5, 2]`, `1.1 ≤ p < q ≤ p + 3`.
pub fn any_model() -> impl Strategy<Value = ModelParams> {
    (0..3usize, 0.5..2.0f64, 0.5..2.0f64, 1.1..6.0f64, 0.2..3.0f64).prop_map(|(case, a, b, p, dq)| {
        let (a_p, a_q) = match case {
            0 => (a, b),
            1 => (a, -b),
            _ => (-a, b),
        };
        ModelParams::new(a_p, a_q, p, p + dq).unwrap()
    })
}

/// A frequency inside the window, parametrized by `u ∈ (0, 1)`: a fraction
/// of `ω*` when it is finite, otherwise log-uniform in `[1e-2, 1e2]`.
pub fn omega_at(model: &ModelParams, u: f64) -> f64 {
    match model.frequency_window().unwrap().omega_star {
        Bound::Finite(w) => u * w,
        Bound::Unbounded => 10f64.powf(-2.0 + 4.0 * u),
    }
}

/// A peak inside the window, parametrized by `u ∈ (0, 1)`.
pub fn phi0_at(model: &ModelParams, u: f64) -> f64 {
    let w = model.frequency_window().unwrap();
    match w.phi_upper {
        Bound::Finite(hi) => w.phi_lower + u * (hi - w.phi_lower),
        Bound::Unbounded if w.phi_lower > 0.0 => w.phi_lower * (1.0 + 10f64.powf(-3.0 + 5.0 * u)),
        Bound::Unbounded => 10f64.powf(-1.5 + 3.0 * u),
    }
}
