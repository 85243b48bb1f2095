//! Stability type of a family of standing waves and the critical frequency.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Bound, ModelParams};
use crate::profile::mass_of_wave;
use crate::slope::{self, sign_definite_gamma, slope_quadrature, LimitLabel, WaveState};

/// Comparisons against the boundaries `p = 5`, `q = 5` and `q = 7 - 2p`
/// treat values within this relative distance as on the boundary.
const BOUNDARY_TOL: f64 = 1e-9;

fn le(a: f64, b: f64) -> bool {
    a <= b + BOUNDARY_TOL * b.abs().max(1.0)
}

/// Stability pattern of `ω ↦ φ_ω` over the admissible frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilityClass {
    /// Stable for every frequency.
    S,
    /// Unstable for every frequency.
    U,
    /// Stable below a critical frequency, unstable from it on.
    SU,
    /// Unstable up to and including a critical frequency, stable above it.
    US,
}

impl StabilityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityClass::S => "S",
            StabilityClass::U => "U",
            StabilityClass::SU => "SU",
            StabilityClass::US => "US",
        }
    }

    pub fn has_transition(self) -> bool {
        matches!(self, StabilityClass::SU | StabilityClass::US)
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StabilityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(StabilityClass::S),
            "U" => Ok(StabilityClass::U),
            "SU" => Ok(StabilityClass::SU),
            "US" => Ok(StabilityClass::US),
            _ => Err(Error::InvalidInput(format!("unknown stability type {s:?}"))),
        }
    }
}

/// Stability type from the signs of the coefficients and the exponents.
pub fn classify(model: &ModelParams) -> Result<StabilityClass> {
    model.require_waves()?;
    let (p, q) = (model.p(), model.q());
    Ok(match (model.a_p() > 0.0, model.a_q() > 0.0) {
        (true, true) => {
            if le(q, 5.0) {
                StabilityClass::S
            } else if le(5.0, p) {
                StabilityClass::U
            } else {
                StabilityClass::SU
            }
        }
        (true, false) => {
            if le(p, 5.0) {
                StabilityClass::S
            } else {
                StabilityClass::US
            }
        }
        _ => {
            if le(q, 7.0 - 2.0 * p) {
                StabilityClass::S
            } else if le(5.0, q) {
                StabilityClass::U
            } else {
                StabilityClass::US
            }
        }
    })
}

/// A located sign change of the slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub omega_c: f64,
    /// Width of the final bracket.
    pub bracket_width: f64,
    /// `J` at the lower end of the final bracket.
    pub j_left: f64,
    /// `J` at the upper end of the final bracket.
    pub j_right: f64,
    /// `∂²_ω M(φ_ω)` at `ω_c`.
    pub d2m: f64,
    pub d2m_sign: i8,
}

/// Outcome of the critical-frequency search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CriticalSearch {
    Critical(CriticalPoint),
    /// `J` kept the sign `sign` up to the end of the window.
    NoSignChange { sign: i8 },
    /// `J` stayed negative while the upper bracket grew past the cap.
    CapExceeded { sign: i8, omega_last: f64 },
}

/// Upper limit for the doubling of the bracket.
pub const OMEGA_CAP: f64 = 1e10;

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Locates the frequency where `J` changes sign.
///
/// The sign near `ω = 0` comes from [`slope::j_zero_limit`] when it is
/// determined there, otherwise from `J` at the smallest sampled frequency
/// `10⁻⁸ ω*` (`10⁻⁸` for unbounded windows). The upper bracket starts at
/// `ω = 1` or just below `ω*` and doubles until the sign differs, stopping
/// past `10¹⁰` or, when `ω*` is finite, at `ω*(1 - 10⁻⁹)`. Bisection, geometric while the bracket spans more than
/// a factor two, then stops at relative width `tol`.
///
/// Reaching the cap while `J < 0` is reported as [`CriticalSearch::CapExceeded`]
/// (the critical frequency, if any, lies beyond the cap); reaching it while
/// `J > 0` means the family is stable on the whole sampled range and is
/// reported as [`CriticalSearch::NoSignChange`].
pub fn find_omega_crit(model: &ModelParams, tol: f64) -> Result<CriticalSearch> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must lie in (0, 1)")));
    }
    let window = model.frequency_window()?;
    let omega_star = window.omega_star.finite();
    let omega_min = 1e-8 * omega_star.unwrap_or(1.0);
    let upper_limit = omega_star.map(|w| w * (1.0 - 1e-9));
    let j = |omega: f64| -> Result<f64> { Ok(slope::slope(model, omega)?.j_value) };

    let label = slope::j_zero_limit(model)?.sign_label;
    let s0 = match label.sign() {
        Some(s) if label != LimitLabel::Zero => s,
        _ => sign_of(j(omega_min)?),
    };
    if s0 == 0 {
        return Err(Error::NoConvergence("slope vanishes at the lower end".into()));
    }

    let mut lo = omega_min;
    let mut hi = match upper_limit {
        Some(u) => u.min(1.0),
        None => 1.0,
    };
    let mut j_hi = j(hi)?;
    while sign_of(j_hi) == s0 {
        lo = hi;
        match upper_limit {
            Some(u) => {
                if hi >= u {
                    return Ok(CriticalSearch::NoSignChange { sign: s0 });
                }
                hi = (2.0 * hi).min(u);
            }
            None => {
                if hi > OMEGA_CAP {
                    if s0 > 0 {
                        return Ok(CriticalSearch::NoSignChange { sign: s0 });
                    }
                    return Ok(CriticalSearch::CapExceeded {
                        sign: s0,
                        omega_last: hi,
                    });
                }
                hi *= 2.0;
            }
        }
        j_hi = j(hi)?;
    }

    // an exact zero, measured against the natural size M/ω of the slope
    let vanishes = |omega: f64, jv: f64| -> Result<bool> {
        Ok(jv.abs() <= 1e-14 * mass_of_wave(model, omega)? / omega)
    };
    let mut root = None;
    if vanishes(hi, j_hi)? {
        root = Some(hi);
    }
    while root.is_none() && hi - lo > tol * lo {
        let mid = if hi > 2.0 * lo { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        let jm = j(mid)?;
        if vanishes(mid, jm)? {
            root = Some(mid);
        } else if sign_of(jm) == s0 {
            lo = mid;
        } else {
            hi = mid;
            j_hi = jm;
        }
    }

    let (omega_c, bracket_width, j_left, j_right) = match root {
        Some(r) => (r, 0.0, j(r)?, j(r)?),
        None => (0.5 * (lo + hi), hi - lo, j(lo)?, j_hi),
    };
    let d2m = second_derivative_of_mass(model, omega_c)?;
    Ok(CriticalSearch::Critical(CriticalPoint {
        omega_c,
        bracket_width,
        j_left,
        j_right,
        d2m,
        d2m_sign: sign_of(d2m),
    }))
}

/// `∂²_ω M` at a zero of `F`, in the factored form
/// `∂_ω φ₀ · C(φ₀) · φ₀^(-γ) · ∂_{φ₀} F_γ(φ₀)`.
///
/// The weight `γ` is the one for which `∂_{φ₀} F_γ` has a fixed sign in the
/// regime of `model`; away from a zero of `F` the formula drops the term
/// proportional to `F`.
pub fn second_derivative_of_mass(model: &ModelParams, omega: f64) -> Result<f64> {
    let st = WaveState::from_omega(model, omega)?;
    let gamma = sign_definite_gamma(model);
    let c = st.c_factor()?;
    let dphi = model.dphi0_domega(st.phi0)?;
    let dfg = st.df_gamma(gamma, &slope_quadrature())?;
    Ok(dphi * c * st.phi0.powf(-gamma) * dfg)
}

/// Sign pattern of `J` on a sample of frequencies, with consecutive equal
/// signs merged.
pub fn sign_pattern(values: &[f64]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for &v in values {
        let s = sign_of(v);
        if s != 0 && out.last() != Some(&s) {
            out.push(s);
        }
    }
    out
}

/// The merged sign pattern implied by a stability type.
pub fn expected_pattern(class: StabilityClass) -> &'static [i8] {
    match class {
        StabilityClass::S => &[1],
        StabilityClass::U => &[-1],
        StabilityClass::SU => &[1, -1],
        StabilityClass::US => &[-1, 1],
    }
}

/// `n` log-spaced frequencies covering the window, from `10⁻³` (or
/// `10⁻³ ω*`) to `10³` (or `ω*(1 - 10⁻³)`).
pub fn log_omega_grid(model: &ModelParams, n: usize) -> Result<Vec<f64>> {
    let w = model.frequency_window()?;
    let (a, b) = match w.omega_star {
        Bound::Finite(s) => (1e-3 * s, s * (1.0 - 1e-3)),
        Bound::Unbounded => (1e-3, 1e3),
    };
    if n == 1 {
        return Ok(vec![a]);
    }
    let (la, lb) = (a.ln(), b.ln());
    Ok((0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect())
}
