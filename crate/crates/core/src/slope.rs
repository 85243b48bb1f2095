//! The slope `J(ω) = ∂_ω M(φ_ω)` and its reformulation in terms of the peak
//! amplitude.
//!
//! With `Φ_p = 2a_p/(p+1) φ₀^(p+1) (1 - s^(p-1))` and `Φ_q` defined likewise,
//! the slope factors as `J = C(φ₀) F(φ₀)` where `C(φ₀) = ½ φ₀² dφ₀/dω > 0`
//! and
//!
//! ```text
//! F(φ₀) = ∫₀¹ ((5-p)Φ_p + (5-q)Φ_q) / (Φ_p + Φ_q)^(3/2) s ds.
//! ```
//!
//! The integrand has an inverse square root singularity at `s = 1` and, when
//! `a_p < 0` and `ω` is small, a boundary layer at
//! `s ~ (ω φ₀² / |Φ_p-scale|)^(1/(p-1))` that degenerates into an
//! `s^((5-3p)/2)` singularity in the limit. The quadrature is split at the
//! layer.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ModelParams, SignCase};
use crate::special::{beta, integrate, integrate_01, BetaArgs, QuadratureConfig};

/// Quadrature settings used for slope and mass integrals.
pub(crate) fn slope_quadrature() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_refinement_level: 12,
    }
}

/// Relative tolerance used when a parameter is compared with a threshold
/// such as `p = 7/3` or `2p + q = 7`.
pub(crate) const THRESHOLD_TOL: f64 = 1e-12;

pub(crate) fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= THRESHOLD_TOL * b.abs().max(1.0)
}

/// `1 - s^k` given `s` and `c = 1 - s`.
#[inline]
pub(crate) fn one_minus_pow(s: f64, c: f64, k: f64) -> f64 {
    if s < 0.5 {
        1.0 - s.powf(k)
    } else {
        -(k * (-c).ln_1p()).exp_m1()
    }
}

/// `u(s) = (1 - s^a) - (a/b)(1 - s^b)`, nonnegative for `a < b`, with the
/// series in `c = 1 - s` near `s = 1` where the two terms cancel to `O(c²)`.
fn turning_bracket(s: f64, c: f64, a: f64, b: f64) -> f64 {
    if c >= 1e-3 {
        return one_minus_pow(s, c, a) - a / b * one_minus_pow(s, c, b);
    }
    // 1 - (1-c)^a = -Σ_{k≥1} binom(a, k) (-c)^k; the k = 1 terms cancel
    let r = a / b;
    let (mut ba, mut bb) = (a, b);
    let mut ck = -c;
    let mut acc = 0.0;
    for k in 2..10 {
        let kf = k as f64;
        ba *= (a - kf + 1.0) / kf;
        bb *= (b - kf + 1.0) / kf;
        ck *= -c;
        acc -= (ba - r * bb) * ck;
    }
    acc
}

/// A standing wave `(ω, φ₀)` with its integrand coefficients normalized by
/// `σ = |P| + |Q|`, `P = 2a_p/(p+1) φ₀^(p+1)`, `Q = 2a_q/(q+1) φ₀^(q+1)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WaveState {
    pub model: ModelParams,
    pub phi0: f64,
    /// `ln σ`
    pub ln_sigma: f64,
    /// `P / σ`
    pub p_hat: f64,
    /// `Q / σ`
    pub q_hat: f64,
    /// `ω φ₀² / σ`
    pub w_hat: f64,
    /// `φ₀³ dω/dφ₀ / σ = (p-1) P/σ + (q-1) Q/σ`
    pub lin_hat: f64,
}

impl WaveState {
    pub fn new(model: &ModelParams, omega: f64, phi0: f64) -> Self {
        let lnphi = phi0.ln();
        let ln_p = model.kp().abs().ln() + (model.p() + 1.0) * lnphi;
        let ln_q = model.kq().abs().ln() + (model.q() + 1.0) * lnphi;
        let hi = ln_p.max(ln_q);
        let ln_sigma = hi + ((ln_p - hi).exp() + (ln_q - hi).exp()).ln();
        let p_hat = model.a_p().signum() * (ln_p - ln_sigma).exp();
        let q_hat = model.a_q().signum() * (ln_q - ln_sigma).exp();
        let w_hat = omega * (2.0 * lnphi - ln_sigma).exp();
        let lin_hat = model.domega_dphi0_unchecked(phi0) * (3.0 * lnphi - ln_sigma).exp();
        Self {
            model: *model,
            phi0,
            ln_sigma,
            p_hat,
            q_hat,
            w_hat,
            lin_hat,
        }
    }

    pub fn from_omega(model: &ModelParams, omega: f64) -> Result<Self> {
        let phi0 = model.phi0_from_omega(omega)?.value();
        Ok(Self::new(model, omega, phi0))
    }

    pub fn from_phi0(model: &ModelParams, phi0: f64) -> Result<Self> {
        let w = model.frequency_window()?;
        if !(phi0 > w.phi_lower && w.phi_upper.exceeds(phi0)) {
            return Err(Error::Domain(format!(
                "phi0 = {phi0} outside the admissible window ({}, {})",
                w.phi_lower, w.phi_upper
            )));
        }
        Ok(Self::new(model, model.omega_unchecked(phi0), phi0))
    }

    /// Normalized `(Φ_p, Φ_q, Φ_p + Φ_q)` at `s` with `c = 1 - s`.
    #[inline]
    pub fn terms(&self, s: f64, c: f64) -> (f64, f64, f64) {
        let (p, q) = (self.model.p(), self.model.q());
        let op = one_minus_pow(s, c, p - 1.0);
        let oq = one_minus_pow(s, c, q - 1.0);
        let fp = self.p_hat * op;
        let fq = self.q_hat * oq;
        let sum = if self.model.a_p() < 0.0 {
            // ωφ₀²(1 - s^(q-1)) + |P| s^(p-1) (1 - s^(q-p)); all terms positive
            let sp = if s < 0.5 { s.powf(p - 1.0) } else { 1.0 - op };
            self.w_hat * oq + (-self.p_hat) * sp * one_minus_pow(s, c, q - p)
        } else if self.model.a_q() < 0.0 {
            // P u(s) + λ (1 - s^(q-1)) / (q-1) with λ = φ₀³ ω'(φ₀) / σ;
            // both terms are nonnegative
            self.p_hat * turning_bracket(s, c, p - 1.0, q - 1.0) + self.lin_hat / (q - 1.0) * oq
        } else {
            fp + fq
        };
        (fp, fq, sum)
    }

    /// Location of the small-`s` boundary layer when `a_p < 0`.
    fn left_layer(&self) -> Option<f64> {
        if self.model.a_p() >= 0.0 {
            return None;
        }
        let sl = (self.w_hat / -self.p_hat).powf(1.0 / (self.model.p() - 1.0));
        (sl > 0.0 && sl < 0.05).then_some(sl)
    }

    /// Distance to `s = 1` of the layer that forms when `a_q < 0` and `φ₀`
    /// approaches the turning point: there `Φ_p + Φ_q ≈ λ c + μ c²` with
    /// `c = 1 - s` and `λ → 0`.
    fn right_layer(&self) -> Option<f64> {
        if self.model.a_q() >= 0.0 {
            return None;
        }
        let (p, q) = (self.model.p(), self.model.q());
        let mu = 0.5 * self.p_hat * (p - 1.0) * (q - p);
        let cr = self.lin_hat / mu;
        (cr > 0.0 && cr < 0.05).then_some(cr)
    }

    /// `∫₀¹ g(s, 1-s) ds`, split at the boundary layers.
    pub fn integrate<G>(&self, mut g: G, cfg: &QuadratureConfig) -> Result<f64>
    where
        G: FnMut(f64, f64) -> f64,
    {
        // breakpoints as (s, 1 - s), both exact
        let mut cuts = vec![(0.0, 1.0)];
        if let Some(sl) = self.left_layer() {
            cuts.push((sl, 1.0 - sl));
        }
        if let Some(cr) = self.right_layer() {
            if cr < cuts.last().map_or(1.0, |c| c.1) {
                cuts.push((1.0 - cr, cr));
            }
        }
        if cuts.len() == 1 {
            return integrate_01(g, cfg);
        }
        cuts.push((1.0, 0.0));
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let ((a, _), (b, cb)) = (w[0], w[1]);
            total += integrate(a, b, |x, d| g(x, d + cb), cfg)?;
        }
        Ok(total)
    }

    /// `F(φ₀)`.
    pub fn f_value(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let (p, q) = (self.model.p(), self.model.q());
        let v = self.integrate(
            |s, c| {
                let (fp, fq, sum) = self.terms(s, c);
                ((5.0 - p) * fp + (5.0 - q) * fq) / sum * s / sum.sqrt()
            },
            cfg,
        )?;
        Ok(v * (-0.5 * self.ln_sigma).exp())
    }

    /// `∫₀¹ ∂_{φ₀} I_γ s ds`.
    pub fn df_gamma(&self, gamma: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let v = self.integrate(|s, c| self.di_normalized(gamma, s, c) * s, cfg)?;
        Ok(v * self.di_scale(gamma))
    }

    /// The bracket of the `∂_{φ₀} I_γ` closed form with normalized Φ terms.
    #[inline]
    fn di_normalized(&self, gamma: f64, s: f64, c: f64) -> f64 {
        let (p, q) = (self.model.p(), self.model.q());
        let (fp, fq, sum) = self.terms(s, c);
        let lin = (5.0 - p) * (2.0 * gamma - (p + 1.0)) * fp
            + (5.0 - q) * (2.0 * gamma - (q + 1.0)) * fq;
        // divided in stages: sum^(5/2) underflows next to s = 1
        (lin - 3.0 * (q - p) * (q - p) * (fp / sum) * fq) / sum / sum.sqrt()
    }

    /// `½ φ₀^(γ-1) σ^(-1/2)`
    fn di_scale(&self, gamma: f64) -> f64 {
        0.5 * ((gamma - 1.0) * self.phi0.ln() - 0.5 * self.ln_sigma).exp()
    }

    /// `M(φ_ω) = φ₀³ ∫₀¹ s / sqrt(Φ_p + Φ_q) ds`.
    pub fn mass(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let v = self.integrate(
            |s, c| {
                let (_, _, sum) = self.terms(s, c);
                s / sum.sqrt()
            },
            cfg,
        )?;
        Ok(v * (3.0 * self.phi0.ln() - 0.5 * self.ln_sigma).exp())
    }

    /// `C(φ₀) = ½ φ₀² dφ₀/dω`.
    pub fn c_factor(&self) -> Result<f64> {
        let d = self.model.domega_dphi0_unchecked(self.phi0);
        if d <= 0.0 {
            return Err(Error::Pole { phi0: self.phi0 });
        }
        Ok(0.5 * self.phi0 * self.phi0 / d)
    }
}

/// The pair `(Φ_p, Φ_q)` at a point `s` of the slope integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandTerms {
    pub s: f64,
    pub phi_p_term: f64,
    pub phi_q_term: f64,
}

impl IntegrandTerms {
    pub fn new(model: &ModelParams, phi0: f64, s: f64) -> Result<Self> {
        check_s(s)?;
        let st = WaveState::from_phi0(model, phi0)?;
        let (fp, fq, _) = st.terms(s, 1.0 - s);
        let sigma = st.ln_sigma.exp();
        Ok(Self {
            s,
            phi_p_term: fp * sigma,
            phi_q_term: fq * sigma,
        })
    }

    pub fn sum(&self) -> f64 {
        self.phi_p_term + self.phi_q_term
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("s = {s} must lie in (0, 1)")))
    }
}

/// Result of evaluating the slope at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeEvaluation {
    pub omega: f64,
    pub phi0: f64,
    pub c_factor: f64,
    pub f_value: f64,
    pub j_value: f64,
    pub gamma: f64,
}

/// `F(φ₀)` for a peak inside the admissible window.
pub fn f_of_phi0(model: &ModelParams, phi0: f64) -> Result<f64> {
    WaveState::from_phi0(model, phi0)?.f_value(&slope_quadrature())
}

/// `J(ω) = C(φ₀) F(φ₀)`.
pub fn slope(model: &ModelParams, omega: f64) -> Result<SlopeEvaluation> {
    slope_with(model, omega, &slope_quadrature())
}

pub fn slope_with(model: &ModelParams, omega: f64, cfg: &QuadratureConfig) -> Result<SlopeEvaluation> {
    let st = WaveState::from_omega(model, omega)?;
    let c_factor = st.c_factor()?;
    let f_value = st.f_value(cfg)?;
    Ok(SlopeEvaluation {
        omega,
        phi0: st.phi0,
        c_factor,
        f_value,
        j_value: c_factor * f_value,
        gamma: 0.0,
    })
}

/// `F_γ(φ₀) = φ₀^γ F(φ₀)`.
pub fn f_gamma(model: &ModelParams, phi0: f64, gamma: f64) -> Result<f64> {
    Ok(phi0.powf(gamma) * f_of_phi0(model, phi0)?)
}

/// The integrand `I_γ(φ₀; s)` of `F_γ` (without the factor `s`).
pub fn i_gamma(model: &ModelParams, phi0: f64, gamma: f64, s: f64) -> Result<f64> {
    let t = IntegrandTerms::new(model, phi0, s)?;
    let (p, q) = (model.p(), model.q());
    let sum = t.sum();
    Ok(phi0.powf(gamma) * ((5.0 - p) * t.phi_p_term + (5.0 - q) * t.phi_q_term) / (sum * sum.sqrt()))
}

/// Closed form of `∂I_γ/∂φ₀` at fixed `s`.
pub fn i_gamma_dphi0(model: &ModelParams, phi0: f64, gamma: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    let st = WaveState::from_phi0(model, phi0)?;
    Ok(st.di_normalized(gamma, s, 1.0 - s) * st.di_scale(gamma))
}

/// `∂F_γ/∂φ₀ = ∫₀¹ ∂_{φ₀} I_γ s ds`.
pub fn df_gamma_dphi0(model: &ModelParams, phi0: f64, gamma: f64) -> Result<f64> {
    WaveState::from_phi0(model, phi0)?.df_gamma(gamma, &slope_quadrature())
}

/// `h(s) = (1 - s^(q-1)) / (1 - s^(p-1))`, increasing from `1` to
/// `(q-1)/(p-1)`.
pub fn monotone_ratio(model: &ModelParams, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("s = {s} must lie in [0, 1]")));
    }
    let (p, q) = (model.p(), model.q());
    if s == 0.0 {
        return Ok(1.0);
    }
    if s == 1.0 {
        return Ok((q - 1.0) / (p - 1.0));
    }
    // 1 + s^(p-1) (1 - s^(q-p)) / (1 - s^(p-1)) keeps the rounding monotone
    // where s^(p-1) is below the unit roundoff
    let ls = s.ln();
    let excess = ((p - 1.0) * ls).exp() * ((q - p) * ls).exp_m1() / ((p - 1.0) * ls).exp_m1();
    Ok(1.0 + excess)
}

/// The two peak thresholds used in the focusing-focusing case `p < 5 < q`.
///
/// Above `φ₀,₁` the function `F` is negative; below `φ₀,₂` the weighted
/// integrand with `γ = (p+1)/2` is decreasing in `φ₀`. Returned as
/// `(φ₀,₁, φ₀,₂)`.
pub fn thresholds(model: &ModelParams) -> Result<(f64, f64)> {
    let (a_p, a_q, p, q) = (model.a_p(), model.a_q(), model.p(), model.q());
    if !(a_p > 0.0 && a_q > 0.0 && p < 5.0 && q > 5.0) {
        return Err(Error::Domain(
            "thresholds are defined for a_p > 0, a_q > 0 and p < 5 < q".into(),
        ));
    }
    let ln_ratio = (a_p / a_q).ln() + (5.0 - p).ln() - (q - 5.0).ln() + (p - 1.0).ln()
        - (q - 1.0).ln()
        + (q + 1.0).ln()
        - (p + 1.0).ln();
    // φ₀,₁^(q-p) carries one more factor (q+1)/(p+1); φ₀,₂^(q-p) replaces
    // (5-p) by (5+2q-3p).
    let ln1 = ln_ratio + (q + 1.0).ln() - (p + 1.0).ln();
    let ln2 = ln_ratio - (5.0 - p).ln() + (5.0 + 2.0 * q - 3.0 * p).ln();
    Ok(((ln1 / (q - p)).exp(), (ln2 / (q - p)).exp()))
}

/// One-sided limit of `J` at an end of the frequency window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitLabel {
    /// Finite and positive.
    Positive,
    /// Exactly zero.
    Zero,
    /// Finite and negative.
    Negative,
    /// Tends to zero from above.
    ZeroPlus,
    /// Tends to zero from below.
    ZeroMinus,
    PlusInfinity,
    MinusInfinity,
    /// No result available for this parameter range.
    NotCovered,
}

impl LimitLabel {
    /// Sign of `J` close to the limit, when determined.
    pub fn sign(self) -> Option<i8> {
        match self {
            LimitLabel::Positive | LimitLabel::ZeroPlus | LimitLabel::PlusInfinity => Some(1),
            LimitLabel::Negative | LimitLabel::ZeroMinus | LimitLabel::MinusInfinity => Some(-1),
            LimitLabel::Zero | LimitLabel::NotCovered => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LimitLabel::Positive => "positive",
            LimitLabel::Zero => "zero",
            LimitLabel::Negative => "negative",
            LimitLabel::ZeroPlus => "zero_plus",
            LimitLabel::ZeroMinus => "zero_minus",
            LimitLabel::PlusInfinity => "plus_infinity",
            LimitLabel::MinusInfinity => "minus_infinity",
            LimitLabel::NotCovered => "not_covered",
        }
    }

    fn of_finite(v: f64) -> Self {
        if v > 0.0 {
            LimitLabel::Positive
        } else if v < 0.0 {
            LimitLabel::Negative
        } else {
            LimitLabel::Zero
        }
    }
}

impl fmt::Display for LimitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `J₀ = lim_{ω→0⁺} J(ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroFrequencyResult {
    /// Finite value of the limit when it is finite and known in closed form.
    pub value: Option<f64>,
    /// `C_* = 2a_q/(q+1) φ_*^(q+1)` (only when `a_p < 0`).
    pub c_star: Option<f64>,
    /// `C₀ = C_*^(-1/2) C(φ_*) / (q-p)` (only when `a_p < 0`).
    pub c0: Option<f64>,
    pub sign_label: LimitLabel,
}

/// Limit of the slope at zero frequency.
///
/// For `a_p < 0 < a_q` and `p < 7/3` the value is
/// `(7-2p-q) C₀ B((7-3p)/(2(q-p)), 1/2)`; for `p ≥ 7/3` it is `-∞`. For
/// `a_p > 0` the limit follows from the small-amplitude expansion
/// `J ≈ (5-p) φ₀^((7-3p)/2) K` and, at `p = 5`, `J ≈ (5-q) a_q φ₀^(q-9) K`;
/// the borderline values at `p = 7/3` and at `(p, q) = (5, 9)` are evaluated
/// in closed form.
pub fn j_zero_limit(model: &ModelParams) -> Result<ZeroFrequencyResult> {
    model.require_waves()?;
    let (a_p, a_q, p, q) = (model.a_p(), model.a_q(), model.p(), model.q());
    if a_p < 0.0 {
        let w = model.frequency_window()?;
        let ln_phi = w.phi_lower.ln();
        // C_* = kq φ_*^(q+1); C(φ_*) = φ_*^5 / (2 C_* (q-p))
        let ln_cstar = model.kq().ln() + (q + 1.0) * ln_phi;
        let ln_c_at = 5.0 * ln_phi - (2.0 * (q - p)).ln() - ln_cstar;
        let ln_c0 = -0.5 * ln_cstar + ln_c_at - (q - p).ln();
        let c_star = ln_cstar.exp();
        let c0 = ln_c0.exp();
        if p < 7.0 / 3.0 && !near(p, 7.0 / 3.0) {
            let factor = if near(2.0 * p + q, 7.0) { 0.0 } else { 7.0 - 2.0 * p - q };
            let x1 = (7.0 - 3.0 * p) / (2.0 * (q - p));
            let value = factor * c0 * beta(BetaArgs::new(x1, 0.5)?);
            return Ok(ZeroFrequencyResult {
                value: Some(value),
                c_star: Some(c_star),
                c0: Some(c0),
                sign_label: LimitLabel::of_finite(value),
            });
        }
        return Ok(ZeroFrequencyResult {
            value: None,
            c_star: Some(c_star),
            c0: Some(c0),
            sign_label: LimitLabel::MinusInfinity,
        });
    }

    let mut value = None;
    let label = if near(p, 7.0 / 3.0) {
        // (5-p)(p+1)/(4a_p(p-1)) · kp^(-1/2) · B(2/(p-1), 1/2)/(p-1)
        let v = (5.0 - p) * (p + 1.0) / (4.0 * a_p * (p - 1.0))
            / model.kp().sqrt()
            * beta(BetaArgs::new(2.0 / (p - 1.0), 0.5)?)
            / (p - 1.0);
        value = Some(v);
        LimitLabel::Positive
    } else if p < 7.0 / 3.0 {
        value = Some(0.0);
        LimitLabel::ZeroPlus
    } else if near(p, 5.0) {
        let s = -a_q.signum();
        if near(q, 9.0) {
            // -(27√3π/80) a_q / a_p^(5/2)
            let v = -27.0 * 3f64.sqrt() * std::f64::consts::PI / 80.0 * a_q / a_p.powf(2.5);
            value = Some(v);
            LimitLabel::of_finite(v)
        } else if q < 9.0 {
            if s > 0.0 {
                LimitLabel::PlusInfinity
            } else {
                LimitLabel::MinusInfinity
            }
        } else {
            value = Some(0.0);
            if s > 0.0 {
                LimitLabel::ZeroPlus
            } else {
                LimitLabel::ZeroMinus
            }
        }
    } else if p < 5.0 {
        LimitLabel::PlusInfinity
    } else {
        LimitLabel::MinusInfinity
    };
    Ok(ZeroFrequencyResult {
        value,
        c_star: None,
        c0: None,
        sign_label: label,
    })
}

/// Limit of the slope at the upper end `ω → ω*` of the window.
///
/// Returns [`LimitLabel::NotCovered`] for `a_p > 0 > a_q` with `p < 5`,
/// where no result is available.
pub fn j_star_limit_sign(model: &ModelParams) -> Result<LimitLabel> {
    model.require_waves()?;
    let (a_p, a_q, p, q) = (model.a_p(), model.a_q(), model.p(), model.q());
    if a_q > 0.0 {
        Ok(if near(q, 7.0 / 3.0) {
            LimitLabel::Positive
        } else if q < 7.0 / 3.0 {
            LimitLabel::ZeroPlus
        } else if near(q, 5.0) {
            if a_p > 0.0 {
                LimitLabel::ZeroPlus
            } else {
                LimitLabel::ZeroMinus
            }
        } else if q < 5.0 {
            LimitLabel::PlusInfinity
        } else {
            LimitLabel::MinusInfinity
        })
    } else if p >= 5.0 || near(p, 5.0) {
        Ok(LimitLabel::PlusInfinity)
    } else {
        Ok(LimitLabel::NotCovered)
    }
}

/// Weight exponent `γ` for which `∂_{φ₀} I_γ` has a fixed sign in the
/// regime of `model`, used by the second-derivative diagnostic.
pub fn sign_definite_gamma(model: &ModelParams) -> f64 {
    let (p, q) = (model.p(), model.q());
    match model.sign_case() {
        SignCase::FocusingFocusing => (p + 1.0) / 2.0,
        SignCase::FocusingDefocusing => {
            if p > 5.0 {
                p - q + 3.0
            } else {
                (p + 1.0) / 2.0
            }
        }
        SignCase::DefocusingFocusing | SignCase::DefocusingDefocusing => {
            if 3.0 * q >= 2.0 * p + 5.0 {
                (q + 1.0) / 2.0
            } else {
                p - q + 3.0
            }
        }
    }
}
