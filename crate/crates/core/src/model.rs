//! Model parameters and the algebraic relations between the frequency `ω`
//! and the peak amplitude `φ₀ = φ_ω(0)`.
//!
//! The standing wave profile satisfies `φ₀ = φ_ω(0)` and
//!
//! ```text
//! ω = 2a_p/(p+1) φ₀^(p-1) + 2a_q/(q+1) φ₀^(q-1)
//! ```
//!
//! which is a strictly increasing bijection from the admissible frequencies
//! `(0, ω*)` onto the admissible peaks `(φ_*, φ*)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign pattern of the two coefficients. Positive means focusing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignCase {
    FocusingFocusing,
    FocusingDefocusing,
    DefocusingFocusing,
    DefocusingDefocusing,
}

impl fmt::Display for SignCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignCase::FocusingFocusing => "focusing-focusing",
            SignCase::FocusingDefocusing => "focusing-defocusing",
            SignCase::DefocusingFocusing => "defocusing-focusing",
            SignCase::DefocusingDefocusing => "defocusing-defocusing",
        };
        f.write_str(s)
    }
}

/// An endpoint that may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Bound {
    Finite(f64),
    Unbounded,
}

impl Bound {
    pub fn finite(self) -> Option<f64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Bound::Unbounded)
    }

    /// True when `x` lies strictly below the bound.
    pub fn exceeds(self, x: f64) -> bool {
        match self {
            Bound::Finite(v) => x < v,
            Bound::Unbounded => x.is_finite(),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

/// The nonlinearity `a_p |u|^(p-1) u + a_q |u|^(q-1) u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    a_p: f64,
    a_q: f64,
    p: f64,
    q: f64,
}

impl ModelParams {
    /// Validates `1 < p < q < ∞` and nonzero finite coefficients.
    ///
    /// Both coefficients negative is accepted here (the equation itself is
    /// well defined) but every standing-wave operation rejects it.
    pub fn new(a_p: f64, a_q: f64, p: f64, q: f64) -> Result<Self> {
        if ![a_p, a_q, p, q].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidModel("parameters must be finite".into()));
        }
        if a_p == 0.0 || a_q == 0.0 {
            return Err(Error::InvalidModel("a_p and a_q must be nonzero".into()));
        }
        if !(1.0 < p && p < q) {
            return Err(Error::InvalidModel(format!(
                "exponents must satisfy 1 < p < q (got p = {p}, q = {q})"
            )));
        }
        Ok(Self { a_p, a_q, p, q })
    }

    /// Like [`ModelParams::new`] but also rejects the case without standing waves.
    pub fn with_waves(a_p: f64, a_q: f64, p: f64, q: f64) -> Result<Self> {
        let m = Self::new(a_p, a_q, p, q)?;
        m.require_waves()?;
        Ok(m)
    }

    pub fn a_p(&self) -> f64 {
        self.a_p
    }

    pub fn a_q(&self) -> f64 {
        self.a_q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn sign_case(&self) -> SignCase {
        match (self.a_p > 0.0, self.a_q > 0.0) {
            (true, true) => SignCase::FocusingFocusing,
            (true, false) => SignCase::FocusingDefocusing,
            (false, true) => SignCase::DefocusingFocusing,
            (false, false) => SignCase::DefocusingDefocusing,
        }
    }

    pub fn require_waves(&self) -> Result<()> {
        if self.a_p < 0.0 && self.a_q < 0.0 {
            Err(Error::NoStandingWaves)
        } else {
            Ok(())
        }
    }

    /// `2 a_p / (p+1)`.
    pub(crate) fn kp(&self) -> f64 {
        2.0 * self.a_p / (self.p + 1.0)
    }

    /// `2 a_q / (q+1)`.
    pub(crate) fn kq(&self) -> f64 {
        2.0 * self.a_q / (self.q + 1.0)
    }

    /// `ln` of the positive zero of `ω(φ₀)` when the coefficients have
    /// opposite signs: `φ^(q-p) = -(a_p/a_q)(q+1)/(p+1)`.
    fn ln_omega_zero(&self) -> f64 {
        let ratio = -(self.a_p / self.a_q) * (self.q + 1.0) / (self.p + 1.0);
        ratio.ln() / (self.q - self.p)
    }

    /// `ln` of the positive zero of `dω/dφ₀` when the coefficients have
    /// opposite signs.
    fn ln_turning_point(&self) -> f64 {
        let ratio = -(self.a_p / self.a_q) * (self.p - 1.0) / (self.q - 1.0) * (self.q + 1.0)
            / (self.p + 1.0);
        ratio.ln() / (self.q - self.p)
    }

    /// Admissible frequencies `(0, ω*)` and peaks `(φ_*, φ*)`.
    pub fn frequency_window(&self) -> Result<FrequencyWindow> {
        self.require_waves()?;
        let phi_lower = if self.a_p < 0.0 {
            self.ln_omega_zero().exp()
        } else {
            0.0
        };
        let (phi_upper, omega_star) = if self.a_q < 0.0 {
            let phi_up = self.ln_turning_point().exp();
            (Bound::Finite(phi_up), Bound::Finite(self.omega_unchecked(phi_up)))
        } else {
            (Bound::Unbounded, Bound::Unbounded)
        };
        Ok(FrequencyWindow {
            omega_star,
            phi_lower,
            phi_upper,
        })
    }

    /// `ω(φ₀)` without window checks, written to avoid cancellation next to
    /// the zero of `ω` when the coefficients have opposite signs.
    pub(crate) fn omega_unchecked(&self, phi0: f64) -> f64 {
        let (p, q) = (self.p, self.q);
        let lnphi = phi0.ln();
        if self.a_p < 0.0 {
            let t = (q - p) * (self.ln_omega_zero() - lnphi);
            self.kq() * ((q - 1.0) * lnphi).exp() * -t.exp_m1()
        } else if self.a_q < 0.0 {
            let t = (q - p) * (lnphi - self.ln_omega_zero());
            self.kp() * ((p - 1.0) * lnphi).exp() * -t.exp_m1()
        } else {
            self.kp() * phi0.powf(p - 1.0) + self.kq() * phi0.powf(q - 1.0)
        }
    }

    /// `dω/dφ₀`, written to stay accurate next to the turning point `φ*`.
    pub(crate) fn domega_dphi0_unchecked(&self, phi0: f64) -> f64 {
        let (p, q) = (self.p, self.q);
        let lnphi = phi0.ln();
        if self.a_q < 0.0 {
            let t = (q - p) * (lnphi - self.ln_turning_point());
            self.kp() * (p - 1.0) * ((p - 2.0) * lnphi).exp() * -t.exp_m1()
        } else {
            self.kp() * (p - 1.0) * ((p - 2.0) * lnphi).exp()
                + self.kq() * (q - 1.0) * ((q - 2.0) * lnphi).exp()
        }
    }

    /// Frequency of the standing wave whose peak is `phi0`.
    ///
    /// Accepts the closed window `[φ_*, φ*]`; at `φ_*` (when `a_p < 0`) the
    /// result is `0` and at `φ*` (when `a_q < 0`) it is `ω*`.
    pub fn omega_from_phi0(&self, phi0: f64) -> Result<f64> {
        let w = self.frequency_window()?;
        if !(phi0 > 0.0 && phi0.is_finite()) {
            return Err(Error::Domain(format!("phi0 = {phi0} must be positive")));
        }
        if phi0 < w.phi_lower || matches!(w.phi_upper, Bound::Finite(u) if phi0 > u) {
            return Err(Error::Domain(format!(
                "phi0 = {phi0} outside the admissible window [{}, {}]",
                w.phi_lower, w.phi_upper
            )));
        }
        if phi0 == w.phi_lower {
            return Ok(0.0);
        }
        Ok(self.omega_unchecked(phi0).max(0.0))
    }

    /// `dφ₀/dω`, strictly positive inside the window.
    pub fn dphi0_domega(&self, phi0: f64) -> Result<f64> {
        let w = self.frequency_window()?;
        if !(phi0 > w.phi_lower && w.phi_upper.exceeds(phi0)) {
            if let Bound::Finite(u) = w.phi_upper {
                if phi0 == u {
                    return Err(Error::Pole { phi0 });
                }
            }
            return Err(Error::Domain(format!(
                "phi0 = {phi0} outside the admissible window ({}, {})",
                w.phi_lower, w.phi_upper
            )));
        }
        let d = self.domega_dphi0_unchecked(phi0);
        if d <= 0.0 {
            return Err(Error::Pole { phi0 });
        }
        Ok(1.0 / d)
    }

    /// Checks `0 < ω < ω*`.
    pub fn check_omega(&self, omega: f64) -> Result<FrequencyWindow> {
        let w = self.frequency_window()?;
        if !(omega > 0.0 && w.omega_star.exceeds(omega)) {
            return Err(Error::Domain(format!(
                "omega = {omega} outside the admissible range (0, {})",
                w.omega_star
            )));
        }
        Ok(w)
    }

    /// Peak amplitude of the standing wave of frequency `omega`.
    ///
    /// Inverts `ω(φ₀)` by a bracketed Newton iteration; the bracket makes it
    /// safe because `ω(φ₀)` is strictly increasing on the window.
    pub fn phi0_from_omega(&self, omega: f64) -> Result<PeakAmplitude> {
        let w = self.check_omega(omega)?;
        let g = |x: f64| self.omega_unchecked(x) - omega;

        let mut hi = match w.phi_upper {
            Bound::Finite(u) => u,
            Bound::Unbounded => {
                let mut hi = (2.0 * w.phi_lower).max(1.0);
                let mut n = 0;
                while g(hi) < 0.0 {
                    hi *= 2.0;
                    n += 1;
                    if n > 2100 || !hi.is_finite() {
                        return Err(Error::NoConvergence(format!(
                            "no upper bracket for phi0 at omega = {omega}"
                        )));
                    }
                }
                hi
            }
        };
        let mut lo = if w.phi_lower > 0.0 {
            w.phi_lower
        } else {
            let mut lo = hi.min(1.0);
            let mut n = 0;
            while g(lo) >= 0.0 {
                lo *= 0.5;
                n += 1;
                if n > 2100 || lo == 0.0 {
                    return Err(Error::NoConvergence(format!(
                        "no lower bracket for phi0 at omega = {omega}"
                    )));
                }
            }
            lo
        };

        let mut x = if lo > 0.0 && hi / lo > 4.0 {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        for _ in 0..400 {
            let gx = g(x);
            if gx == 0.0 {
                return Ok(PeakAmplitude(x));
            }
            if gx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let d = self.domega_dphi0_unchecked(x);
            let newton = x - gx / d;
            let next = if d > 0.0 && newton > lo && newton < hi {
                newton
            } else if lo > 0.0 && hi / lo > 4.0 {
                (lo * hi).sqrt()
            } else {
                0.5 * (lo + hi)
            };
            if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * hi {
                return Ok(PeakAmplitude(next));
            }
            x = next;
        }
        Err(Error::NoConvergence(format!(
            "phi0 iteration at omega = {omega}"
        )))
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a_p = {}, a_q = {}, p = {}, q = {}",
            self.a_p, self.a_q, self.p, self.q
        )
    }
}

/// Admissible frequency interval `(0, ω*)` and the matching peak interval
/// `(φ_*, φ*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyWindow {
    pub omega_star: Bound,
    pub phi_lower: f64,
    pub phi_upper: Bound,
}

/// Peak value `φ_ω(0)` of a standing wave.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct PeakAmplitude(f64);

impl PeakAmplitude {
    /// Wraps `phi0` after checking it lies in the open window of `model`.
    pub fn new(model: &ModelParams, phi0: f64) -> Result<Self> {
        let w = model.frequency_window()?;
        if phi0 > w.phi_lower && w.phi_upper.exceeds(phi0) {
            Ok(Self(phi0))
        } else {
            Err(Error::Domain(format!(
                "phi0 = {phi0} outside ({}, {})",
                w.phi_lower, w.phi_upper
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn window_focusing_focusing_is_unbounded() {
        let m = ModelParams::new(1.0, 1.0, 2.0, 3.0).unwrap();
        let w = m.frequency_window().unwrap();
        assert_eq!(w.omega_star, Bound::Unbounded);
        assert_eq!(w.phi_upper, Bound::Unbounded);
        assert_eq!(w.phi_lower, 0.0);
    }

    #[test]
    fn window_defocusing_focusing_lower_peak() {
        let m = ModelParams::new(-1.0, 1.0, 2.0, 3.0).unwrap();
        let w = m.frequency_window().unwrap();
        assert_relative_eq!(w.phi_lower, 4.0 / 3.0, max_relative = 1e-14);
        assert!(w.omega_star.is_unbounded());
    }

    #[test]
    fn window_focusing_defocusing_turning_point() {
        let m = ModelParams::new(2.0, -1.0, 3.0, 5.0).unwrap();
        let w = m.frequency_window().unwrap();
        let up = w.phi_upper.finite().unwrap();
        assert_relative_eq!(up, 1.5f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(w.omega_star.finite().unwrap(), 0.75, max_relative = 1e-13);
        // direct polynomial form
        assert_relative_eq!(up * up - up.powi(4) / 3.0, 0.75, max_relative = 1e-13);
    }

    #[test]
    fn both_negative_has_no_waves() {
        let m = ModelParams::new(-1.0, -1.0, 2.0, 3.0).unwrap();
        assert_eq!(m.frequency_window(), Err(Error::NoStandingWaves));
        assert!(ModelParams::with_waves(-1.0, -1.0, 2.0, 3.0).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(ModelParams::new(1.0, 1.0, 3.0, 3.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 3.0).is_err());
        assert!(ModelParams::new(0.0, 1.0, 2.0, 3.0).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 2.0, 3.0).is_err());
    }

    #[test]
    fn omega_examples() {
        let m = ModelParams::new(2.0, 3.0, 3.0, 5.0).unwrap();
        assert_relative_eq!(m.omega_from_phi0(1.0).unwrap(), 2.0, max_relative = 1e-15);
        let m = ModelParams::new(-1.0, 1.0, 2.0, 3.0).unwrap();
        assert_eq!(m.omega_from_phi0(4.0 / 3.0).unwrap(), 0.0);
        assert!(m.omega_from_phi0(1.0).is_err());
    }

    #[test]
    fn phi0_examples() {
        let m = ModelParams::new(2.0, 3.0, 3.0, 5.0).unwrap();
        assert_relative_eq!(m.phi0_from_omega(2.0).unwrap().value(), 1.0, max_relative = 1e-14);
        let m = ModelParams::new(-1.0, 1.0, 2.0, 3.0).unwrap();
        let expected = (2.0 + 22f64.sqrt()) / 3.0;
        assert_relative_eq!(m.phi0_from_omega(1.0).unwrap().value(), expected, max_relative = 1e-14);
        assert!(m.phi0_from_omega(0.0).is_err());
        assert!(m.phi0_from_omega(-1.0).is_err());
    }

    #[test]
    fn phi0_outside_finite_window() {
        let m = ModelParams::new(2.0, -1.0, 3.0, 5.0).unwrap();
        assert!(m.phi0_from_omega(0.75).is_err());
        assert!(m.phi0_from_omega(0.8).is_err());
        let near = m.phi0_from_omega(0.75 * (1.0 - 1e-12)).unwrap().value();
        assert!(near < 1.5f64.sqrt());
    }

    #[test]
    fn dphi0_example_and_pole() {
        let m = ModelParams::new(2.0, 3.0, 3.0, 5.0).unwrap();
        assert_relative_eq!(m.dphi0_domega(1.0).unwrap(), 1.0 / 6.0, max_relative = 1e-15);
        let m = ModelParams::new(2.0, -1.0, 3.0, 5.0).unwrap();
        assert!(matches!(m.dphi0_domega(1.5f64.sqrt()), Err(Error::Pole { .. })));
    }

    #[test]
    fn tiny_frequency_stays_accurate() {
        let m = ModelParams::new(-1.0, 1.0, 2.0, 4.0).unwrap();
        for &omega in &[1e-3, 1e-6, 1e-9] {
            let phi0 = m.phi0_from_omega(omega).unwrap().value();
            let back = m.omega_from_phi0(phi0).unwrap();
            assert_relative_eq!(back, omega, max_relative = 1e-5);
        }
    }
}
