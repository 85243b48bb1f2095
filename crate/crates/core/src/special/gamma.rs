//! Log-Gamma, Beta and the singular integral `H(x, y)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
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

/// `ln |Γ(x)|` by the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below `x = 1/2`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Arguments of the Euler Beta function, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaArgs {
    x: f64,
    y: f64,
}

impl BetaArgs {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::Domain(format!(
                "Beta arguments must be positive (got x = {x}, y = {y})"
            )))
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

fn ln_beta(x: f64, y: f64) -> f64 {
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(args: BetaArgs) -> f64 {
    ln_beta(args.x, args.y).exp()
}

/// `H(x, y) = ∫₀¹ t^(x-1) (1 - t^y) (1-t)^(-3/2) dt`, evaluated in closed form
/// as `-(2x-1) B(x, 1/2) + (2x+2y-1) B(x+y, 1/2)`.
pub fn h_function(args: BetaArgs) -> f64 {
    let (x, y) = (args.x, args.y);
    -(2.0 * x - 1.0) * ln_beta(x, 0.5).exp() + (2.0 * x + 2.0 * y - 1.0) * ln_beta(x + y, 0.5).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn b(x: f64, y: f64) -> f64 {
        beta(BetaArgs::new(x, y).unwrap())
    }

    #[test]
    fn gamma_integers_and_half() {
        let mut fact = 1.0f64;
        for n in 1..25 {
            assert_relative_eq!(ln_gamma(n as f64), fact.ln(), epsilon = 1e-13, max_relative = 1e-13);
            fact *= n as f64;
        }
        assert_relative_eq!(ln_gamma(0.5), PI.sqrt().ln(), epsilon = 1e-14);
        assert_relative_eq!(ln_gamma(1.5), (PI.sqrt() / 2.0).ln(), epsilon = 1e-14);
        // reflection branch
        assert_relative_eq!(ln_gamma(0.25), 3.625_609_908_221_908_f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn beta_examples() {
        assert_relative_eq!(b(1.0, 0.5), 2.0, max_relative = 1e-13);
        assert_relative_eq!(b(0.5, 0.5), PI, max_relative = 1e-13);
        assert_relative_eq!(b(2.0, 0.5), 4.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn beta_rejects_nonpositive() {
        assert!(BetaArgs::new(0.0, 1.0).is_err());
        assert!(BetaArgs::new(1.0, -2.0).is_err());
        assert!(BetaArgs::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn h_at_one_one() {
        let h = h_function(BetaArgs::new(1.0, 1.0).unwrap());
        assert!((h - 2.0).abs() < 1e-12, "H(1,1) = {h}");
    }
}
