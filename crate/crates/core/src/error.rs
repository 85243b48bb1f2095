use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters violate `1 < p < q`, finiteness or nonzero coefficients.
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    /// Both coefficients are negative.
    #[error("no standing waves exist when a_p < 0 and a_q < 0")]
    NoStandingWaves,

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `dphi0/domega` is evaluated at the turning point `phi^*`.
    #[error("pole of dphi0/domega at phi0 = {phi0}")]
    Pole { phi0: f64 },

    /// Quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    Quadrature { estimate: f64, error_bound: f64 },

    /// An integrand or iterate became NaN or infinite.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// An iterative solver failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// The computational domain is too small for the profile tail.
    #[error("half width {half_width} too small: phi(L) = {tail:e} exceeds 1e-8 * phi0; increase L")]
    InsufficientDomain { half_width: f64, tail: f64 },

    /// The time evolution produced NaN.
    #[error("evolution produced a non-finite field at step {step}")]
    Blowup { step: usize },

    /// Malformed configuration or input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Numeric failures as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Quadrature { .. }
                | Error::NonFinite(_)
                | Error::NoConvergence(_)
                | Error::Blowup { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
