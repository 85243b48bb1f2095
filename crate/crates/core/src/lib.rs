//! Orbital stability of standing waves of the one-dimensional nonlinear
//! Schrödinger equation with a double power nonlinearity
//!
//! ```text
//! i u_t + u_xx + a_p |u|^(p-1) u + a_q |u|^(q-1) u = 0,   1 < p < q.
//! ```
//!
//! Standing waves `e^(iωt) φ_ω(x)` are stable when the mass `M(φ_ω)` is
//! increasing in `ω` and unstable when it is decreasing. The crate evaluates
//! the slope `J(ω) = ∂_ω M(φ_ω)` by singular quadrature, classifies the
//! family into the four stability types, locates the critical frequency
//! where the slope changes sign, and evolves perturbed waves in time with a
//! mass-conserving relaxation scheme.
//!
//! ```
//! use nls_lab::{classify, slope, ModelParams, StabilityClass};
//!
//! let model = ModelParams::new(-1.0, 1.0, 2.0, 4.0)?;
//! assert_eq!(classify(&model)?, StabilityClass::US);
//! assert!(slope(&model, 0.01)?.j_value < 0.0);
//! assert!(slope(&model, 100.0)?.j_value > 0.0);
//! # Ok::<(), nls_lab::Error>(())
//! ```

pub mod classify;
pub mod error;
pub mod evolve;
pub mod io;
pub mod model;
pub mod profile;
pub mod slope;
pub mod special;
pub mod surface;

#[cfg(doctest)]
mod book;

pub use classify::{classify, find_omega_crit, CriticalPoint, CriticalSearch, StabilityClass};
pub use error::{Error, Result};
pub use evolve::{
    discrete_soliton, evolve, perturbation_experiment, Diagnostics, Evolver, ExperimentRecord,
    PerturbationKind, PerturbationSpec, SimulationConfig, SimulationState,
};
pub use model::{Bound, FrequencyWindow, ModelParams, PeakAmplitude, SignCase};
pub use profile::{build_profile, mass_of_wave, Profile};
pub use slope::{
    df_gamma_dphi0, f_gamma, f_of_phi0, i_gamma, i_gamma_dphi0, j_star_limit_sign, j_zero_limit,
    monotone_ratio, slope, thresholds, IntegrandTerms, LimitLabel, SlopeEvaluation,
    ZeroFrequencyResult,
};
pub use special::{beta, h_function, integrate_01, BetaArgs, QuadratureConfig};
pub use surface::{argmax_curve, surface_sweep, ArgmaxPoint, CellStatus, GridSpec, SurfaceCell};
