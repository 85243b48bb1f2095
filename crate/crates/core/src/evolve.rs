//! Time evolution with the Crank–Nicolson relaxation scheme.
//!
//! With `V(u) = a_p |u|^(p-1) + a_q |u|^(q-1)` one step reads
//!
//! ```text
//! (ψ^(n+1/2) + ψ^(n-1/2)) / 2 = V(u^n)
//! i (u^(n+1) - u^n)/δt + D² (u^(n+1) + u^n)/2 = -ψ^(n+1/2) (u^(n+1) + u^n)/2
//! ```
//!
//! where `D²` is the three-point second difference with homogeneous
//! Dirichlet conditions at `±L` and `ψ^(-1/2) = V(u⁰)`. The second line is
//! a complex tridiagonal system for `u^(n+1)`. Since `ψ` is real, the update
//! is a Cayley transform of a Hermitian matrix, which conserves the discrete
//! mass exactly up to rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::profile::{build_profile, Profile};

/// Discretization of an evolution run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub dt: f64,
    pub dx: f64,
    /// `L`; rounded to a whole number of cells.
    pub half_width: f64,
    pub t_final: f64,
    /// Steps between two diagnostics.
    pub diag_every: usize,
}

impl SimulationConfig {
    /// Diagnostics every `0.05` time units (at least every step).
    pub fn new(dt: f64, dx: f64, half_width: f64, t_final: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            dx,
            half_width,
            t_final,
            diag_every: ((0.05 / dt).round() as usize).max(1),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_diag_every(mut self, steps: usize) -> Self {
        self.diag_every = steps.max(1);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.dt, self.dx, self.half_width, self.t_final];
        if !all.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::InvalidInput("dt, dx, L and T must be positive".into()));
        }
        if self.interior_len() < 16 {
            return Err(Error::InvalidInput(format!(
                "grid has {} interior points, need at least 16",
                self.interior_len()
            )));
        }
        if self.diag_every == 0 {
            return Err(Error::InvalidInput("diagnostic interval must be positive".into()));
        }
        Ok(())
    }

    /// Cells on each side of the origin.
    pub fn cells(&self) -> usize {
        (self.half_width / self.dx).round() as usize
    }

    pub fn interior_len(&self) -> usize {
        (2 * self.cells()).saturating_sub(1)
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    /// Abscissa of interior node `j`.
    pub fn x(&self, j: usize) -> f64 {
        (j as f64 + 1.0 - self.cells() as f64) * self.dx
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.interior_len()).map(|j| self.x(j)).collect()
    }
}

/// Field and relaxation variable after `step` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationState {
    pub step: usize,
    pub time: f64,
    /// `u^n` at the interior nodes.
    pub field: Vec<Complex64>,
    /// `ψ^(n-1/2)` at the interior nodes.
    pub relax: Vec<f64>,
}

/// Conserved quantities and distance to the standing-wave orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub time: f64,
    /// `½ dx Σ |u_j|²`
    pub discrete_mass: f64,
    /// `½ dx Σ |u_(j+1) - u_j|²/dx² - dx Σ (a_p/(p+1) |u_j|^(p+1) + a_q/(q+1) |u_j|^(q+1))`
    pub discrete_energy: f64,
    pub sup_norm: f64,
    /// `inf_(θ, y) ‖u - e^(iθ) φ_ω(· - y)‖` in the discrete `H¹` norm, with
    /// `|y| ≤ 5`; present when a reference profile is attached.
    pub modulation_distance: Option<f64>,
}

/// Solves a tridiagonal system with constant off-diagonal `off` by the
/// Thomas algorithm. `diag` is overwritten.
fn solve_tridiagonal<T>(off: T, diag: &mut [T], rhs: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let n = diag.len();
    for i in 1..n {
        let w = off / diag[i - 1];
        diag[i] = diag[i] - w * off;
        rhs[i] = rhs[i] - w * rhs[i - 1];
    }
    rhs[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - off * rhs[i + 1]) / diag[i];
    }
}

fn potential(model: &ModelParams, amp: f64) -> f64 {
    model.a_p() * amp.powf(model.p() - 1.0) + model.a_q() * amp.powf(model.q() - 1.0)
}

/// Stepper for one run.
#[derive(Debug, Clone)]
pub struct Evolver {
    model: ModelParams,
    cfg: SimulationConfig,
    state: SimulationState,
    reference: Option<Profile>,
    diag: Vec<Complex64>,
    rhs: Vec<Complex64>,
}

impl Evolver {
    pub fn new(model: &ModelParams, cfg: &SimulationConfig, u0: Vec<Complex64>) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.interior_len();
        if u0.len() != n {
            return Err(Error::InvalidInput(format!(
                "initial data has {} values, the grid has {n} interior nodes",
                u0.len()
            )));
        }
        if u0.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("initial data must be finite".into()));
        }
        let relax = u0.iter().map(|z| potential(model, z.norm())).collect();
        Ok(Self {
            model: *model,
            cfg: *cfg,
            state: SimulationState {
                step: 0,
                time: 0.0,
                field: u0,
                relax,
            },
            reference: None,
            diag: vec![Complex64::new(0.0, 0.0); n],
            rhs: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    /// Attaches the profile used for the modulation distance.
    pub fn with_reference(mut self, profile: Profile) -> Self {
        self.reference = Some(profile);
        self
    }

    pub fn state(&self) -> &SimulationState {
        &self.state
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.cfg
    }

    pub fn step(&mut self) -> Result<()> {
        let n = self.cfg.interior_len();
        let (dt, dx) = (self.cfg.dt, self.cfg.dx);
        let inv_dx2 = 1.0 / (dx * dx);
        let i_dt = Complex64::new(0.0, 1.0 / dt);
        let off = Complex64::new(0.5 * inv_dx2, 0.0);
        let u = &self.state.field;
        for j in 0..n {
            let psi = 2.0 * potential(&self.model, u[j].norm()) - self.state.relax[j];
            self.state.relax[j] = psi;
            let left = if j > 0 { u[j - 1] } else { Complex64::new(0.0, 0.0) };
            let right = if j + 1 < n { u[j + 1] } else { Complex64::new(0.0, 0.0) };
            let lap = (left + right - 2.0 * u[j]) * inv_dx2;
            self.rhs[j] = i_dt * u[j] - 0.5 * lap - 0.5 * psi * u[j];
            self.diag[j] = i_dt + Complex64::new(-inv_dx2 + 0.5 * psi, 0.0);
        }
        solve_tridiagonal(off, &mut self.diag, &mut self.rhs);
        if self.rhs.iter().any(|z| !z.is_finite()) {
            return Err(Error::Blowup {
                step: self.state.step + 1,
            });
        }
        std::mem::swap(&mut self.state.field, &mut self.rhs);
        self.state.step += 1;
        self.state.time = self.state.step as f64 * dt;
        Ok(())
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let (model, dx) = (&self.model, self.cfg.dx);
        let u = &self.state.field;
        let mut mass = 0.0;
        let mut grad = 0.0;
        let mut pot = 0.0;
        let mut sup = 0.0f64;
        let (p, q) = (model.p(), model.q());
        for (j, z) in u.iter().enumerate() {
            let a = z.norm();
            mass += a * a;
            sup = sup.max(a);
            pot += model.a_p() / (p + 1.0) * a.powf(p + 1.0) + model.a_q() / (q + 1.0) * a.powf(q + 1.0);
            let prev = if j > 0 { u[j - 1] } else { Complex64::new(0.0, 0.0) };
            grad += (z - prev).norm_sqr();
        }
        grad += u.last().map_or(0.0, |z| z.norm_sqr());
        Diagnostics {
            time: self.state.time,
            discrete_mass: 0.5 * dx * mass,
            discrete_energy: 0.5 * grad / dx - dx * pot,
            sup_norm: sup,
            modulation_distance: self
                .reference
                .as_ref()
                .map(|r| modulation_distance(&self.cfg, u, r)),
        }
    }
}

/// Discrete `H¹` inner product `dx Σ u conj(v) + dx Σ D₊u conj(D₊v)` with
/// zero boundary values.
fn h1_inner(dx: f64, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let mut l2 = zero;
    let mut d = zero;
    let n = u.len();
    for j in 0..=n {
        let (u1, v1) = if j < n { (u[j], v[j]) } else { (zero, zero) };
        let (u0, v0) = if j > 0 { (u[j - 1], v[j - 1]) } else { (zero, zero) };
        if j < n {
            l2 += u1 * v1.conj();
        }
        d += (u1 - u0) * (v1 - v0).conj();
    }
    l2 * dx + d / dx
}

/// Distance to the orbit `{e^(iθ) φ(· - y)}` over `θ` and `|y| ≤ 5`.
///
/// The optimal phase is the argument of the inner product; the shift is
/// located by a scan with step `1/4` followed by golden-section search.
fn modulation_distance(cfg: &SimulationConfig, u: &[Complex64], profile: &Profile) -> f64 {
    let dx = cfg.dx;
    let uu = h1_inner(dx, u, u).re;
    let mut shifted = vec![Complex64::new(0.0, 0.0); u.len()];
    let mut dist2 = |y: f64| -> f64 {
        for (j, s) in shifted.iter_mut().enumerate() {
            *s = Complex64::new(profile.eval(cfg.x(j) - y), 0.0);
        }
        let pp = h1_inner(dx, &shifted, &shifted).re;
        let up = h1_inner(dx, u, &shifted).norm();
        (uu + pp - 2.0 * up).max(0.0)
    };
    let mut best = (0.0, dist2(0.0));
    for k in -20..=20 {
        let y = 0.25 * k as f64;
        let d = dist2(y);
        if d < best.1 {
            best = (y, d);
        }
    }
    let invphi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = ((best.0 - 0.25).max(-5.0), (best.0 + 0.25).min(5.0));
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (dist2(c), dist2(d));
    while b - a > 1e-6 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = dist2(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = dist2(d);
        }
    }
    best.1.min(fc).min(fd).sqrt()
}

/// Runs `u0` up to `t_final`, calling `observer` after every step (and
/// once at `t = 0`) with diagnostics every `diag_every` steps and at the
/// final step.
pub fn evolve<F>(
    model: &ModelParams,
    cfg: &SimulationConfig,
    u0: Vec<Complex64>,
    reference: Option<&Profile>,
    mut observer: F,
) -> Result<SimulationState>
where
    F: FnMut(&SimulationState, Option<&Diagnostics>),
{
    let mut ev = Evolver::new(model, cfg, u0)?;
    if let Some(r) = reference {
        ev = ev.with_reference(r.clone());
    }
    let steps = cfg.steps();
    observer(ev.state(), Some(&ev.diagnostics()));
    for n in 1..=steps {
        ev.step()?;
        if n % cfg.diag_every == 0 || n == steps {
            observer(ev.state(), Some(&ev.diagnostics()));
        } else {
            observer(ev.state(), None);
        }
    }
    Ok(ev.state)
}

/// Exact stationary solution of the semi-discrete equation
/// `D²φ - ωφ + a_p φ^p + a_q φ^q = 0` with Dirichlet conditions, obtained
/// by Newton's method from the continuous profile. `e^(iωt) φ` then differs
/// from the fully discrete solution only by the time discretization.
pub fn discrete_soliton(model: &ModelParams, omega: f64, dx: f64, half_width: f64) -> Result<Profile> {
    let mut prof = build_profile(model, omega, dx, half_width)?;
    let len = prof.values.len();
    let n = len - 2;
    let mut v: Vec<f64> = prof.values[1..len - 1].to_vec();
    let inv_dx2 = 1.0 / (dx * dx);
    let (a_p, a_q, p, q) = (model.a_p(), model.a_q(), model.p(), model.q());
    let scale = prof.phi0 * (omega + inv_dx2);
    let mut diag = vec![0.0; n];
    let mut res = vec![0.0; n];
    let mut converged = false;
    for _ in 0..50 {
        let mut rmax = 0.0f64;
        for j in 0..n {
            let left = if j > 0 { v[j - 1] } else { 0.0 };
            let right = if j + 1 < n { v[j + 1] } else { 0.0 };
            let a = v[j].abs();
            let r = (left + right - 2.0 * v[j]) * inv_dx2 - omega * v[j]
                + (a_p * a.powf(p - 1.0) + a_q * a.powf(q - 1.0)) * v[j];
            res[j] = -r;
            rmax = rmax.max(r.abs());
            diag[j] = -2.0 * inv_dx2 - omega + p * a_p * a.powf(p - 1.0) + q * a_q * a.powf(q - 1.0);
        }
        if rmax <= 4.0 * f64::EPSILON * scale {
            converged = true;
            break;
        }
        solve_tridiagonal(inv_dx2, &mut diag, &mut res);
        let mut dmax = 0.0f64;
        for j in 0..n {
            v[j] += res[j];
            dmax = dmax.max(res[j].abs());
        }
        for j in 0..n / 2 {
            let s = 0.5 * (v[j] + v[n - 1 - j]);
            v[j] = s;
            v[n - 1 - j] = s;
        }
        if !v.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("discrete soliton iteration".into()));
        }
        if dmax <= 4.0 * f64::EPSILON * prof.phi0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!("discrete soliton at omega = {omega}")));
    }
    prof.values[1..len - 1].copy_from_slice(&v);
    for j in 1..len - 1 {
        prof.derivative[j] = (prof.values[j + 1] - prof.values[j - 1]) / (2.0 * dx);
    }
    prof.phi0 = prof.values[prof.center()];
    Ok(prof)
}

/// Direction `ψ` of a perturbation `u⁰ = φ_ω + ε ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationKind {
    /// `ψ = φ_ω`, so `u⁰ = (1 + ε) φ_ω`.
    Scale,
    /// `ψ = φ_ω cos x`
    CosineModulation,
    /// `ψ = φ_ω tanh x`
    TanhTilt,
    /// `ψ = φ_ω(x - 3)`
    TranslateBump,
}

impl PerturbationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PerturbationKind::Scale => "scale",
            PerturbationKind::CosineModulation => "cosine_modulation",
            PerturbationKind::TanhTilt => "tanh_tilt",
            PerturbationKind::TranslateBump => "translate_bump",
        }
    }
}

impl fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PerturbationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scale" => Ok(PerturbationKind::Scale),
            "cos" | "cosine" | "cosine_modulation" => Ok(PerturbationKind::CosineModulation),
            "tanh" | "tanh_tilt" => Ok(PerturbationKind::TanhTilt),
            "translate" | "shift" | "translate_bump" => Ok(PerturbationKind::TranslateBump),
            _ => Err(Error::InvalidInput(format!(
                "unknown perturbation {s:?} (scale, cos, tanh, translate)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub kind: PerturbationKind,
    pub epsilon: f64,
}

impl PerturbationSpec {
    pub fn new(kind: PerturbationKind, epsilon: f64) -> Result<Self> {
        if !(epsilon.abs() < 1.0) {
            return Err(Error::InvalidInput(format!("|epsilon| = {} must be below 1", epsilon.abs())));
        }
        Ok(Self { kind, epsilon })
    }

    /// `u⁰ = φ + ε ψ` at the interior nodes of `cfg`.
    pub fn initial_data(&self, profile: &Profile, cfg: &SimulationConfig) -> Vec<Complex64> {
        (0..cfg.interior_len())
            .map(|j| {
                let x = cfg.x(j);
                let phi = profile.eval(x);
                let psi = match self.kind {
                    PerturbationKind::Scale => phi,
                    PerturbationKind::CosineModulation => phi * x.cos(),
                    PerturbationKind::TanhTilt => phi * x.tanh(),
                    PerturbationKind::TranslateBump => profile.eval(x - 3.0),
                };
                Complex64::new(phi + self.epsilon * psi, 0.0)
            })
            .collect()
    }
}

impl FromStr for PerturbationSpec {
    type Err = Error;

    /// Parses `kind:epsilon`, for example `scale:0.01`.
    fn from_str(s: &str) -> Result<Self> {
        let (k, e) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("perturbation {s:?} is not of the form kind:epsilon")))?;
        let eps: f64 = e
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("perturbation size {e:?} is not a number")))?;
        Self::new(k.trim().parse()?, eps)
    }
}

impl fmt::Display for PerturbationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.epsilon)
    }
}

/// Raw time series of a perturbation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub model: ModelParams,
    pub omega: f64,
    pub phi0: f64,
    pub perturbation: PerturbationSpec,
    pub config: SimulationConfig,
    pub series: Vec<Diagnostics>,
}

impl ExperimentRecord {
    pub fn sup_norms(&self) -> Vec<f64> {
        self.series.iter().map(|d| d.sup_norm).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.series.iter().map(|d| d.time).collect()
    }
}

/// Evolves `φ_ω + ε ψ` and records the diagnostics.
pub fn perturbation_experiment(
    model: &ModelParams,
    omega: f64,
    spec: &PerturbationSpec,
    cfg: &SimulationConfig,
) -> Result<ExperimentRecord> {
    let profile = build_profile(model, omega, cfg.dx, cfg.half_width)?;
    let u0 = spec.initial_data(&profile, cfg);
    let mut series = Vec::new();
    evolve(model, cfg, u0, Some(&profile), |_, d| {
        if let Some(d) = d {
            series.push(*d);
        }
    })?;
    Ok(ExperimentRecord {
        model: *model,
        omega,
        phi0: profile.phi0,
        perturbation: *spec,
        config: *cfg,
        series,
    })
}
