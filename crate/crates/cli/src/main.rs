//! `nls-lab`: slopes, stability types, critical surfaces, profiles and
//! perturbation runs for the double-power NLS.
//!
//! Exit codes: 0 on success, 2 on usage or domain errors, 3 on numeric
//! failures.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nls_lab::io::{fmt_sig, RunManifest};
use nls_lab::surface::write_surface_csv;
use nls_lab::{
    argmax_curve, build_profile, classify, evolve, find_omega_crit, j_star_limit_sign, j_zero_limit,
    slope, surface_sweep, CriticalSearch, GridSpec, ModelParams, PerturbationSpec, SimulationConfig,
};

#[derive(Parser)]
#[command(name = "nls-lab", version, about = "Stability of standing waves of the double-power NLS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the slope J(ω) = C(φ₀) F(φ₀) as CSV `omega,phi0,C,F,J`.
    Slope(SlopeArgs),
    /// Stability type and critical frequency as JSON.
    Classify(ClassifyArgs),
    /// Critical frequency on a (p, q) grid as CSV `p,q,status,omega_c`.
    Surface(SurfaceArgs),
    /// Standing-wave profile as CSV `x,phi`.
    Profile(ProfileArgs),
    /// Perturbed standing wave in time as CSV `t,mass,energy,sup_norm,mod_distance`.
    Simulate(SimulateArgs),
}

#[derive(Args, Clone, Copy)]
struct ModelArgs {
    #[arg(long, allow_hyphen_values = true)]
    ap: f64,
    #[arg(long, allow_hyphen_values = true)]
    aq: f64,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
}

impl ModelArgs {
    fn model(&self) -> Result<ModelParams, Failure> {
        Ok(ModelParams::with_waves(self.ap, self.aq, self.p, self.q)?)
    }

    fn record(&self, m: RunManifest) -> RunManifest {
        m.param("ap", self.ap).param("aq", self.aq).param("p", self.p).param("q", self.q)
    }
}

#[derive(Args)]
struct SlopeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    omega_min: f64,
    #[arg(long)]
    omega_max: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Logarithmic instead of linear spacing.
    #[arg(long)]
    log: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, allow_hyphen_values = true)]
    ap: f64,
    #[arg(long, allow_hyphen_values = true)]
    aq: f64,
    /// `p_min:p_max:dp,q_min:q_max:dq`
    #[arg(long, default_value = "1.01:4.99:0.01,1.01:4.99:0.01")]
    grid: GridSpec,
    /// Relative bracket width of the bisection.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Worker threads (all cores when absent).
    #[arg(long, env = "NLS_LAB_JOBS")]
    jobs: Option<usize>,
    /// Also write the argmax curve as CSV `q,p_max,omega_c_max`.
    #[arg(long)]
    argmax: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    omega: f64,
    #[arg(long, default_value_t = 0.05)]
    dx: f64,
    #[arg(long = "L", default_value_t = 50.0)]
    half_width: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    omega: f64,
    /// `kind:eps` with kind one of scale, cosine_modulation, tanh_tilt, translate_bump.
    #[arg(long, default_value = "scale:0", allow_hyphen_values = true)]
    perturb: PerturbationSpec,
    #[arg(long = "L", default_value_t = 50.0)]
    half_width: f64,
    #[arg(long, default_value_t = 0.05)]
    dx: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long = "T", default_value_t = 50.0)]
    t_final: f64,
    /// Time between two diagnostic rows.
    #[arg(long, default_value_t = 0.05)]
    diag_interval: f64,
    /// Dump `t,x,re_u,im_u` to this file.
    #[arg(long)]
    snapshots: Option<PathBuf>,
    /// Time between two snapshots.
    #[arg(long, default_value_t = 1.0)]
    snapshot_interval: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error with its exit code.
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<nls_lab::Error> for Failure {
    fn from(e: nls_lab::Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

/// Attaches the frequency to numeric failures.
fn at_omega(omega: f64) -> impl Fn(nls_lab::Error) -> Failure {
    move |e| match Failure::from(e) {
        Failure::Numeric(m) => Failure::Numeric(format!("at omega = {}: {m}", fmt_sig(omega))),
        other => other,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.command {
        Command::Slope(a) => run_slope(a, start),
        Command::Classify(a) => run_classify(a, start),
        Command::Surface(a) => run_surface(a, start),
        Command::Profile(a) => run_profile(a, start),
        Command::Simulate(a) => run_simulate(a, start),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numeric failure {m}");
            ExitCode::from(3)
        }
    }
}

/// Builds the output in memory, then writes it to `out` (with a manifest)
/// or to stdout.
fn emit(out: Option<&Path>, body: &[u8], manifest: RunManifest, start: Instant) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, body)?;
            let mut m = manifest.param("out", path.display());
            m.wall_time_seconds = start.elapsed().as_secs_f64();
            m.write_next_to(path)?;
        }
        None => io::stdout().lock().write_all(body)?,
    }
    Ok(())
}

fn sample_omegas(min: f64, max: f64, n: usize, log: bool) -> Vec<f64> {
    if n == 1 {
        return vec![min];
    }
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let t = i as f64 / last;
            if i == n - 1 {
                max
            } else if log {
                (min.ln() + t * (max.ln() - min.ln())).exp()
            } else {
                min + t * (max - min)
            }
        })
        .collect()
}

fn run_slope(a: SlopeArgs, start: Instant) -> Result<(), Failure> {
    let model = a.model.model()?;
    if a.points == 0 {
        return Err(Failure::Usage("--points must be at least 1".into()));
    }
    if !(a.omega_min <= a.omega_max) {
        return Err(Failure::Usage("--omega-min must not exceed --omega-max".into()));
    }
    model.check_omega(a.omega_min)?;
    model.check_omega(a.omega_max)?;
    let mut body = String::from("omega,phi0,C,F,J\n");
    for w in sample_omegas(a.omega_min, a.omega_max, a.points, a.log) {
        let s = slope(&model, w).map_err(at_omega(w))?;
        body += &format!(
            "{},{},{},{},{}\n",
            fmt_sig(s.omega),
            fmt_sig(s.phi0),
            fmt_sig(s.c_factor),
            fmt_sig(s.f_value),
            fmt_sig(s.j_value)
        );
    }
    let mut m = a.model.record(RunManifest::new("slope"))
        .param("omega-min", a.omega_min)
        .param("omega-max", a.omega_max)
        .param("points", a.points);
    if a.log {
        m = m.param("log", true);
    }
    emit(a.out.as_deref(), body.as_bytes(), m, start)
}

fn run_classify(a: ClassifyArgs, start: Instant) -> Result<(), Failure> {
    let model = a.model.model()?;
    let class = classify(&model)?;
    let j0 = j_zero_limit(&model)?;
    let jstar = j_star_limit_sign(&model)?;
    let mut obj = serde_json::json!({
        "type": class.as_str(),
        "j0_label": j0.sign_label.as_str(),
        "jstar_label": jstar.as_str(),
    });
    if class.has_transition() {
        if let CriticalSearch::Critical(c) = find_omega_crit(&model, 1e-8)? {
            obj["omega_c"] = serde_json::json!(c.omega_c);
        }
    }
    let body = serde_json::to_string(&obj).expect("json") + "\n";
    let m = a.model.record(RunManifest::new("classify"));
    emit(a.out.as_deref(), body.as_bytes(), m, start)
}

fn run_surface(a: SurfaceArgs, start: Instant) -> Result<(), Failure> {
    if a.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Failure::Usage("--tol must lie in (0, 1)".into()));
    }
    let cells = surface_sweep(a.ap, a.aq, &a.grid, a.tol, a.jobs)?;
    let mut body = Vec::new();
    write_surface_csv(&mut body, &cells)?;
    if let Some(path) = &a.argmax {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "q,p_max,omega_c_max")?;
        for pt in argmax_curve(&cells) {
            let p = pt.p_max.map(fmt_sig).unwrap_or_default();
            writeln!(w, "{},{},{}", fmt_sig(pt.q), p, fmt_sig(pt.omega_c_max))?;
        }
        w.flush()?;
    }
    let mut m = RunManifest::new("surface")
        .param("ap", a.ap)
        .param("aq", a.aq)
        .param("grid", &a.grid)
        .param("tol", a.tol);
    if let Some(j) = a.jobs {
        m = m.param("jobs", j);
    }
    if let Some(p) = &a.argmax {
        m = m.param("argmax", p.display());
    }
    emit(a.out.as_deref(), &body, m, start)
}

fn run_profile(a: ProfileArgs, start: Instant) -> Result<(), Failure> {
    let model = a.model.model()?;
    model.check_omega(a.omega)?;
    let prof = build_profile(&model, a.omega, a.dx, a.half_width).map_err(at_omega(a.omega))?;
    let mut body = String::from("x,phi\n");
    for (x, v) in prof.grid().iter().zip(&prof.values) {
        body += &format!("{},{}\n", fmt_sig(*x), fmt_sig(*v));
    }
    let m = a.model.record(RunManifest::new("profile"))
        .param("omega", a.omega)
        .param("dx", a.dx)
        .param("L", a.half_width);
    emit(a.out.as_deref(), body.as_bytes(), m, start)
}

fn every(interval: f64, dt: f64) -> usize {
    ((interval / dt).round() as usize).max(1)
}

fn run_simulate(a: SimulateArgs, start: Instant) -> Result<(), Failure> {
    let model = a.model.model()?;
    model.check_omega(a.omega)?;
    if !(a.diag_interval > 0.0 && a.snapshot_interval > 0.0) {
        return Err(Failure::Usage("intervals must be positive".into()));
    }
    let cfg = SimulationConfig::new(a.dt, a.dx, a.half_width, a.t_final)?
        .with_diag_every(every(a.diag_interval, a.dt));
    let profile = build_profile(&model, a.omega, a.dx, a.half_width).map_err(at_omega(a.omega))?;
    let u0 = a.perturb.initial_data(&profile, &cfg);

    let snap_every = every(a.snapshot_interval, a.dt);
    let mut snaps = match &a.snapshots {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            writeln!(w, "t,x,re_u,im_u")?;
            Some(w)
        }
        None => None,
    };
    let mut snap_err: Option<io::Error> = None;
    let grid = cfg.grid();
    let mut body = String::from("t,mass,energy,sup_norm,mod_distance\n");
    evolve(&model, &cfg, u0, Some(&profile), |state, diag| {
        if let Some(d) = diag {
            let md = d.modulation_distance.map(fmt_sig).unwrap_or_default();
            body += &format!(
                "{},{},{},{},{}\n",
                fmt_sig(d.time),
                fmt_sig(d.discrete_mass),
                fmt_sig(d.discrete_energy),
                fmt_sig(d.sup_norm),
                md
            );
        }
        if let Some(w) = snaps.as_mut() {
            if state.step % snap_every == 0 && snap_err.is_none() {
                let t = fmt_sig(state.time);
                for (x, u) in grid.iter().zip(&state.field) {
                    if let Err(e) = writeln!(w, "{t},{},{},{}", fmt_sig(*x), fmt_sig(u.re), fmt_sig(u.im)) {
                        snap_err = Some(e);
                        break;
                    }
                }
            }
        }
    })
    .map_err(|e| match Failure::from(e) {
        Failure::Numeric(m) => Failure::Numeric(format!("at omega = {}: {m}", fmt_sig(a.omega))),
        other => other,
    })?;
    if let Some(e) = snap_err {
        return Err(e.into());
    }
    if let Some(mut w) = snaps {
        w.flush()?;
    }
    let mut m = a.model.record(RunManifest::new("simulate"))
        .param("omega", a.omega)
        .param("perturb", a.perturb)
        .param("L", a.half_width)
        .param("dx", a.dx)
        .param("dt", a.dt)
        .param("T", a.t_final)
        .param("diag-interval", a.diag_interval);
    if let Some(p) = &a.snapshots {
        m = m
            .param("snapshots", p.display())
            .param("snapshot-interval", a.snapshot_interval);
    }
    emit(a.out.as_deref(), body.as_bytes(), m, start)
}
