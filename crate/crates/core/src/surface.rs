//! Critical frequency over a grid of exponents.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, find_omega_crit, CriticalSearch, StabilityClass};
use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::model::ModelParams;

/// Rectangular grid `p_min:p_max:dp, q_min:q_max:dq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub p_min: f64,
    pub p_max: f64,
    pub dp: f64,
    pub q_min: f64,
    pub q_max: f64,
    pub dq: f64,
}

fn axis(min: f64, max: f64, step: f64) -> Vec<f64> {
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    // grid nodes rounded so that 1.1 + 3 * 0.1 prints and compares as 1.4
    (0..n)
        .map(|i| ((min + i as f64 * step) * 1e10).round() / 1e10)
        .collect()
}

impl GridSpec {
    pub fn new(p_min: f64, p_max: f64, dp: f64, q_min: f64, q_max: f64, dq: f64) -> Result<Self> {
        let g = Self {
            p_min,
            p_max,
            dp,
            q_min,
            q_max,
            dq,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let all = [self.p_min, self.p_max, self.dp, self.q_min, self.q_max, self.dq];
        if !all.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("grid values must be finite".into()));
        }
        if !(self.dp > 0.0 && self.dq > 0.0) {
            return Err(Error::InvalidInput("grid steps must be positive".into()));
        }
        if self.p_max < self.p_min || self.q_max < self.q_min {
            return Err(Error::InvalidInput("grid ranges must be nondecreasing".into()));
        }
        if !(self.p_min > 1.0 && self.q_min > 1.0) {
            return Err(Error::InvalidInput("grid exponents must exceed 1".into()));
        }
        Ok(())
    }

    pub fn p_values(&self) -> Vec<f64> {
        axis(self.p_min, self.p_max, self.dp)
    }

    pub fn q_values(&self) -> Vec<f64> {
        axis(self.q_min, self.q_max, self.dq)
    }

    /// All nodes ordered by `(p, q)`.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        let qs = self.q_values();
        self.p_values()
            .into_iter()
            .flat_map(|p| qs.iter().map(move |&q| (p, q)))
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `p_min:p_max:dp,q_min:q_max:dq`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("grid {s:?} is not of the form p_min:p_max:dp,q_min:q_max:dq"));
        let (ps, qs) = s.split_once(',').ok_or_else(bad)?;
        let triple = |t: &str| -> Result<[f64; 3]> {
            let v: Vec<f64> = t
                .split(':')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            v.try_into().map_err(|_| bad())
        };
        let [a, b, c] = triple(ps)?;
        let [d, e, f] = triple(qs)?;
        Self::new(a, b, c, d, e, f)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{},{}:{}:{}",
            self.p_min, self.p_max, self.dp, self.q_min, self.q_max, self.dq
        )
    }
}

/// Result for one grid node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    Critical { omega_c: f64 },
    /// Stable at every frequency (`ω_c = 0`).
    StableAll,
    UnstableAll,
    /// The bracket passed the doubling cap with `J` still negative.
    CapExceeded,
    /// `q ≤ p`.
    Skipped,
    /// The numerics failed for this cell.
    Failed { message: String },
}

impl CellStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CellStatus::Critical { .. } => "critical",
            CellStatus::StableAll => "stable_all",
            CellStatus::UnstableAll => "unstable_all",
            CellStatus::CapExceeded => "cap_exceeded",
            CellStatus::Skipped => "skipped",
            CellStatus::Failed { .. } => "failed",
        }
    }

    pub fn omega_c(&self) -> Option<f64> {
        match self {
            CellStatus::Critical { omega_c } => Some(*omega_c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCell {
    pub p: f64,
    pub q: f64,
    pub status: CellStatus,
}

fn cell(a_p: f64, a_q: f64, p: f64, q: f64, tol: f64) -> CellStatus {
    if q <= p {
        return CellStatus::Skipped;
    }
    let run = || -> Result<CellStatus> {
        let model = ModelParams::with_waves(a_p, a_q, p, q)?;
        Ok(match classify(&model)? {
            StabilityClass::S => CellStatus::StableAll,
            StabilityClass::U => CellStatus::UnstableAll,
            StabilityClass::SU | StabilityClass::US => match find_omega_crit(&model, tol)? {
                CriticalSearch::Critical(c) => CellStatus::Critical { omega_c: c.omega_c },
                CriticalSearch::NoSignChange { sign } if sign > 0 => CellStatus::StableAll,
                CriticalSearch::NoSignChange { .. } => CellStatus::UnstableAll,
                CriticalSearch::CapExceeded { .. } => CellStatus::CapExceeded,
            },
        })
    };
    run().unwrap_or_else(|e| CellStatus::Failed {
        message: e.to_string(),
    })
}

/// Evaluates every grid node, on `jobs` worker threads (all available
/// cores when `None`). The result is ordered by `(p, q)` independently of
/// the number of threads.
pub fn surface_sweep(
    a_p: f64,
    a_q: f64,
    grid: &GridSpec,
    tol: f64,
    jobs: Option<usize>,
) -> Result<Vec<SurfaceCell>> {
    grid.validate()?;
    ModelParams::with_waves(a_p, a_q, 2.0, 3.0)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must lie in (0, 1)")));
    }
    let nodes = grid.nodes();
    let work = || -> Vec<SurfaceCell> {
        nodes
            .par_iter()
            .map(|&(p, q)| SurfaceCell {
                p,
                q,
                status: cell(a_p, a_q, p, q, tol),
            })
            .collect()
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Error::InvalidInput("jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let mut cells = pool.install(work);
    cells.sort_by(|a, b| a.p.total_cmp(&b.p).then(a.q.total_cmp(&b.q)));
    Ok(cells)
}

/// Writes `p,q,status,omega_c`.
pub fn write_surface_csv<W: Write>(mut w: W, cells: &[SurfaceCell]) -> std::io::Result<()> {
    writeln!(w, "p,q,status,omega_c")?;
    for c in cells {
        let omega = c.status.omega_c().map(fmt_sig).unwrap_or_default();
        writeln!(w, "{},{},{},{}", fmt_sig(c.p), fmt_sig(c.q), c.status.label(), omega)?;
    }
    Ok(())
}

/// Maximizer of `p ↦ ω_c(p, q)` on one slice of constant `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgmaxPoint {
    pub q: f64,
    /// `None` when the maximum sits at the edge of the slice next to
    /// `p = q` or next to a capped cell, where `ω_c` may be unbounded.
    pub p_max: Option<f64>,
    pub omega_c_max: f64,
}

/// `p_max(q)` for every `q` slice of `cells` with at least one finite `ω_c`.
pub fn argmax_curve(cells: &[SurfaceCell]) -> Vec<ArgmaxPoint> {
    let mut qs: Vec<f64> = cells.iter().map(|c| c.q).collect();
    qs.sort_by(f64::total_cmp);
    qs.dedup();
    let mut out = Vec::new();
    for q in qs {
        let mut slice: Vec<&SurfaceCell> = cells.iter().filter(|c| c.q == q && c.p < q).collect();
        slice.sort_by(|a, b| a.p.total_cmp(&b.p));
        let best = slice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.status.omega_c().map(|w| (i, w)))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let Some((i, w)) = best else { continue };
        let next = slice.get(i + 1);
        let at_edge = match next {
            None => true,
            Some(c) => matches!(c.status, CellStatus::CapExceeded),
        };
        out.push(ArgmaxPoint {
            q,
            p_max: (!at_edge).then_some(slice[i].p),
            omega_c_max: w,
        });
    }
    out
}
