//! Rejection sampling of paths conditioned on an occupation event.

use super::estimate::{Event, McOptions, StartLaw};
use super::path::{steps_for, Kernel, OccupationSample, PathGrid};
use super::rng::path_rng;
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::fmt;

/// Chunks simulated per round; fixed so the outcome does not depend on workers.
const CHUNKS_PER_ROUND: usize = 16;

/// What to keep of an accepted path.
#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    Full,
    /// Values at these times only (multiples of `dt`).
    Probes(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptedPath {
    pub index: u64,
    pub sample: OccupationSample,
    /// The whole grid for [`Record::Full`], else the probe values.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionedSample {
    pub accepted: Vec<AcceptedPath>,
    pub n_tried: u64,
    pub n_wanted: usize,
    pub seed: u64,
    pub dt: f64,
    pub probe_times: Vec<f64>,
}

impl ConditionedSample {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted.len() as f64 / self.n_tried as f64
    }

    /// Standard error of the acceptance rate, treating tried paths as Bernoulli trials.
    pub fn acceptance_std_err(&self) -> f64 {
        let p = self.acceptance_rate();
        (p * (1.0 - p) / self.n_tried as f64).sqrt()
    }

    /// Accepted paths as grids (full records only).
    pub fn paths(&self) -> Result<Vec<PathGrid>> {
        if !self.probe_times.is_empty() {
            return Err(Error::config("sample holds probe values, not full paths"));
        }
        self.accepted.iter().map(|a| PathGrid::new(self.dt, a.values.clone())).collect()
    }

    /// Values at probe `k` over all accepted paths.
    pub fn marginal(&self, k: usize) -> Vec<f64> {
        self.accepted.iter().map(|a| a.values[k]).collect()
    }

    /// Fraction of accepted paths that never reached ±1.
    pub fn zero_exit_fraction(&self) -> f64 {
        let z = self.accepted.iter().filter(|a| a.sample.tau.is_infinite()).count();
        z as f64 / self.accepted.len().max(1) as f64
    }
}

/// Failure of [`sample_conditioned`]; a partial sample is kept when the budget ran out.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionedError {
    pub error: Error,
    pub collected: Option<ConditionedSample>,
}

impl From<Error> for ConditionedError {
    fn from(error: Error) -> Self {
        ConditionedError { error, collected: None }
    }
}

impl fmt::Display for ConditionedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.error.fmt(f)
    }
}

impl std::error::Error for ConditionedError {}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionRequest {
    pub start: StartLaw,
    pub t: f64,
    pub dt: f64,
    pub s: f64,
    pub event: Event,
    pub n_wanted: usize,
    pub seed: u64,
    pub max_paths: u64,
    pub record: Record,
}

fn one_path<R: Rng + ?Sized>(
    req: &ConditionRequest,
    index: u64,
    n: usize,
    probes: &[usize],
    opts: &McOptions,
    rng: &mut R,
    buf: &mut Vec<f64>,
) -> Option<OccupationSample> {
    buf.clear();
    let full = matches!(req.record, Record::Full);
    let y0 = req.start.draw(index, rng);
    let mut k = Kernel::new(opts.mode, y0);
    let sq = req.dt.sqrt();
    let mut x = y0;
    let mut next_probe = 0usize;
    let mut keep = |i: usize, v: f64, buf: &mut Vec<f64>| {
        if full {
            buf.push(v);
        } else {
            while next_probe < probes.len() && probes[next_probe] == i {
                buf.push(v);
                next_probe += 1;
            }
        }
    };
    keep(0, x, buf);
    for i in 1..=n {
        let z: f64 = rng.sample(StandardNormal);
        let y = x + sq * z;
        k.step(x, y, req.dt, rng);
        x = y;
        keep(i, x, buf);
        if opts.early_stop && req.event.settled_false(&k, req.s) {
            return None;
        }
    }
    let o = k.sample();
    if req.event.holds(&o, req.s, req.t) {
        Some(OccupationSample { accepted: true, ..o })
    } else {
        None
    }
}

/// Draws paths until `n_wanted` satisfy the event or `max_paths` were tried.
#[allow(clippy::result_large_err)]
pub fn sample_conditioned(
    req: &ConditionRequest,
    opts: &McOptions,
) -> std::result::Result<ConditionedSample, ConditionedError> {
    let n = steps_for(req.t, req.dt)?;
    req.start.validate()?;
    if req.n_wanted == 0 || req.max_paths == 0 {
        return Err(Error::config("n_wanted and max_paths must be positive").into());
    }
    if opts.chunk_size == 0 {
        return Err(Error::config("chunk size must be positive").into());
    }
    let (probes, probe_times) = match &req.record {
        Record::Full => (Vec::new(), Vec::new()),
        Record::Probes(ts) => {
            let mut idx = Vec::with_capacity(ts.len());
            for &t in ts {
                let i = if t == 0.0 { 0 } else { steps_for(t, req.dt)? };
                if i > n {
                    return Err(Error::domain(format!("probe time {t} beyond the horizon")).into());
                }
                idx.push(i);
            }
            if idx.windows(2).any(|w| w[1] < w[0]) {
                return Err(Error::config("probe times must be non-decreasing").into());
            }
            (idx, ts.clone())
        }
    };
    let mut accepted = Vec::new();
    let mut tried = 0u64;
    let chunk = opts.chunk_size as u64;
    while accepted.len() < req.n_wanted && tried < req.max_paths {
        let round_end = (tried + chunk * CHUNKS_PER_ROUND as u64).min(req.max_paths);
        let starts: Vec<u64> = (tried..round_end).step_by(chunk as usize).collect();
        let found: Vec<Vec<AcceptedPath>> = starts
            .par_iter()
            .map(|&a| {
                let b = (a + chunk).min(round_end);
                let mut buf = Vec::new();
                let mut out = Vec::new();
                for i in a..b {
                    let mut rng = path_rng(req.seed, i);
                    if let Some(o) = one_path(req, i, n, &probes, opts, &mut rng, &mut buf) {
                        out.push(AcceptedPath { index: i, sample: o, values: buf.clone() });
                    }
                }
                out
            })
            .collect();
        for part in found {
            for a in part {
                if accepted.len() < req.n_wanted {
                    tried = a.index + 1;
                    accepted.push(a);
                }
            }
        }
        if accepted.len() < req.n_wanted {
            tried = round_end;
        }
    }
    let sample =
        ConditionedSample { accepted, n_tried: tried, n_wanted: req.n_wanted, seed: req.seed, dt: req.dt, probe_times };
    if sample.accepted.len() < req.n_wanted {
        let error = Error::Partial {
            message: format!("rejection budget of {} paths exhausted", req.max_paths),
            collected: sample.accepted.len(),
            wanted: req.n_wanted,
        };
        return Err(ConditionedError { error, collected: Some(sample) });
    }
    Ok(sample)
}
