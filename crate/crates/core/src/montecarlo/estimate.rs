//! Rejection counting of occupation events.

use super::path::{steps_for, Kernel, OccupationMode, OccupationSample};
use super::rng::{path_rng, run_chunks, Chunking, DEFAULT_CHUNK};
use crate::analytic::{qsd_quantile, qsd_sample};
use crate::error::{Error, Result};
use rand::distr::{Distribution, Open01};
use rand::Rng;
use rand_distr::StandardNormal;

/// Initial law of the path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartLaw {
    Point(f64),
    /// The quasi-stationary law ν.
    Qsd,
    /// ν drawn by stratified inversion: path `i` uses stratum `i mod strata`.
    QsdStratified {
        strata: u32,
    },
}

impl StartLaw {
    pub fn draw<R: Rng + ?Sized>(&self, index: u64, rng: &mut R) -> f64 {
        match *self {
            StartLaw::Point(y) => y,
            StartLaw::Qsd => qsd_sample(rng),
            StartLaw::QsdStratified { strata } => {
                let u: f64 = Open01.sample(rng);
                let k = (index % strata as u64) as f64;
                qsd_quantile((k + u) / strata as f64)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            StartLaw::Point(y) if !y.is_finite() => Err(Error::domain("start must be finite")),
            StartLaw::QsdStratified { strata: 0 } => Err(Error::config("at least one stratum needed")),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Event {
    /// `Γ_T ≤ s`
    LeqS,
    /// `Γ_T = 0`, i.e. no crossing of ±1 up to `T`.
    EqZero,
    /// `Γ_T ∈ (0, s]`
    In0s,
    /// `Γ_T ≤ s` and `τ ≥ ε`.
    LeqSTauAtLeast(f64),
    /// `τ ≥ T`, survival up to the horizon.
    Survive,
}

impl Event {
    pub fn holds(&self, o: &OccupationSample, s: f64, horizon: f64) -> bool {
        match *self {
            Event::LeqS => o.gamma_t <= s,
            Event::EqZero => o.tau > horizon,
            Event::In0s => o.tau <= horizon && o.gamma_t <= s,
            Event::LeqSTauAtLeast(eps) => o.gamma_t <= s && o.tau >= eps,
            Event::Survive => o.tau >= horizon,
        }
    }

    /// Whether the event already failed for every later horizon.
    pub fn settled_false(&self, k: &Kernel, s: f64) -> bool {
        match *self {
            Event::LeqS | Event::In0s => k.gamma > s,
            Event::EqZero | Event::Survive => k.tau.is_finite(),
            Event::LeqSTauAtLeast(eps) => k.gamma > s || k.tau < eps,
        }
    }
}

impl std::str::FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leq_s" | "leq-s" => Ok(Event::LeqS),
            "eq_zero" | "eq-zero" => Ok(Event::EqZero),
            "in_0s" | "in-0s" => Ok(Event::In0s),
            "survive" => Ok(Event::Survive),
            other => Err(Error::config(format!("unknown event `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McOptions {
    pub mode: OccupationMode,
    pub chunk_size: usize,
    /// Stop a path once every requested event is settled.
    pub early_stop: bool,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { mode: OccupationMode::BridgeExact, chunk_size: DEFAULT_CHUNK, early_stop: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub p_hat: f64,
    pub std_err: f64,
    pub n_total: u64,
    pub n_accept: u64,
    pub seed: u64,
    pub chunking: Chunking,
    /// One-sided 95% upper bound `3/n` when nothing was accepted.
    pub upper_bound: Option<f64>,
    pub warning: Option<String>,
}

impl McEstimate {
    pub fn from_counts(n_accept: u64, n_total: u64, seed: u64, chunking: Chunking) -> Self {
        let n = n_total as f64;
        let p = n_accept as f64 / n;
        let (upper_bound, warning) = if n_accept == 0 {
            (Some(3.0 / n), Some(format!("no acceptances in {n_total} paths")))
        } else if n_accept < 30 {
            (None, Some(format!("low acceptance: {n_accept} of {n_total}")))
        } else {
            (None, None)
        };
        McEstimate {
            p_hat: p,
            std_err: (p * (1.0 - p) / n).sqrt(),
            n_total,
            n_accept,
            seed,
            chunking,
            upper_bound,
            warning,
        }
    }
}

/// Parameters of one batch of paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    pub start: StartLaw,
    /// Increasing horizons, each a multiple of `dt`.
    pub horizons: Vec<f64>,
    pub dt: f64,
    pub s: f64,
}

impl PathSpec {
    pub fn new(start: StartLaw, horizons: &[f64], dt: f64, s: f64) -> Result<Self> {
        start.validate()?;
        if horizons.is_empty() || horizons.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("horizons must be non-empty and increasing"));
        }
        for &t in horizons {
            steps_for(t, dt)?;
        }
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("budget s = {s} must be non-negative")));
        }
        Ok(PathSpec { start, horizons: horizons.to_vec(), dt, s })
    }

    pub fn steps(&self) -> Vec<usize> {
        self.horizons.iter().map(|&t| steps_for(t, self.dt).unwrap_or(0)).collect()
    }
}

/// Simulates one path, returning the occupation state at every horizon.
///
/// After an early stop, later horizons carry the state at the stopping time,
/// which already decides every requested event.
pub fn simulate_occupation<R: Rng + ?Sized>(
    spec: &PathSpec,
    index: u64,
    steps: &[usize],
    events: &[Event],
    opts: &McOptions,
    rng: &mut R,
    out: &mut Vec<OccupationSample>,
) {
    out.clear();
    let y0 = spec.start.draw(index, rng);
    let mut k = Kernel::new(opts.mode, y0);
    let sq = spec.dt.sqrt();
    let mut x = y0;
    let mut i = 0usize;
    let last = *steps.last().unwrap_or(&0);
    for &target in steps {
        while i < target {
            let z: f64 = rng.sample(StandardNormal);
            let y = x + sq * z;
            k.step(x, y, spec.dt, rng);
            x = y;
            i += 1;
            if opts.early_stop && events.iter().all(|e| e.settled_false(&k, spec.s)) {
                i = last;
                break;
            }
        }
        out.push(k.sample());
    }
}

/// Joint estimates for several events and horizons from the same paths, as `[event][horizon]`.
pub fn estimate_events(
    spec: &PathSpec,
    events: &[Event],
    n: u64,
    seed: u64,
    opts: &McOptions,
) -> Result<Vec<Vec<McEstimate>>> {
    if events.is_empty() {
        return Err(Error::config("no events requested"));
    }
    let chunking = Chunking::new(n, opts.chunk_size)?;
    let steps = spec.steps();
    let nh = steps.len();
    let counts = run_chunks(n, chunking, |paths| {
        let mut c = vec![0u64; events.len() * nh];
        let mut buf = Vec::with_capacity(nh);
        for i in paths {
            simulate_occupation(spec, i, &steps, events, opts, &mut path_rng(seed, i), &mut buf);
            for (e, ev) in events.iter().enumerate() {
                for (h, o) in buf.iter().enumerate() {
                    if ev.holds(o, spec.s, spec.horizons[h]) {
                        c[e * nh + h] += 1;
                    }
                }
            }
        }
        Ok(c)
    })?;
    let mut total = vec![0u64; events.len() * nh];
    for c in &counts {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    Ok((0..events.len())
        .map(|e| (0..nh).map(|h| McEstimate::from_counts(total[e * nh + h], n, seed, chunking)).collect())
        .collect())
}

/// `P̂_{y0}(event)` at horizon `t` from `n` paths.
pub fn estimate_event(y0: f64, t: f64, dt: f64, s: f64, event: Event, n: u64, seed: u64) -> Result<McEstimate> {
    estimate_event_with(StartLaw::Point(y0), t, dt, s, event, n, seed, &McOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn estimate_event_with(
    start: StartLaw,
    t: f64,
    dt: f64,
    s: f64,
    event: Event,
    n: u64,
    seed: u64,
    opts: &McOptions,
) -> Result<McEstimate> {
    let spec = PathSpec::new(start, &[t], dt, s)?;
    Ok(estimate_events(&spec, &[event], n, seed, opts)?.remove(0).remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_of_three() {
        let c = Chunking::new(100, 10).unwrap();
        let e = McEstimate::from_counts(0, 100, 1, c);
        assert_eq!(e.p_hat, 0.0);
        assert_eq!(e.upper_bound, Some(0.03));
        assert!(e.warning.is_some());
    }

    #[test]
    fn std_err_formula() {
        let c = Chunking::new(400, 10).unwrap();
        let e = McEstimate::from_counts(100, 400, 1, c);
        assert!((e.std_err - (0.25f64 * 0.75 / 400.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn early_stop_does_not_change_counts() {
        let spec = PathSpec::new(StartLaw::Point(0.0), &[1.0, 2.0], 0.01, 0.3).unwrap();
        let ev = [Event::LeqS, Event::EqZero, Event::In0s];
        let a = estimate_events(&spec, &ev, 2000, 9, &McOptions { chunk_size: 500, ..Default::default() }).unwrap();
        let b = estimate_events(
            &spec,
            &ev,
            2000,
            9,
            &McOptions { chunk_size: 500, early_stop: false, ..Default::default() },
        )
        .unwrap();
        for e in 0..3 {
            for h in 0..2 {
                assert_eq!(a[e][h].n_accept, b[e][h].n_accept);
            }
        }
    }

    #[test]
    fn event_inclusion() {
        let spec = PathSpec::new(StartLaw::Point(0.0), &[2.0], 0.01, 0.5).unwrap();
        let r =
            estimate_events(&spec, &[Event::LeqS, Event::EqZero, Event::In0s], 5000, 4, &McOptions::default()).unwrap();
        assert_eq!(r[0][0].n_accept, r[1][0].n_accept + r[2][0].n_accept);
    }
}
