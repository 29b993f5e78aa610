//! From outside `[-1, 1]`, conditioning on `Γ_T ≤ s` forces an immediate entry.

use super::ratio_qsd::join;
use super::report::{Cell, ExperimentReport};
use super::trend::{decreasing, decreasing_beyond, ratio_with_err};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_events, Event, McOptions, PathSpec, StartLaw};

#[derive(Debug, Clone, PartialEq)]
pub struct CorOutsideConfig {
    pub y: f64,
    pub s: f64,
    pub eps: Vec<f64>,
    pub ts: Vec<f64>,
    pub dt: f64,
    pub n: u64,
    pub seed: u64,
    /// Inside start used for `P_y(Γ_T ≤ s)/P_ref(Γ_T ≤ s)`.
    pub reference_y: f64,
    pub opts: McOptions,
}

impl Default for CorOutsideConfig {
    fn default() -> Self {
        CorOutsideConfig {
            y: 1.2,
            s: 0.5,
            eps: vec![0.1, 1e-6],
            ts: vec![2.0, 3.0, 4.0],
            dt: 1e-3,
            n: 1_000_000,
            seed: 42,
            reference_y: 0.0,
            opts: McOptions::default(),
        }
    }
}

/// Thresholds below this many steps are resolved by the grid only trivially.
const VANISHING_STEPS: f64 = 1.0;

pub fn exp_cor_outside(cfg: &CorOutsideConfig) -> Result<ExperimentReport> {
    if !(cfg.y.abs() > 1.0) {
        return Err(Error::domain(format!("start {} must lie outside [-1, 1]", cfg.y)));
    }
    let mut rep = ExperimentReport::new(
        "cor-outside",
        &["eps", "T", "p_leq", "n_leq", "cond", "cond_se", "p_leq_ref", "outside_ratio", "outside_ratio_se", "seed"],
    );
    rep.param("y", cfg.y);
    rep.param("s", cfg.s);
    rep.param("eps", join(&cfg.eps));
    rep.param("T", join(&cfg.ts));
    rep.param("dt", cfg.dt);
    rep.param("n", cfg.n);
    rep.param("seed", cfg.seed);
    rep.param("reference_y", cfg.reference_y);

    let mut events = vec![Event::LeqS];
    events.extend(cfg.eps.iter().map(|&e| Event::LeqSTauAtLeast(e)));
    let est = estimate_events(
        &PathSpec::new(StartLaw::Point(cfg.y), &cfg.ts, cfg.dt, cfg.s)?,
        &events,
        cfg.n,
        cfg.seed,
        &cfg.opts,
    )?;
    let refe = estimate_events(
        &PathSpec::new(StartLaw::Point(cfg.reference_y), &cfg.ts, cfg.dt, cfg.s)?,
        &[Event::LeqS],
        cfg.n,
        cfg.seed,
        &cfg.opts,
    )?;
    let outside: Vec<(f64, f64)> = (0..cfg.ts.len())
        .map(|h| ratio_with_err(est[0][h].p_hat, est[0][h].std_err, refe[0][h].p_hat, refe[0][h].std_err))
        .collect();

    for (k, &eps) in cfg.eps.iter().enumerate() {
        let mut qs = Vec::new();
        let mut ses = Vec::new();
        for (h, &t) in cfg.ts.iter().enumerate() {
            let na = est[0][h].n_accept;
            let q = est[k + 1][h].n_accept as f64 / na.max(1) as f64;
            let se = (q * (1.0 - q) / na.max(1) as f64).sqrt();
            qs.push(q);
            ses.push(se);
            rep.push(vec![
                eps.into(),
                t.into(),
                est[0][h].p_hat.into(),
                na.into(),
                q.into(),
                se.into(),
                refe[0][h].p_hat.into(),
                outside[h].0.into(),
                outside[h].1.into(),
                Cell::Int(cfg.seed),
            ]);
        }
        if eps < VANISHING_STEPS * cfg.dt {
            let m = qs.iter().cloned().fold(f64::INFINITY, f64::min);
            rep.verdict(&format!("vanishing_eps{eps}"), m >= 0.99, format!("min conditional probability {m:.5}"));
        } else {
            rep.verdict(
                &format!("decreasing_eps{eps}"),
                decreasing_beyond(&qs, &ses, 3.0),
                format!("{qs:?} ± {ses:?}"),
            );
            let (first, last) = (qs[0], qs[qs.len() - 1]);
            rep.verdict(&format!("halving_eps{eps}"), last <= 0.5 * first, format!("{last:.5} vs half of {first:.5}"));
        }
    }
    let rs: Vec<f64> = outside.iter().map(|r| r.0).collect();
    rep.verdict("outside_ratio_decreasing", decreasing(&rs), format!("{rs:?}"));
    Ok(rep)
}
