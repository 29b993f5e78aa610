//! Conditioned on `Γ_T ≤ s` or on `Γ_T = 0`, the path law approaches the taboo process.

use super::ratio_qsd::join;
use super::report::{Cell, ExperimentReport};
use super::trend::increasing;
use crate::analytic::{taboo_transition_cdf, SeriesTolerance};
use crate::error::{Error, Result};
use crate::montecarlo::{
    estimate_events, sample_conditioned, ConditionRequest, ConditionedSample, Event, McOptions, PathSpec, Record,
    StartLaw,
};
use crate::special::norm_cdf;
use crate::stats::{ks_critical, ks_critical_two, ks_statistic, ks_two_sample};

#[derive(Debug, Clone, PartialEq)]
pub struct ThmMainConfig {
    pub y: f64,
    pub s: f64,
    pub t: f64,
    pub probes: Vec<f64>,
    pub n_wanted: usize,
    pub dt: f64,
    pub seed: u64,
    pub max_paths: u64,
    pub fraction_ts: Vec<f64>,
    pub fraction_n: u64,
    pub alpha: f64,
    pub opts: McOptions,
}

impl Default for ThmMainConfig {
    fn default() -> Self {
        ThmMainConfig {
            y: 0.0,
            s: 0.5,
            t: 4.0,
            probes: vec![1.0],
            n_wanted: 10_000,
            dt: 1e-3,
            seed: 42,
            max_paths: 100_000_000,
            fraction_ts: vec![2.0, 3.0, 4.0],
            fraction_n: 200_000,
            alpha: 0.01,
            opts: McOptions { chunk_size: 2048, ..Default::default() },
        }
    }
}

fn conditioned(cfg: &ThmMainConfig, event: Event, probes: &[f64]) -> Result<ConditionedSample> {
    let req = ConditionRequest {
        start: StartLaw::Point(cfg.y),
        t: cfg.t,
        dt: cfg.dt,
        s: cfg.s,
        event,
        n_wanted: cfg.n_wanted,
        seed: cfg.seed,
        max_paths: cfg.max_paths,
        record: Record::Probes(probes.to_vec()),
    };
    sample_conditioned(&req, &cfg.opts).map_err(|e| e.error)
}

pub fn exp_thm_main(cfg: &ThmMainConfig) -> Result<ExperimentReport> {
    if !(cfg.y.abs() < 1.0) {
        return Err(Error::domain("start must lie in (-1, 1)"));
    }
    let mut rep = ExperimentReport::new(
        "thm-main",
        &[
            "t_probe",
            "ks_leq_taboo",
            "ks_eq0_taboo",
            "ks_leq_bm",
            "ks_eq0_bm",
            "ks_leq_eq0",
            "crit_one",
            "crit_two",
            "accept_leq",
            "accept_eq0",
            "seed",
        ],
    );
    rep.param("y", cfg.y);
    rep.param("s", cfg.s);
    rep.param("T", cfg.t);
    rep.param("probes", join(&cfg.probes));
    rep.param("n_wanted", cfg.n_wanted);
    rep.param("dt", cfg.dt);
    rep.param("seed", cfg.seed);
    rep.param("fraction_T", join(&cfg.fraction_ts));
    rep.param("fraction_n", cfg.fraction_n);

    let probes: Vec<f64> = cfg.probes.iter().copied().filter(|&t| t > 0.0).collect();
    if probes.len() < cfg.probes.len() {
        rep.notes.push("probe t = 0 skipped: both marginals are the point mass at y".into());
    }
    if !probes.is_empty() {
        let leq = conditioned(cfg, Event::LeqS, &probes)?;
        let eq0 = conditioned(cfg, Event::EqZero, &probes)?;
        let tol = SeriesTolerance::default();
        for (k, &tp) in probes.iter().enumerate() {
            let a = leq.marginal(k);
            let b = eq0.marginal(k);
            let taboo = |x: f64| taboo_transition_cdf(cfg.y, x.clamp(-1.0, 1.0), tp, tol).unwrap_or(f64::NAN);
            let bm = |x: f64| norm_cdf((x - cfg.y) / tp.sqrt());
            let ks_a = ks_statistic(&a, taboo)?;
            let ks_b = ks_statistic(&b, taboo)?;
            let ks_abm = ks_statistic(&a, bm)?;
            let ks_bbm = ks_statistic(&b, bm)?;
            let ks_ab = ks_two_sample(&a, &b)?;
            let c1 = ks_critical(a.len(), cfg.alpha);
            let c2 = ks_critical_two(a.len(), b.len(), cfg.alpha);
            rep.push(vec![
                tp.into(),
                ks_a.into(),
                ks_b.into(),
                ks_abm.into(),
                ks_bbm.into(),
                ks_ab.into(),
                c1.into(),
                c2.into(),
                leq.acceptance_rate().into(),
                eq0.acceptance_rate().into(),
                Cell::Int(cfg.seed),
            ]);
            rep.verdict(&format!("ks_leq_taboo_t{tp}"), ks_a < c1, format!("D = {ks_a:.5} vs {c1:.5}"));
            rep.verdict(&format!("ks_eq0_taboo_t{tp}"), ks_b < c1, format!("D = {ks_b:.5} vs {c1:.5}"));
            rep.verdict(
                &format!("closer_to_taboo_t{tp}"),
                ks_a < ks_abm && ks_b < ks_bbm,
                format!("leq: {ks_a:.4} < {ks_abm:.4}, eq0: {ks_b:.4} < {ks_bbm:.4}"),
            );
            rep.verdict(&format!("ks_leq_eq0_t{tp}"), ks_ab < c2, format!("D = {ks_ab:.5} vs {c2:.5}"));
        }
    }

    let spec = PathSpec::new(StartLaw::Point(cfg.y), &cfg.fraction_ts, cfg.dt, cfg.s)?;
    let est = estimate_events(&spec, &[Event::LeqS, Event::EqZero], cfg.fraction_n, cfg.seed, &cfg.opts)?;
    let fr: Vec<f64> =
        (0..cfg.fraction_ts.len()).map(|h| est[1][h].n_accept as f64 / est[0][h].n_accept.max(1) as f64).collect();
    rep.notes.push(format!("zero-exit fraction among leq_s paths at T = {}: {}", join(&cfg.fraction_ts), join(&fr)));
    rep.verdict("zero_exit_fraction_increasing", increasing(&fr), format!("{fr:?}"));
    Ok(rep)
}
