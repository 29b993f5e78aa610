//! Started from ν, survival is `e^{-π²t/8}` and survivors are again ν-distributed.

use super::ratio_qsd::join;
use super::report::{Cell, ExperimentReport};
use crate::analytic::qsd_cdf;
use crate::error::Result;
use crate::montecarlo::{sample_conditioned, ConditionRequest, Event, McOptions, Record, StartLaw};
use crate::special::LAMBDA0;
use crate::stats::{ks_critical, ks_statistic};

#[derive(Debug, Clone, PartialEq)]
pub struct QsdStationarityConfig {
    pub ts: Vec<f64>,
    pub n_survivors: usize,
    pub dt: f64,
    pub seed: u64,
    pub alpha: f64,
    pub opts: McOptions,
}

impl Default for QsdStationarityConfig {
    fn default() -> Self {
        QsdStationarityConfig {
            ts: vec![0.0, 0.5, 1.0, 2.0],
            n_survivors: 100_000,
            dt: 5e-3,
            seed: 42,
            alpha: 0.01,
            opts: McOptions { chunk_size: 4096, ..Default::default() },
        }
    }
}

pub fn exp_qsd_stationarity(cfg: &QsdStationarityConfig) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new(
        "qsd-stationarity",
        &["t", "survival", "se", "target", "z_score", "ks", "ks_critical", "n_survivors", "n_tried", "seed"],
    );
    rep.param("t", join(&cfg.ts));
    rep.param("n_survivors", cfg.n_survivors);
    rep.param("dt", cfg.dt);
    rep.param("seed", cfg.seed);
    rep.param("alpha", cfg.alpha);
    for &t in &cfg.ts {
        let target = (-LAMBDA0 * t).exp();
        if t == 0.0 {
            rep.push(vec![
                0.0.into(),
                1.0.into(),
                0.0.into(),
                target.into(),
                0.0.into(),
                f64::NAN.into(),
                f64::NAN.into(),
                0u64.into(),
                0u64.into(),
                cfg.seed.into(),
            ]);
            rep.verdict("survival_t0", target == 1.0, "survival at t = 0 is 1; KS skipped");
            continue;
        }
        let req = ConditionRequest {
            start: StartLaw::Qsd,
            t,
            dt: cfg.dt,
            s: 0.0,
            event: Event::Survive,
            n_wanted: cfg.n_survivors,
            seed: cfg.seed,
            max_paths: ((cfg.n_survivors as f64 / target) * 3.0).ceil() as u64 + 1000,
            record: Record::Probes(vec![t]),
        };
        let smp = sample_conditioned(&req, &cfg.opts).map_err(|e| e.error)?;
        let p = smp.acceptance_rate();
        let se = smp.acceptance_std_err();
        let z = (p - target) / se;
        let xs = smp.marginal(0);
        let ks = ks_statistic(&xs, qsd_cdf)?;
        let crit = ks_critical(xs.len(), cfg.alpha);
        rep.push(vec![
            t.into(),
            p.into(),
            se.into(),
            target.into(),
            z.into(),
            ks.into(),
            crit.into(),
            (xs.len() as u64).into(),
            smp.n_tried.into(),
            Cell::Int(cfg.seed),
        ]);
        rep.verdict(&format!("survival_t{t}"), z.abs() <= 3.0, format!("{p:.6} vs {target:.6} (z = {z:.2})"));
        rep.verdict(&format!("ks_t{t}"), ks < crit, format!("D = {ks:.5} vs {crit:.5}"));
    }
    Ok(rep)
}
