//! The acceptance suite: one pass/fail outcome per criterion, tolerances fixed here.

use crate::analytic::saddle::cubic_residual;
use crate::analytic::{
    cardano_root, exit_prob_zero, log_asymp_prob_leq_s, log_asymp_snu, qsd_density, saddle_exponent, AsymptoticInput,
    SeriesTolerance,
};
use crate::error::Result;
use crate::experiments::{
    exp_cor_outside, exp_qsd_stationarity, exp_ratio_qsd, exp_thm_main, CorOutsideConfig, ExperimentReport,
    QsdStationarityConfig, RatioQsdConfig, ThmMainConfig,
};
use crate::inversion::{
    invert, snu_from_transform, ExitCdfTransform, ExponentialTransform, InversionConfig, Method, SurvivalTransform,
    Transform,
};
use crate::laplace::{
    expansion_residual_v, expansion_residual_w, fn_s_hat, ingham_equivalent, laplace_r, laplace_r_raw, ComplexLambda,
    DomainTag,
};
use crate::montecarlo::{estimate_event, Event};
use crate::quad;
use crate::special::LAMBDA0;
use crate::stats::log_log_slope;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} [{}] ({:.1} s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.seconds,
            self.detail
        )
    }
}

pub const TITLES: [&str; 11] = [
    "closed form vs bridge-corrected Monte Carlo",
    "transform closed form vs raw double integral",
    "expansion orders of v and w",
    "Ingham equivalent of S-hat",
    "saddle layer",
    "asymptotic consistency identity",
    "inversion of S_nu",
    "conditional marginals vs taboo process",
    "ratio to the qsd start",
    "immediate entry from outside",
    "qsd stationarity",
];

/// Runtime budgets are stated for 8 cores and scaled to the cores available.
fn budget(seconds_on_8: f64) -> f64 {
    let cores = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8) as f64;
    seconds_on_8 * 8.0 / cores
}

fn timed(id: u8, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let t0 = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome { id, title: TITLES[id as usize - 1], passed, detail, seconds: t0.elapsed().as_secs_f64() }
}

fn with_runtime(mut o: CriterionOutcome, limit_on_8: f64) -> CriterionOutcome {
    let b = budget(limit_on_8);
    if o.seconds > b {
        o.passed = false;
    }
    o.detail = format!("{}; runtime {:.1} s (budget {:.0} s)", o.detail, o.seconds, b);
    o
}

pub fn criterion_1() -> CriterionOutcome {
    let o = timed(1, || {
        let exact = exit_prob_zero(0.0, 2.0, SeriesTolerance::default())?;
        let e = estimate_event(0.0, 2.0, 1e-3, 0.0, Event::EqZero, 10_000_000, 20240601)?;
        let z = (e.p_hat - exact) / e.std_err;
        Ok((z.abs() <= 3.0, format!("P̂ = {:.6} ± {:.6} vs {exact:.6} (z = {z:.2})", e.p_hat, e.std_err)))
    });
    with_runtime(o, 120.0)
}

/// `(λ, y, s)` test points for the transform identity.
pub const TRANSFORM_POINTS: [(f64, f64, f64, f64); 6] = [
    (0.5, 0.0, 0.0, 1.0),
    (2.0, 0.0, 0.5, 1.0),
    (1.0, 1.0, 0.0, 1.0),
    (0.1, 0.0, 0.9, 0.5),
    (5.0, 0.0, -0.3, 2.0),
    (-0.5, 0.0, 0.2, 1.0),
];

pub fn criterion_2() -> CriterionOutcome {
    let o = timed(2, || {
        let mut worst = 0.0f64;
        for &(re, im, y, s) in &TRANSFORM_POINTS {
            let l = ComplexLambda::new(re, im, DomainTag::HLeft)?;
            let a = laplace_r(l, y, s)?.to_complex();
            let b = laplace_r_raw(l, y, s)?;
            worst = worst.max((a - b).norm() / b.norm());
        }
        Ok((worst <= 1e-8, format!("max relative difference {worst:.2e} over 6 points")))
    });
    with_runtime(o, 60.0)
}

pub fn criterion_3() -> CriterionOutcome {
    timed(3, || {
        let ls: Vec<f64> = (0..=10).map(|k| 10f64.powf(-3.0 + 0.2 * k as f64)).collect();
        let mut rv = Vec::new();
        let mut rw = Vec::new();
        for &l in &ls {
            let cl = ComplexLambda::real(l, DomainTag::H)?;
            rv.push(expansion_residual_v(cl)?.norm());
            rw.push(expansion_residual_w(cl)?.norm());
        }
        let sv = log_log_slope(&ls, &rv)?;
        let sw = log_log_slope(&ls, &rw)?;
        Ok((sv >= 1.9 && sw >= 0.9, format!("slopes v: {sv:.4} (≥ 1.9), w: {sw:.4} (≥ 0.9)")))
    })
}

pub fn criterion_4() -> CriterionOutcome {
    timed(4, || {
        let lambdas = [1e-2, 5e-3, 2e-3];
        let s = 1.0;
        let mut ok = true;
        let mut rows = Vec::new();
        let mut spread = 0.0f64;
        let mut per_l = vec![Vec::new(); lambdas.len()];
        for &y in &[-0.9, 0.0, 0.9] {
            let mut rs = Vec::new();
            for (k, &l) in lambdas.iter().enumerate() {
                let cl = ComplexLambda::real(l, DomainTag::H)?;
                let r = (fn_s_hat(cl, y, s)?.ln() - ingham_equivalent(cl, y, s)?.ln()).exp().re;
                per_l[k].push(r);
                rs.push(r);
            }
            ok &= rs.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs());
            ok &= (rs[2] - 1.0).abs() <= 0.05;
            rows.push(format!("y={y}: {:.4}/{:.4}/{:.4}", rs[0], rs[1], rs[2]));
        }
        for v in &per_l {
            let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            spread = spread.max(hi - lo);
        }
        ok &= spread <= 0.02;
        Ok((ok, format!("{}; spread {spread:.2e}", rows.join(", "))))
    })
}

pub fn criterion_5() -> CriterionOutcome {
    timed(5, || {
        let mut worst = 0.0f64;
        for &t in &[1.0, 1e3, 1e6] {
            for &s in &[0.1, 1.0, 10.0] {
                worst = worst.max(cubic_residual(cardano_root(t, s)?, t, s));
            }
        }
        let ts: Vec<f64> = (0..=8).map(|k| 10f64.powf(2.0 + 0.5 * k as f64)).collect();
        let mut ds = Vec::new();
        for &t in &ts {
            ds.push(saddle_exponent(t, 1.0)?.difference.abs());
        }
        let slope = log_log_slope(&ts, &ds)?;
        let ok = worst <= 1e-10 && (slope + 0.33).abs() <= 0.05;
        Ok((ok, format!("max cubic residual {worst:.2e}; exponent gap slope {slope:.4} (−0.33 ± 0.05)")))
    })
}

pub fn criterion_6() -> CriterionOutcome {
    timed(6, || {
        let mut worst = 0.0f64;
        for &(s, t) in &[(1.0, 20.0), (0.5, 4.0), (2.0, 80.0)] {
            let reference = log_asymp_snu(s, t)?.ln() - LAMBDA0 * t;
            let f = |y: f64| {
                if y.abs() >= 1.0 {
                    return 0.0;
                }
                let l =
                    AsymptoticInput::new(y, s, t).and_then(log_asymp_prob_leq_s).map(|l| l.ln()).unwrap_or(f64::NAN);
                (l - reference).exp() * qsd_density(y)
            };
            let r = quad::integrate(f, -1.0, 1.0, 1e-14)?.value;
            worst = worst.max((r - 1.0).abs());
        }
        Ok((worst <= 1e-10, format!("max |ratio − 1| = {worst:.2e}")))
    })
}

fn fixture_agreement<Tr: Transform>(tr: &Tr, t: f64) -> Result<f64> {
    let gs =
        invert(tr, t, &InversionConfig { method: Method::GaverStehfest, cross_check: false, ..Default::default() })?;
    let br = invert(tr, t, &InversionConfig::bromwich())?;
    Ok((gs.value - br.value).abs() / br.value.abs())
}

pub fn criterion_7() -> CriterionOutcome {
    let o = timed(7, || {
        let cfg = InversionConfig::bromwich();
        let ts = [20.0, 40.0, 80.0];
        let mut ratios = Vec::new();
        for &t in &ts {
            let v = snu_from_transform(1.0, t, &cfg)?;
            ratios.push(v / crate::analytic::asymp_snu(1.0, t)?);
        }
        let trend = ratios.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs());
        let last = (ratios[2] - 1.0).abs();
        let agree = [
            fixture_agreement(&ExponentialTransform { a: LAMBDA0 }, 3.0)?,
            fixture_agreement(&ExitCdfTransform::new(0.0)?, 2.0)?,
            fixture_agreement(&SurvivalTransform::new(0.5)?, 1.0)?,
        ];
        let worst = agree.iter().cloned().fold(0.0, f64::max);
        let ok = trend && last <= 0.15 && worst <= 1e-6;
        Ok((
            ok,
            format!(
                "S_ν/asymp at T=20,40,80: {:.4}/{:.4}/{:.4} (trend {}, final within 15%: {}); GS vs Bromwich {worst:.1e}",
                ratios[0],
                ratios[1],
                ratios[2],
                if trend { "ok" } else { "broken" },
                last <= 0.15
            ),
        ))
    });
    with_runtime(o, 300.0)
}

fn verdicts(rep: &ExperimentReport, names: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in names {
        match rep.verdicts.iter().find(|v| v.criterion == *n) {
            Some(v) => {
                ok &= v.passed;
                parts.push(format!("{}={} ({})", n, if v.passed { "pass" } else { "fail" }, v.detail));
            }
            None => {
                ok = false;
                parts.push(format!("{n}=missing"));
            }
        }
    }
    (ok, parts.join("; "))
}

pub fn criterion_8() -> CriterionOutcome {
    timed(8, || {
        let rep = exp_thm_main(&ThmMainConfig::default())?;
        Ok(verdicts(&rep, &["ks_leq_taboo_t1", "ks_leq_eq0_t1", "zero_exit_fraction_increasing"]))
    })
}

pub fn criterion_9() -> CriterionOutcome {
    timed(9, || {
        let cfg = RatioQsdConfig { ys: vec![0.0, 0.5], ..Default::default() };
        let rep = exp_ratio_qsd(&cfg)?;
        Ok(verdicts(&rep, &["trend_y0", "final_y0", "trend_y0.5", "final_y0.5"]))
    })
}

pub fn criterion_10() -> CriterionOutcome {
    timed(10, || {
        let cfg = CorOutsideConfig { eps: vec![0.1], ..Default::default() };
        let rep = exp_cor_outside(&cfg)?;
        Ok(verdicts(&rep, &["decreasing_eps0.1"]))
    })
}

pub fn criterion_11() -> CriterionOutcome {
    timed(11, || {
        let cfg = QsdStationarityConfig { ts: vec![0.5, 1.0, 2.0], ..Default::default() };
        let rep = exp_qsd_stationarity(&cfg)?;
        Ok(verdicts(&rep, &["survival_t0.5", "ks_t0.5", "survival_t1", "ks_t1", "survival_t2", "ks_t2"]))
    })
}

pub fn run_criterion(id: u8) -> Option<CriterionOutcome> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => return None,
    })
}

/// Runs the selected criteria (all when `ids` is empty), calling `report` after each.
pub fn run_all(ids: &[u8], mut report: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
    let all: Vec<u8> = (1..=11).collect();
    let ids = if ids.is_empty() { &all[..] } else { ids };
    let mut out = Vec::new();
    for &id in ids {
        if let Some(o) = run_criterion(id) {
            report(&o);
            out.push(o);
        }
    }
    out
}
