//! Subcommand bodies. Each returns an [`ExperimentReport`] so every output shares one CSV layout.

use crate::params::Params;
use occulab_core::analytic::asymptotics::{c1, c2, c3};
use occulab_core::analytic::series::survival_series;
use occulab_core::analytic::{
    asymp_prob_leq_s, asymp_snu, cardano_root, exit_prob_zero, exit_time_density, qsd_cdf, qsd_density, saddle_t0,
    taboo_stationary_cdf, taboo_stationary_density, taboo_transition_cdf, taboo_transition_density, AsymptoticInput,
    SeriesTolerance,
};
use occulab_core::error::{Error, Result};
use occulab_core::experiments::{
    exp_cor_outside, exp_prop_asymp, exp_qsd_stationarity, exp_ratio_qsd, exp_thm_main, Cell, CorOutsideConfig,
    ExperimentReport, PropAsympConfig, QsdStationarityConfig, RatioQsdConfig, ThmMainConfig, NAMES,
};
use occulab_core::inversion::{
    invert, ExitCdfTransform, InversionConfig, InversionResult, Method, RTransform, SnuTransform, SurvivalTransform,
    SyTransform, Transform,
};
use occulab_core::laplace::{
    fn_s_hat, fn_s_hat_nu, fn_u, fn_u_shift, fn_v, fn_v_shift, fn_w, fn_w_shift, ingham_equivalent, laplace_r,
    laplace_r_raw, ComplexLambda, DomainTag, TransformValue,
};
use occulab_core::montecarlo::{estimate_events, Event, McOptions, OccupationMode, PathSpec, StartLaw};

pub const EVAL_WHATS: [&str; 16] = [
    "exit-prob-zero",
    "survival",
    "exit-density",
    "qsd-density",
    "qsd-cdf",
    "taboo-density",
    "taboo-cdf",
    "taboo-stationary-density",
    "taboo-stationary-cdf",
    "asymp-leq",
    "asymp-snu",
    "saddle-h",
    "saddle-t0",
    "c1",
    "c2",
    "c3",
];

fn tolerance(p: &Params) -> Result<SeriesTolerance> {
    SeriesTolerance::new(p.f64_or("tol", 1e-15)?, p.u64_or("max-terms", 100_000)? as usize)
}

fn record_params(rep: &mut ExperimentReport, p: &Params) {
    for (k, v) in p.iter() {
        if rep.parameters.iter().all(|(key, _)| key != k) {
            rep.param(k, v);
        }
    }
}

pub fn eval(p: &Params) -> Result<ExperimentReport> {
    let what = p.raw("what").ok_or_else(|| Error::config("missing --what"))?;
    let tol = tolerance(p)?;
    let y = p.f64_or("y", 0.0)?;
    let s = p.f64_or("s", 1.0)?;
    let x = p.f64_or("x", 0.0)?;
    let ts = p.list_or("T", &[1.0])?;
    let mut rep = ExperimentReport::new("eval", &["what", "y", "x", "s", "T", "value", "tol"]);
    record_params(&mut rep, p);
    for &t in &ts {
        let value = match what {
            "exit-prob-zero" => exit_prob_zero(y, t, tol)?,
            "survival" => survival_series(y, t, tol)?,
            "exit-density" => exit_time_density(y, t, tol)?,
            "qsd-density" => qsd_density(y),
            "qsd-cdf" => qsd_cdf(y),
            "taboo-density" => taboo_transition_density(y, x, t, tol)?,
            "taboo-cdf" => taboo_transition_cdf(y, x, t, tol)?,
            "taboo-stationary-density" => taboo_stationary_density(y),
            "taboo-stationary-cdf" => taboo_stationary_cdf(y),
            "asymp-leq" => asymp_prob_leq_s(AsymptoticInput::new(y, s, t)?)?,
            "asymp-snu" => asymp_snu(s, t)?,
            "saddle-h" => cardano_root(t, s)?,
            "saddle-t0" => saddle_t0(s),
            "c1" => c1(s),
            "c2" => c2(s),
            "c3" => c3(s),
            other => return Err(Error::config(format!("unknown --what `{other}` (one of {})", EVAL_WHATS.join(", ")))),
        };
        rep.push(vec![
            Cell::Text(what.into()),
            Cell::Num(y),
            Cell::Num(x),
            Cell::Num(s),
            Cell::Num(t),
            Cell::Num(value),
            Cell::Num(tol.abs_tol),
        ]);
    }
    Ok(rep)
}

pub const LAPLACE_WHATS: [&str; 12] =
    ["r", "r-raw", "s-hat", "s-hat-nu", "ingham", "ingham-ratio", "u", "v", "w", "u-shift", "v-shift", "w-shift"];

pub fn laplace(p: &Params) -> Result<ExperimentReport> {
    let what = p.raw("what").ok_or_else(|| Error::config("missing --what"))?;
    let y = p.f64_or("y", 0.0)?;
    let s = p.f64_or("s", 1.0)?;
    let re = p.f64_req("lambda")?;
    let im = p.f64_or("lambda-im", 0.0)?;
    let tag = match what {
        "r" | "r-raw" | "u" | "v" | "w" => DomainTag::HLeft,
        _ => DomainTag::H,
    };
    let l = ComplexLambda::new(re, im, tag)?;
    let value = match what {
        "r" => laplace_r(l, y, s)?,
        "r-raw" => TransformValue::from_complex(laplace_r_raw(l, y, s)?),
        "s-hat" => fn_s_hat(l, y, s)?,
        "s-hat-nu" => fn_s_hat_nu(l, s)?,
        "ingham" => ingham_equivalent(l, y, s)?,
        "ingham-ratio" => fn_s_hat(l, y, s)?.div(&ingham_equivalent(l, y, s)?),
        "u" => TransformValue::from_complex(fn_u(l, y)?),
        "v" => TransformValue::from_complex(fn_v(l)?),
        "w" => TransformValue::from_complex(fn_w(l)?),
        "u-shift" => TransformValue::from_complex(fn_u_shift(l, y)?),
        "v-shift" => TransformValue::from_complex(fn_v_shift(l)?),
        "w-shift" => TransformValue::from_complex(fn_w_shift(l)?),
        other => return Err(Error::config(format!("unknown --what `{other}` (one of {})", LAPLACE_WHATS.join(", ")))),
    };
    let z = value.to_complex();
    let mut rep =
        ExperimentReport::new("laplace", &["what", "lambda_re", "lambda_im", "y", "s", "re", "im", "ln_abs", "phase"]);
    record_params(&mut rep, p);
    rep.push(vec![
        Cell::Text(what.into()),
        Cell::Num(re),
        Cell::Num(im),
        Cell::Num(y),
        Cell::Num(s),
        Cell::Num(z.re),
        Cell::Num(z.im),
        Cell::Num(value.log_modulus()),
        Cell::Num(value.phase()),
    ]);
    Ok(rep)
}

fn inversion_config(p: &Params) -> Result<InversionConfig> {
    let mut cfg = InversionConfig::default();
    match p.str_or("method", "both") {
        "both" => cfg.cross_check = true,
        m => {
            cfg.method = m.parse()?;
            cfg.cross_check = false;
        }
    }
    cfg.precision_bits = p.u64_or("precision-bits", cfg.precision_bits as u64)? as usize;
    cfg.n_terms = p.u64_or("terms", cfg.n_terms as u64)? as usize;
    cfg.bromwich_shift = p.f64_or("bromwich-shift", cfg.bromwich_shift)?;
    cfg.bromwich_terms = p.u64_or("bromwich-terms", cfg.bromwich_terms as u64)? as usize;
    cfg.euler_terms = p.u64_or("euler-terms", cfg.euler_terms as u64)? as usize;
    cfg.validate()?;
    Ok(cfg)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::GaverStehfest => "gaver-stehfest",
        Method::BromwichTrapezoid => "bromwich",
    }
}

pub const INVERT_WHATS: [&str; 5] = ["s-y", "s-nu", "r", "exit-cdf", "survival"];

pub fn invert_cmd(p: &Params) -> Result<ExperimentReport> {
    let what = p.raw("what").ok_or_else(|| Error::config("missing --what"))?;
    let y = p.f64_or("y", 0.0)?;
    let s = p.f64_or("s", 1.0)?;
    let ts = p.list_req("T")?;
    let cfg = inversion_config(p)?;
    let tr: Box<dyn Transform> = match what {
        "s-y" => Box::new(SyTransform::new(y, s)?),
        "s-nu" => Box::new(SnuTransform::new(s)?),
        "r" => Box::new(RTransform::new(y, s)?),
        "exit-cdf" => Box::new(ExitCdfTransform::new(y)?),
        "survival" => Box::new(SurvivalTransform::new(y)?),
        other => return Err(Error::config(format!("unknown --what `{other}` (one of {})", INVERT_WHATS.join(", ")))),
    };
    let mut rep = ExperimentReport::new(
        "invert",
        &["what", "y", "s", "T", "value", "ln_abs", "error_estimate", "method", "other"],
    );
    record_params(&mut rep, p);
    rep.param("precision_bits", cfg.precision_bits);
    rep.param("terms", cfg.n_terms);
    for &t in &ts {
        let r: InversionResult = invert(tr.as_ref(), t, &cfg)?;
        rep.push(vec![
            Cell::Text(what.into()),
            Cell::Num(y),
            Cell::Num(s),
            Cell::Num(t),
            Cell::Num(r.value),
            Cell::Num(r.ln_abs),
            Cell::Num(r.error_estimate),
            Cell::Text(method_name(r.method).into()),
            Cell::Num(r.other.unwrap_or(f64::NAN)),
        ]);
    }
    Ok(rep)
}

fn mc_options(p: &Params) -> Result<McOptions> {
    let d = McOptions::default();
    Ok(McOptions {
        mode: match p.raw("mode") {
            Some(m) => m.parse::<OccupationMode>()?,
            None => d.mode,
        },
        chunk_size: p.u64_or("chunk", d.chunk_size as u64)? as usize,
        early_stop: p.bool_or("early-stop", d.early_stop)?,
    })
}

fn start_law(p: &Params) -> Result<StartLaw> {
    match p.str_or("start", "point") {
        "point" => Ok(StartLaw::Point(p.f64_or("y", 0.0)?)),
        "qsd" => Ok(StartLaw::Qsd),
        "qsd-stratified" => Ok(StartLaw::QsdStratified { strata: p.u64_or("strata", 64)? as u32 }),
        other => Err(Error::config(format!("unknown --start `{other}` (point, qsd, qsd-stratified)"))),
    }
}

fn parse_event(name: &str, p: &Params) -> Result<Event> {
    match name {
        "leq-s-tau" | "leq_s_tau" => Ok(Event::LeqSTauAtLeast(p.f64_req("eps")?)),
        other => other.parse(),
    }
}

pub fn simulate(p: &Params) -> Result<ExperimentReport> {
    let names: Vec<&str> = p.str_or("event", "leq-s").split(',').map(str::trim).collect();
    let events = names.iter().map(|n| parse_event(n, p)).collect::<Result<Vec<_>>>()?;
    let ts = p.list_req("T")?;
    let dt = p.f64_or("dt", 1e-3)?;
    let s = p.f64_or("s", 0.5)?;
    let n = p.u64_or("n", 100_000)?;
    let seed = p.u64_or("seed", 42)?;
    let opts = mc_options(p)?;
    let spec = PathSpec::new(start_law(p)?, &ts, dt, s)?;
    let est = estimate_events(&spec, &events, n, seed, &opts)?;
    let mut rep =
        ExperimentReport::new("simulate", &["event", "T", "p_hat", "std_err", "n_accept", "n_total", "upper_bound"]);
    record_params(&mut rep, p);
    rep.param("seed", seed);
    rep.param("chunk", opts.chunk_size);
    for (name, row) in names.iter().zip(&est) {
        for (&t, e) in ts.iter().zip(row) {
            rep.push(vec![
                Cell::Text((*name).into()),
                Cell::Num(t),
                Cell::Num(e.p_hat),
                Cell::Num(e.std_err),
                Cell::Int(e.n_accept),
                Cell::Int(e.n_total),
                Cell::Num(e.upper_bound.unwrap_or(f64::NAN)),
            ]);
            if let Some(w) = &e.warning {
                rep.notes.push(format!("{name} T={t}: {w}"));
            }
        }
    }
    Ok(rep)
}

pub fn experiment(name: &str, p: &Params) -> Result<ExperimentReport> {
    let opts = mc_options(p)?;
    match name {
        "ratio-qsd" => {
            let d = RatioQsdConfig::default();
            exp_ratio_qsd(&RatioQsdConfig {
                ys: p.list_or("y", &d.ys)?,
                s: p.f64_or("s", d.s)?,
                ts: p.list_or("T", &d.ts)?,
                dt: p.f64_or("dt", d.dt)?,
                n: p.u64_or("n", d.n)?,
                seed: p.u64_or("seed", d.seed)?,
                tol: p.f64_or("tol", d.tol)?,
                stratified_check: p.bool_or("stratified", d.stratified_check)?,
                opts,
            })
        }
        "qsd-stationarity" => {
            let d = QsdStationarityConfig::default();
            exp_qsd_stationarity(&QsdStationarityConfig {
                ts: p.list_or("T", &d.ts)?,
                n_survivors: p.u64_or("n", d.n_survivors as u64)? as usize,
                dt: p.f64_or("dt", d.dt)?,
                seed: p.u64_or("seed", d.seed)?,
                alpha: p.f64_or("alpha", d.alpha)?,
                opts: McOptions { chunk_size: p.u64_or("chunk", d.opts.chunk_size as u64)? as usize, ..opts },
            })
        }
        "thm-main" => {
            let d = ThmMainConfig::default();
            exp_thm_main(&ThmMainConfig {
                y: p.f64_or("y", d.y)?,
                s: p.f64_or("s", d.s)?,
                t: p.f64_or("T", d.t)?,
                probes: p.list_or("probes", &d.probes)?,
                n_wanted: p.u64_or("n", d.n_wanted as u64)? as usize,
                dt: p.f64_or("dt", d.dt)?,
                seed: p.u64_or("seed", d.seed)?,
                max_paths: p.u64_or("max-paths", d.max_paths)?,
                fraction_ts: p.list_or("fraction-T", &d.fraction_ts)?,
                fraction_n: p.u64_or("fraction-n", d.fraction_n)?,
                alpha: p.f64_or("alpha", d.alpha)?,
                opts: McOptions { chunk_size: p.u64_or("chunk", d.opts.chunk_size as u64)? as usize, ..opts },
            })
        }
        "prop-asymp" => {
            let d = PropAsympConfig::default();
            exp_prop_asymp(&PropAsympConfig {
                y: p.f64_or("y", d.y)?,
                s: p.f64_or("s", d.s)?,
                ts: p.list_or("T", &d.ts)?,
                dt: p.f64_or("dt", d.dt)?,
                n: p.u64_or("n", d.n)?,
                seed: p.u64_or("seed", d.seed)?,
                s_compare: p.f64_or("s-compare", d.s_compare)?,
                opts,
            })
        }
        "cor-outside" => {
            let d = CorOutsideConfig::default();
            exp_cor_outside(&CorOutsideConfig {
                y: p.f64_or("y", d.y)?,
                s: p.f64_or("s", d.s)?,
                eps: p.list_or("eps", &d.eps)?,
                ts: p.list_or("T", &d.ts)?,
                dt: p.f64_or("dt", d.dt)?,
                n: p.u64_or("n", d.n)?,
                seed: p.u64_or("seed", d.seed)?,
                reference_y: p.f64_or("reference-y", d.reference_y)?,
                opts,
            })
        }
        other => Err(Error::config(format!("unknown experiment `{other}` (one of {})", NAMES.join(", ")))),
    }
}
