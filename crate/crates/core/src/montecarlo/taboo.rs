//! Simulation of the taboo process `dY = -(π/2) tan(πY/2) dt + dW`.

use super::path::{steps_for, PathGrid};
use crate::analytic::{taboo_transition_quantile, SeriesTolerance};
use crate::error::{Error, Result};
use rand::distr::{Distribution, Open01};
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TabooMode {
    /// Euler–Maruyama with halving substeps near ±1.
    EulerMaruyama,
    /// Inverse-CDF draws from the transition kernel.
    Exact,
}

impl std::str::FromStr for TabooMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "em" | "euler" => Ok(TabooMode::EulerMaruyama),
            "exact" => Ok(TabooMode::Exact),
            other => Err(Error::config(format!("unknown taboo mode `{other}`"))),
        }
    }
}

/// Smallest substep, as a fraction of `dt`, before a proposal is simply redrawn.
const MIN_FRACTION: f64 = 1.0 / (1u64 << 40) as f64;

fn drift(y: f64) -> f64 {
    -FRAC_PI_2 * (FRAC_PI_2 * y).tan()
}

/// One EM step of length `dt`; near the boundary the step is split and
/// halved until proposals stay inside, and exiting proposals are discarded.
fn em_step<R: Rng + ?Sized>(mut x: f64, dt: f64, delta: f64, rng: &mut R) -> f64 {
    let mut remaining = dt;
    let mut h = if x.abs() > 1.0 - delta { 0.5 * dt } else { dt };
    while remaining > 0.0 {
        let hh = h.min(remaining);
        let z: f64 = rng.sample(StandardNormal);
        let prop = x + drift(x) * hh + hh.sqrt() * z;
        if prop.abs() < 1.0 {
            x = prop;
            remaining -= hh;
        } else if h > MIN_FRACTION * dt {
            h *= 0.5;
        }
    }
    x
}

pub fn simulate_taboo<R: Rng + ?Sized>(y0: f64, t: f64, dt: f64, mode: TabooMode, rng: &mut R) -> Result<PathGrid> {
    if !(y0.abs() < 1.0) {
        return Err(Error::domain(format!("taboo start {y0} must lie in (-1, 1)")));
    }
    let n = steps_for(t, dt)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(y0);
    let mut x = y0;
    match mode {
        TabooMode::EulerMaruyama => {
            let delta = 10.0 * dt.sqrt();
            if delta >= 0.5 {
                return Err(Error::config(format!("dt = {dt} too coarse: boundary layer 10√dt = {delta} ≥ 0.5")));
            }
            for _ in 0..n {
                x = em_step(x, dt, delta, rng);
                values.push(x);
            }
        }
        TabooMode::Exact => {
            let tol = SeriesTolerance::default();
            for _ in 0..n {
                let u: f64 = Open01.sample(rng);
                x = taboo_transition_quantile(x, u, dt, tol)?;
                values.push(x);
            }
        }
    }
    PathGrid::new(dt, values)
}
