//! Brownian paths on a grid and the occupation time outside `(-1, 1)`.

use crate::error::{Error, Result};
use crate::special::erfcx;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// Bridge crossing probabilities below `e^{-40}` are treated as zero.
const LOG_P_MIN: f64 = -40.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PathGrid {
    pub y0: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub values: Vec<f64>,
}

impl PathGrid {
    pub fn new(dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::config(format!("dt = {dt} must be positive")));
        }
        if values.len() < 2 {
            return Err(Error::config("a path needs at least one step"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("path values must be finite"));
        }
        Ok(PathGrid { y0: values[0], dt, n_steps: values.len() - 1, values })
    }

    pub fn horizon(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    /// Value at the grid point nearest to `t`.
    pub fn at(&self, t: f64) -> f64 {
        let i = ((t / self.dt).round() as usize).min(self.n_steps);
        self.values[i]
    }
}

/// Number of steps of size `dt` making up `t`, which must be a multiple of `dt`.
pub fn steps_for(t: f64, dt: f64) -> Result<usize> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("T = {t} must be positive")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::config(format!("dt = {dt} must be positive")));
    }
    let n = (t / dt).round();
    if n < 1.0 || (n * dt - t).abs() > 1e-9 * t {
        return Err(Error::config(format!("T = {t} is not a multiple of dt = {dt}")));
    }
    Ok(n as usize)
}

/// Brownian path from `y0` with Gaussian increments of variance `dt`.
pub fn simulate_bm<R: Rng + ?Sized>(y0: f64, t: f64, dt: f64, rng: &mut R) -> Result<PathGrid> {
    if !y0.is_finite() {
        return Err(Error::domain("start must be finite"));
    }
    let n = steps_for(t, dt)?;
    let sq = dt.sqrt();
    let mut values = Vec::with_capacity(n + 1);
    let mut x = y0;
    values.push(x);
    for _ in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        x += sq * z;
        values.push(x);
    }
    PathGrid::new(dt, values)
}

/// Occupation estimator used inside a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccupationMode {
    /// Left-endpoint rule on the grid; exits seen only at grid points.
    Plain,
    /// Bridge detection of hidden crossings, `dt/2` per detected crossing or straddle.
    BridgeHalfStep,
    /// Bridge detection, with the conditional expected occupation of the bridge.
    BridgeExact,
}

impl std::str::FromStr for OccupationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(OccupationMode::Plain),
            "half-step" | "half_step" | "halfstep" => Ok(OccupationMode::BridgeHalfStep),
            "exact" | "bridge" => Ok(OccupationMode::BridgeExact),
            other => Err(Error::config(format!("unknown occupation mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationSample {
    pub gamma_t: f64,
    /// First time at ±1, `f64::INFINITY` if none up to the horizon.
    pub tau: f64,
    /// First time at 0, `f64::INFINITY` if none (or not tracked).
    pub tau0: f64,
    pub accepted: bool,
}

/// `E[time above b | bridge x → y over t hits b]` for `x, y < b`.
fn occ_given_hit(x: f64, y: f64, b: f64, t: f64) -> f64 {
    let w = (2.0 * b - x - y) / (2.0 * t).sqrt();
    0.5 * t * (1.0 - PI.sqrt() * w * erfcx(w))
}

/// `E[time above b]` for a bridge with `min(x,y) < b ≤ max(x,y)`.
fn occ_straddle(x: f64, y: f64, b: f64, t: f64) -> f64 {
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let d = (hi - lo) / (2.0 * t).sqrt();
    let e = erfcx(d);
    (2.0 * PI * t).sqrt() * (hi - b) * 0.5 * e + 0.5 * t * (1.0 - PI.sqrt() * d * e)
}

/// Unconditional `E[time above b]` for a bridge with `x, y < b`.
fn occ_below_level(x: f64, y: f64, b: f64, t: f64) -> f64 {
    let le = -2.0 * (b - x) * (b - y) / t;
    if le < LOG_P_MIN {
        0.0
    } else {
        le.exp() * occ_given_hit(x, y, b, t)
    }
}

fn log_cross(x: f64, y: f64, b: f64, t: f64) -> f64 {
    -2.0 * (b - x) * (b - y) / t
}

fn prob(le: f64) -> f64 {
    if le < LOG_P_MIN {
        0.0
    } else {
        le.exp()
    }
}

/// Running state of the occupation measurement along one path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    pub mode: OccupationMode,
    pub track_tau0: bool,
    pub time: f64,
    pub gamma: f64,
    pub tau: f64,
    pub tau0: f64,
}

impl Kernel {
    pub fn new(mode: OccupationMode, y0: f64) -> Self {
        let tau = if y0.abs() == 1.0 { 0.0 } else { f64::INFINITY };
        let tau0 = if y0 == 0.0 { 0.0 } else { f64::INFINITY };
        Kernel { mode, track_tau0: false, time: 0.0, gamma: 0.0, tau, tau0 }
    }

    fn hit(&mut self, at: f64) {
        if self.tau.is_infinite() {
            self.tau = at;
        }
    }

    fn cross_point(&self, x: f64, y: f64, b: f64, dt: f64) -> f64 {
        self.time + dt * ((b - x) / (y - x)).clamp(0.0, 1.0)
    }

    /// Advances over one step `x → y` of length `dt`.
    pub fn step<R: Rng + ?Sized>(&mut self, x: f64, y: f64, dt: f64, rng: &mut R) {
        match self.mode {
            OccupationMode::Plain => {
                if x.abs() >= 1.0 {
                    self.gamma += dt;
                }
                if y.abs() >= 1.0 {
                    self.hit(self.time + dt);
                }
            }
            OccupationMode::BridgeHalfStep | OccupationMode::BridgeExact => self.bridge_step(x, y, dt, rng),
        }
        if self.track_tau0 && self.tau0.is_infinite() {
            if x * y <= 0.0 && x != y {
                self.tau0 = self.cross_point(x, y, 0.0, dt);
            } else {
                let p = prob(-2.0 * x * y / dt);
                if p > 0.0 && rng.random::<f64>() < p {
                    self.tau0 = self.time + 0.5 * dt;
                }
            }
        }
        self.time += dt;
    }

    fn bridge_step<R: Rng + ?Sized>(&mut self, x: f64, y: f64, dt: f64, rng: &mut R) {
        let exact = self.mode == OccupationMode::BridgeExact;
        let out_x = x.abs() >= 1.0;
        let out_y = y.abs() >= 1.0;
        if !out_x && !out_y {
            // both crossing exponents are at most -2 d_x d_y/dt
            if 2.0 * (1.0 - x.abs()) * (1.0 - y.abs()) > -LOG_P_MIN * dt {
                return;
            }
            let pu = prob(log_cross(x, y, 1.0, dt));
            let pl = prob(log_cross(-x, -y, 1.0, dt));
            if pu + pl == 0.0 {
                return;
            }
            let u: f64 = rng.random();
            let level = if u < pu {
                1.0
            } else if u < pu + pl {
                -1.0
            } else {
                return;
            };
            self.hit(self.time + 0.5 * dt);
            self.gamma += if exact { occ_given_hit(level * x, level * y, 1.0, dt) } else { 0.5 * dt };
        } else if out_x && out_y && x * y > 0.0 {
            let b = x.signum();
            let le = log_cross(-b * x, -b * y, -1.0, dt);
            let p = prob(le);
            if p > 0.0 && rng.random::<f64>() < p {
                self.hit(self.time + 0.5 * dt);
                let inside = occ_given_hit(-b * x, -b * y, -1.0, dt);
                self.gamma += if exact { dt - inside } else { dt };
            } else {
                self.gamma += dt;
            }
        } else {
            // at least one boundary lies between the endpoints
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            let first = if x < y {
                if x < -1.0 {
                    -1.0
                } else {
                    1.0
                }
            } else if x > 1.0 {
                1.0
            } else {
                -1.0
            };
            self.hit(self.cross_point(x, y, first, dt));
            if exact {
                let mut g = 0.0;
                g += if hi >= 1.0 { occ_straddle(x, y, 1.0, dt) } else { occ_below_level(x, y, 1.0, dt) };
                g += if lo <= -1.0 { occ_straddle(-x, -y, 1.0, dt) } else { occ_below_level(-x, -y, 1.0, dt) };
                self.gamma += g.min(dt);
            } else {
                self.gamma += 0.5 * dt;
            }
        }
    }

    pub fn sample(&self) -> OccupationSample {
        OccupationSample { gamma_t: self.gamma, tau: self.tau, tau0: self.tau0, accepted: false }
    }
}

/// Occupation time outside `(-1, 1)` of a stored path.
pub fn occupation_outside<R: Rng + ?Sized>(path: &PathGrid, mode: OccupationMode, rng: &mut R) -> OccupationSample {
    let mut k = Kernel::new(mode, path.y0);
    k.track_tau0 = true;
    for w in path.values.windows(2) {
        k.step(w[0], w[1], path.dt, rng);
    }
    k.sample()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::rng::chunk_rng;

    #[test]
    fn increments_have_variance_dt() {
        let mut r = chunk_rng(1, 0);
        let p = simulate_bm(0.0, 1000.0, 1e-3, &mut r).unwrap();
        let inc: Vec<f64> = p.values.windows(2).map(|w| w[1] - w[0]).collect();
        let n = inc.len() as f64;
        let m = inc.iter().sum::<f64>() / n;
        let var = inc.iter().map(|d| (d - m) * (d - m)).sum::<f64>() / (n - 1.0);
        assert!((var / 1e-3 - 1.0).abs() < 0.01, "{}", var / 1e-3);
    }

    #[test]
    fn deterministic_paths() {
        let a = simulate_bm(0.3, 1.0, 0.01, &mut chunk_rng(5, 2)).unwrap();
        let b = simulate_bm(0.3, 1.0, 0.01, &mut chunk_rng(5, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values[0], 0.3);
        assert_eq!(a.n_steps, 100);
    }

    #[test]
    fn horizon_must_be_multiple_of_dt() {
        assert!(steps_for(1.0, 0.3).is_err());
        assert_eq!(steps_for(0.1, 1e-3).unwrap(), 100);
    }

    #[test]
    fn inside_path_has_no_occupation() {
        let vals: Vec<f64> = (0..=1000).map(|i| 0.4 * (i as f64 * 0.01).sin()).collect();
        let p = PathGrid::new(0.002, vals).unwrap();
        for mode in [OccupationMode::Plain, OccupationMode::BridgeHalfStep, OccupationMode::BridgeExact] {
            let s = occupation_outside(&p, mode, &mut chunk_rng(0, 0));
            assert_eq!(s.gamma_t, 0.0);
            assert!(s.tau.is_infinite());
        }
    }

    #[test]
    fn constant_outside_path() {
        let p = PathGrid::new(0.01, vec![1.5; 201]).unwrap();
        for mode in [OccupationMode::Plain, OccupationMode::BridgeHalfStep, OccupationMode::BridgeExact] {
            let s = occupation_outside(&p, mode, &mut chunk_rng(0, 0));
            assert!((s.gamma_t - 2.0).abs() < 1e-12, "{mode:?}: {}", s.gamma_t);
        }
    }

    #[test]
    fn bridge_formulas_are_continuous() {
        let t = 0.01;
        // touching from below: conditional and straddle forms agree
        let a = occ_given_hit(0.9, 1.0, 1.0, t);
        let b = occ_straddle(0.9, 1.0, 1.0, t);
        assert!((a - b).abs() < 1e-15);
        assert!((occ_given_hit(1.0, 1.0, 1.0, t) - 0.5 * t).abs() < 1e-15);
        // deep straddle: time above ≈ t (hi - b)/(hi - lo)
        let c = occ_straddle(-2.0, 4.0, 1.0, t);
        assert!((c - t * 0.5).abs() < 1e-3 * t);
    }

    #[test]
    fn straddle_expectation_matches_simulation() {
        // fine sub-grid bridge from 0.95 to 1.02 over t = 0.01
        let (x, y, t) = (0.95, 1.02, 0.01);
        let mut r = chunk_rng(11, 0);
        let m = 400;
        let h = t / m as f64;
        let n = 4000;
        let mut acc = 0.0;
        for _ in 0..n {
            let mut w = vec![0.0; m + 1];
            for i in 1..=m {
                let z: f64 = r.sample(StandardNormal);
                w[i] = w[i - 1] + h.sqrt() * z;
            }
            let wm = w[m];
            for i in 0..m {
                let s = (i as f64 + 0.5) / m as f64;
                let b = x + (y - x) * s + (w[i] + w[i + 1]) * 0.5 - s * wm;
                if b >= 1.0 {
                    acc += h;
                }
            }
        }
        let mc = acc / n as f64;
        let exact = occ_straddle(x, y, 1.0, t);
        assert!((mc - exact).abs() < 0.03 * exact, "{mc} vs {exact}");
    }
}
